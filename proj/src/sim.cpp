#include "roadfield/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "roadfield/errors.hpp"

namespace roadfield {

namespace {

double trapz_weight(long j, long n) { return (j == 0 || j == n - 1) ? 0.5 : 1.0; }

}  // namespace

double SimConfig::stability_dt() const {
    const double hx2 = hx() * hx();
    const double hy2 = hy() * hy();
    double nu_max = spec.nu.cont_max();
    if (spec.nu.has_atom()) nu_max += spec.nu.atom() / hy();
    const double road = hx2 / (2.0 * params.big_d);
    const double field = 1.0 / (2.0 * params.d * (1.0 / hx2 + 1.0 / hy2));
    const double reaction = 1.0 / (params.growth + nu_max);
    return 0.9 * std::min({road, field, reaction});
}

void SimConfig::validate() const {
    params.validate();
    spec.validate_masses(params);
    const ModelKind k = spec.kind();
    if (k != ModelKind::limit && k != ModelKind::full_nonlocal)
        throw validation_error("simulate: only the limit and full nonlocal models are integrated");
    if (nx < 8 || ny < 9) throw validation_error("simulate: grid too small");
    if (ny % 2 == 0) throw validation_error("simulate: ny must be odd so y = 0 is a node row");
    if (!(lx > 0.0) || !(ly > 0.0) || !(t_end > 0.0))
        throw validation_error("simulate: domain and horizon must be positive");
    if (ly <= spec.nu.support_radius() || ly <= spec.mu.support_radius())
        throw validation_error("simulate: ly must exceed the kernel support");
    if (dt > 0.0 && dt > stability_dt())
        throw validation_error("simulate: dt violates the explicit stability bound");
    if (init.u_amp < 0.0 || init.v_amp < 0.0)
        throw validation_error("simulate: initial data must be nonnegative");
}

StationaryState stationary_state(const Params& p, const ModelSpec& spec,
                                 const StationaryControl& g) {
    p.validate();
    spec.validate_masses(p);
    if (g.ny % 2 == 0 || g.ny < 9)
        throw validation_error("stationary_state: ny must be odd and >= 9");
    const long ny = g.ny;
    const long j0 = ny / 2;
    const double hy = 2.0 * g.ly / static_cast<double>(ny - 1);

    std::vector<double> y(static_cast<size_t>(ny));
    std::vector<double> nu_y(static_cast<size_t>(ny)), mu_y(static_cast<size_t>(ny));
    for (long j = 0; j < ny; ++j) {
        y[static_cast<size_t>(j)] = (static_cast<double>(j) - static_cast<double>(j0)) * hy;
        nu_y[static_cast<size_t>(j)] = spec.nu.cont(y[static_cast<size_t>(j)]);
        mu_y[static_cast<size_t>(j)] = spec.mu.cont(y[static_cast<size_t>(j)]);
    }

    double nu_max = spec.nu.cont_max() + spec.nu.atom() / hy;
    const double dt = 0.9 * std::min(hy * hy / (2.0 * p.d), 1.0 / (p.growth + nu_max));

    std::vector<double> v(static_cast<size_t>(ny), 0.5), vn(static_cast<size_t>(ny));
    double u = 0.5 * p.nu_bar / p.mu_bar;

    for (long step = 0; step < g.max_steps; ++step) {
        double exch = spec.nu.atom() * v[static_cast<size_t>(j0)];
        double integ = 0.0;
        for (long j = 0; j < ny; ++j)
            integ += trapz_weight(j, ny) * nu_y[static_cast<size_t>(j)] * v[static_cast<size_t>(j)];
        exch += integ * hy;
        const double un = u + dt * (-p.mu_bar * u + exch);

        double dv_max = 0.0;
        for (long j = 0; j < ny; ++j) {
            const double vm = (j > 0) ? v[static_cast<size_t>(j - 1)] : v[1];
            const double vp = (j < ny - 1) ? v[static_cast<size_t>(j + 1)] : v[static_cast<size_t>(ny - 2)];
            const double vj = v[static_cast<size_t>(j)];
            double rate = p.d * (vp - 2.0 * vj + vm) / (hy * hy) + p.growth * vj * (1.0 - vj) +
                          mu_y[static_cast<size_t>(j)] * u - nu_y[static_cast<size_t>(j)] * vj;
            if (j == j0)
                rate += (spec.mu.atom() * u - spec.nu.atom() * vj) / hy;
            vn[static_cast<size_t>(j)] = vj + dt * rate;
            dv_max = std::max(dv_max, std::abs(dt * rate));
        }
        const double du = std::abs(un - u);
        v.swap(vn);
        u = un;
        if (std::max(dv_max, du) < g.tol) {
            StationaryState st;
            st.ygrid = std::move(y);
            st.v = std::move(v);
            st.u = u;
            return st;
        }
    }
    throw solver_error("stationary_state: no convergence within the step budget");
}

SimResult simulate(const SimConfig& cfg) {
    cfg.validate();
    const Params& p = cfg.params;
    const bool limit = cfg.spec.kind() == ModelKind::limit;
    const long nx = cfg.nx, ny = cfg.ny;
    const long j0 = ny / 2;
    const double hx = cfg.hx(), hy = cfg.hy();
    const double dt = cfg.dt > 0.0 ? cfg.dt : cfg.stability_dt();
    const long steps = static_cast<long>(std::ceil(cfg.t_end / dt));

    SimResult res;
    res.dt_used = dt;
    res.steps = steps;

    StationaryControl sg;
    sg.ly = cfg.ly;
    sg.ny = ny;
    res.stationary = stationary_state(p, cfg.spec, sg);
    const double threshold = cfg.theta * res.stationary.u;

    std::vector<double> xg(static_cast<size_t>(nx)), yg(static_cast<size_t>(ny));
    for (long i = 0; i < nx; ++i)
        xg[static_cast<size_t>(i)] = -cfg.lx + hx * static_cast<double>(i);
    for (long j = 0; j < ny; ++j)
        yg[static_cast<size_t>(j)] = (static_cast<double>(j) - static_cast<double>(j0)) * hy;

    std::vector<double> nu_y(static_cast<size_t>(ny)), mu_y(static_cast<size_t>(ny));
    for (long j = 0; j < ny; ++j) {
        nu_y[static_cast<size_t>(j)] = cfg.spec.nu.cont(yg[static_cast<size_t>(j)]);
        mu_y[static_cast<size_t>(j)] = cfg.spec.mu.cont(yg[static_cast<size_t>(j)]);
    }

    std::vector<double> u(static_cast<size_t>(nx), 0.0), un(static_cast<size_t>(nx));
    std::vector<double> v(static_cast<size_t>(nx * ny), 0.0), vn(static_cast<size_t>(nx * ny));
    for (long i = 0; i < nx; ++i) {
        if (std::abs(xg[static_cast<size_t>(i)]) <= cfg.init.u_halfwidth)
            u[static_cast<size_t>(i)] = cfg.init.u_amp;
        for (long j = 0; j < ny; ++j)
            if (std::abs(xg[static_cast<size_t>(i)]) <= cfg.init.v_halfwidth_x &&
                std::abs(yg[static_cast<size_t>(j)]) <= cfg.init.v_halfwidth_y)
                v[static_cast<size_t>(i * ny + j)] = cfg.init.v_amp;
    }

    const long trace_stride = std::max<long>(1, steps / std::max<long>(1, cfg.trace_points));
    const double x_guard = cfg.lx - 10.0 * hx;

    auto record_front = [&](double t) {
        if (res.boundary_warning) return;
        double xf = std::numeric_limits<double>::quiet_NaN();
        for (long i = nx - 1; i >= 0; --i) {
            if (u[static_cast<size_t>(i)] >= threshold) {
                xf = xg[static_cast<size_t>(i)];
                break;
            }
        }
        if (std::isnan(xf)) return;
        if (xf > x_guard) {
            res.boundary_warning = true;  // truncate the trace here
            return;
        }
        res.trace.times.push_back(t);
        res.trace.positions.push_back(xf);
    };

    auto snapshot = [&](double t) {
        Snapshot s;
        s.t = t;
        s.u = u;
        s.v = v;
        res.snapshots.push_back(std::move(s));
    };

    res.trace.theta = cfg.theta;
    res.trace.u_s_reference = res.stationary.u;
    record_front(0.0);
    if (cfg.snapshot_stride > 0) snapshot(0.0);

    for (long step = 1; step <= steps; ++step) {
        // road update
        for (long i = 0; i < nx; ++i) {
            const double um = (i > 0) ? u[static_cast<size_t>(i - 1)] : u[1];
            const double up = (i < nx - 1) ? u[static_cast<size_t>(i + 1)] : u[static_cast<size_t>(nx - 2)];
            const double ui = u[static_cast<size_t>(i)];
            double gain;
            if (limit) {
                gain = p.nu_bar * v[static_cast<size_t>(i * ny + j0)];
            } else {
                double integ = 0.0;
                for (long j = 0; j < ny; ++j)
                    integ += trapz_weight(j, ny) * nu_y[static_cast<size_t>(j)] *
                             v[static_cast<size_t>(i * ny + j)];
                gain = integ * hy;
            }
            un[static_cast<size_t>(i)] =
                ui + dt * (p.big_d * (up - 2.0 * ui + um) / (hx * hx) - p.mu_bar * ui + gain);
        }
        // field update
        for (long i = 0; i < nx; ++i) {
            const long im = (i > 0) ? i - 1 : 1;
            const long ip = (i < nx - 1) ? i + 1 : nx - 2;
            const double ui = u[static_cast<size_t>(i)];
            for (long j = 0; j < ny; ++j) {
                const long jm = (j > 0) ? j - 1 : 1;
                const long jp = (j < ny - 1) ? j + 1 : ny - 2;
                const double vij = v[static_cast<size_t>(i * ny + j)];
                double lap = (v[static_cast<size_t>(im * ny + j)] - 2.0 * vij +
                              v[static_cast<size_t>(ip * ny + j)]) /
                                 (hx * hx) +
                             (v[static_cast<size_t>(i * ny + jm)] - 2.0 * vij +
                              v[static_cast<size_t>(i * ny + jp)]) /
                                 (hy * hy);
                double rate = p.d * lap + p.growth * vij * (1.0 - vij);
                if (limit) {
                    if (j == j0) rate += (p.mu_bar * ui - p.nu_bar * vij) / hy;
                } else {
                    rate += mu_y[static_cast<size_t>(j)] * ui - nu_y[static_cast<size_t>(j)] * vij;
                }
                vn[static_cast<size_t>(i * ny + j)] = vij + dt * rate;
            }
        }
        u.swap(un);
        v.swap(vn);

        const double t = dt * static_cast<double>(step);
        if (step % trace_stride == 0 || step == steps) record_front(t);
        if (cfg.snapshot_stride > 0 && (step % cfg.snapshot_stride == 0)) snapshot(t);
    }
    if (cfg.snapshot_stride == 0 || steps % std::max<long>(1, cfg.snapshot_stride) != 0)
        snapshot(dt * static_cast<double>(steps));
    return res;
}

SpeedFit estimate_speed(const FrontTrace& trace, double window_fraction) {
    if (!(window_fraction > 0.0 && window_fraction <= 1.0))
        throw validation_error("estimate_speed: window fraction must lie in (0, 1]");
    const size_t n = trace.times.size();
    if (n == 0) throw validation_error("estimate_speed: empty trace");
    const double t_last = trace.times.back();
    const double t_first = trace.times.front();
    const double t_cut = t_last - window_fraction * (t_last - t_first);

    std::vector<double> ts, xs;
    for (size_t i = 0; i < n; ++i) {
        if (trace.times[i] >= t_cut) {
            ts.push_back(trace.times[i]);
            xs.push_back(trace.positions[i]);
        }
    }
    if (ts.size() < 10)
        throw validation_error("estimate_speed: fewer than 10 samples in the fit window");

    const auto m = static_cast<double>(ts.size());
    double st = 0, sx = 0, stt = 0, stx = 0;
    for (size_t i = 0; i < ts.size(); ++i) {
        st += ts[i];
        sx += xs[i];
        stt += ts[i] * ts[i];
        stx += ts[i] * xs[i];
    }
    const double denom = m * stt - st * st;
    if (denom == 0.0) throw solver_error("estimate_speed: degenerate time column");
    const double slope = (m * stx - st * sx) / denom;
    const double intercept = (sx - slope * st) / m;

    double ss_res = 0.0, ss_tot = 0.0;
    const double mean_x = sx / m;
    for (size_t i = 0; i < ts.size(); ++i) {
        const double fit = intercept + slope * ts[i];
        ss_res += (xs[i] - fit) * (xs[i] - fit);
        ss_tot += (xs[i] - mean_x) * (xs[i] - mean_x);
    }
    SpeedFit out;
    out.speed = slope;
    out.r2 = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot : 1.0;
    out.ballistic = out.r2 >= 0.99;
    out.n_used = static_cast<long>(ts.size());
    return out;
}

}  // namespace roadfield
