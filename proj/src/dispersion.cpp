#include "roadfield/dispersion.hpp"

#include <cmath>
#include <limits>

#include "roadfield/errors.hpp"

namespace roadfield {

double psi2_dispatch(const Params& p, double c, double lambda, const ModelSpec& spec,
                     const SearchControl& s) {
    const ModelKind kind = spec.kind();
    Psi2Pipeline pipe = s.pipeline;
    if (pipe == Psi2Pipeline::automatic)
        pipe = (kind == ModelKind::limit) ? Psi2Pipeline::closed_form : Psi2Pipeline::numeric;
    if (pipe == Psi2Pipeline::closed_form) {
        const LambdaWindow w = lambda_window(p, c);
        const double lam = clamp_lambda(w, lambda, s.grid.window_margin);
        switch (kind) {
            case ModelKind::limit:
                return psi2_closed_limit(p, c, lam);
            case ModelKind::semi_limit_mu_nonlocal:
                return psi2_closed_rpsl2(p, c, lam, spec.mu);
            default:
                throw validation_error("closed-form pipeline requires a pure-atom nu kernel");
        }
    }
    return psi2(p, c, lambda, spec, s.grid);
}

GapReport gap(const Params& p, const ModelSpec& spec, double c, const SearchControl& s) {
    p.validate();
    spec.validate_masses(p);
    const LambdaWindow w = lambda_window(p, c);  // throws for c <= c_KPP
    const double m = s.grid.window_margin * w.width();
    const double a = w.lo + m;
    const double b = w.hi - m;

    GapReport rep;
    rep.c = c;
    // Psi2 -> mu_bar at the window edges, so the parabola reaching mu_bar
    // there guarantees an intersection without resolving the boundary layer.
    rep.endpoint_cross = psi1(p, c, a) >= p.mu_bar || psi1(p, c, b) >= p.mu_bar;

    auto objective = [&](double lam) { return psi2_dispatch(p, c, lam, spec, s) - psi1(p, c, lam); };
    auto [argmin, fmin] = golden_minimize(objective, a, b, s.golden_rel_tol, s.golden_max_iter);
    rep.lambda_argmin = argmin;
    rep.gap = fmin;
    if (rep.endpoint_cross)
        rep.gap = std::min(rep.gap, -std::numeric_limits<double>::epsilon());
    return rep;
}

SpeedResult spreading_speed(const Params& p, const ModelSpec& spec, const SearchControl& s) {
    p.validate();
    spec.validate_masses(p);
    SpeedResult r;
    r.kind = spec.kind();
    r.grid_intervals = s.grid.intervals;
    r.c_rel_tol = s.c_rel_tol;
    const double ck = p.c_kpp();

    if (p.big_d <= 2.0 * p.d) {
        r.c_star = ck;
        r.analytic_branch = true;
        r.bracket_lo = r.bracket_hi = ck;
        return r;
    }

    double off = s.bracket_start_offset;
    double c_lo = ck * (1.0 + off);
    GapReport g0 = gap(p, spec, c_lo, s);
    if (g0.gap <= 0.0) {
        // D barely above 2d: c* - c_KPP is below the probe offset
        r.c_star = ck;
        r.threshold_degenerate = true;
        r.bracket_lo = ck;
        r.bracket_hi = c_lo;
        r.lambda_star = g0.lambda_argmin;
        return r;
    }
    double c_hi = 0.0;
    while (true) {
        off *= 2.0;
        if (off > s.bracket_max_offset)
            throw solver_error("spreading_speed: bracket expansion exceeded its bound");
        const double c_try = ck * (1.0 + off);
        const GapReport gi = gap(p, spec, c_try, s);
        if (gi.gap <= 0.0) {
            c_hi = c_try;
            break;
        }
        c_lo = c_try;
    }
    while (c_hi - c_lo > s.c_rel_tol * c_hi) {
        const double mid = 0.5 * (c_lo + c_hi);
        if (gap(p, spec, mid, s).gap > 0.0)
            c_lo = mid;
        else
            c_hi = mid;
    }
    r.c_star = 0.5 * (c_lo + c_hi);
    r.bracket_lo = c_lo;
    r.bracket_hi = c_hi;
    const GapReport gf = gap(p, spec, r.c_star, s);
    r.lambda_star = gf.lambda_argmin;
    r.psi_star = psi1(p, r.c_star, gf.lambda_argmin);
    return r;
}

std::vector<CurvePoint> curve_sample(const Params& p, const ModelSpec& spec, double c,
                                     int n, const SearchControl& s) {
    if (n < 2) throw validation_error("curve_sample: need at least two points");
    p.validate();
    spec.validate_masses(p);
    const LambdaWindow w = lambda_window(p, c);
    const double m = s.grid.window_margin * w.width();
    const double a = w.lo + m;
    const double b = w.hi - m;
    std::vector<CurvePoint> rows;
    rows.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double lam = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
        rows.push_back({lam, psi1(p, c, lam), psi2_dispatch(p, c, lam, spec, s)});
    }
    return rows;
}

ChainReport check_inequality_chain(const SpeedResult& r, const Params& p, double tol) {
    if (r.analytic_branch)
        throw validation_error("check_inequality_chain: needs a D > 2d result");
    const double c = r.c_star;
    const double ck = p.c_kpp();
    const double disc = std::max(0.0, c * c - ck * ck);
    const double left = c / p.big_d;
    const double middle = (c - std::sqrt(disc)) / (2.0 * p.d);
    const double right = (c + std::sqrt(c * c + 4.0 * p.big_d * p.mu_bar)) / (2.0 * p.big_d);
    ChainReport rep;
    rep.slack_lower = middle - left;
    rep.slack_upper = right - middle;
    rep.ok = rep.slack_lower >= -tol && rep.slack_upper >= -tol;
    return rep;
}

}  // namespace roadfield
