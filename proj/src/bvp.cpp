#include "roadfield/bvp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "roadfield/errors.hpp"

namespace roadfield {

namespace {

/// Thomas recurrence for a tridiagonal system. Rows are strictly
/// diagonally dominant here (diag >= 2d/h^2 + P > |offdiag sum|), so no
/// pivoting is needed and the elimination cannot break down.
void solve_tridiagonal(const std::vector<double>& sub, const std::vector<double>& diag,
                       const std::vector<double>& sup, const std::vector<double>& rhs,
                       std::vector<double>& x) {
    const size_t n = diag.size();
    std::vector<double> cp(n), dp(n);
    double beta = diag[0];
    if (beta == 0.0) throw solver_error("tridiagonal solve: zero pivot (internal)");
    cp[0] = sup[0] / beta;
    dp[0] = rhs[0] / beta;
    for (size_t i = 1; i < n; ++i) {
        beta = diag[i] - sub[i - 1] * cp[i - 1];
        if (beta == 0.0) throw solver_error("tridiagonal solve: zero pivot (internal)");
        cp[i] = (i + 1 < n) ? sup[i] / beta : 0.0;
        dp[i] = (rhs[i] - sub[i - 1] * dp[i - 1]) / beta;
    }
    x.resize(n);
    x[n - 1] = dp[n - 1];
    for (size_t i = n - 1; i-- > 0;) x[i] = dp[i] - cp[i] * x[i + 1];
}

struct GridPlan {
    double half_len;
    double h;
    long intervals;
};

/// Pick [-L, L] and the interval count. The Robin closure is exact for any
/// truncation beyond the kernel support, so when the resolution demand
/// collides with max_nodes the tail is shortened, never the kernel zone.
GridPlan plan_grid(double d, double p, double support, const GridControl& g) {
    double decay = std::sqrt(d / p);
    double L = support + g.tail_efolds * decay;
    long n = std::max<long>(g.intervals, 16);
    if (n % 2 != 0) ++n;
    if (support > 0.0) {
        double hmax = support / g.points_per_halfwidth;
        if (2.0 * L / static_cast<double>(n) > hmax) {
            long need = static_cast<long>(std::ceil(2.0 * L / hmax));
            if (need % 2 != 0) ++need;
            if (need <= g.max_nodes) {
                n = need;
            } else {
                n = g.max_nodes - (g.max_nodes % 2);
                L = 0.5 * hmax * static_cast<double>(n);
                if (L < 2.0 * support)
                    throw solver_error("profile grid: max_nodes too small for the kernel support");
            }
        }
    }
    return {L, 2.0 * L / static_cast<double>(n), n};
}

}  // namespace

LambdaWindow lambda_window(const Params& p, double c) {
    const double ck = p.c_kpp();
    if (!(c > ck))
        throw domain_error("lambda_window: no exponential profile exists for c <= c_KPP");
    const double s = std::sqrt(c * c - ck * ck);
    return {(c - s) / (2.0 * p.d), (c + s) / (2.0 * p.d)};
}

double clamp_lambda(const LambdaWindow& w, double lambda, double margin) {
    if (!(lambda > w.lo) || !(lambda < w.hi))
        throw domain_error("lambda query outside the open decay-exponent window");
    const double m = margin * w.width();
    return std::clamp(lambda, w.lo + m, w.hi - m);
}

double psi2_at_p(double d, double p, const Kernel& nu, const Kernel& mu,
                 const GridControl& g, ProfileSolution* out) {
    if (!(p > 0.0))
        throw domain_error("profile solve: coercivity value P(lambda) must be positive");
    const double support = std::max(nu.support_radius(), mu.support_radius());
    const GridPlan plan = plan_grid(d, p, support, g);
    const double h = plan.h;
    const double L = plan.half_len;
    const long n = plan.intervals;
    const long nn = n + 1;
    const long mid = n / 2;

    const double off = -d / (h * h);
    const double alpha = std::sqrt(p / d);

    std::vector<double> sub(static_cast<size_t>(nn - 1), off);
    std::vector<double> sup(static_cast<size_t>(nn - 1), off);
    std::vector<double> diag(static_cast<size_t>(nn));
    std::vector<double> rhs(static_cast<size_t>(nn));

    auto ycoord = [&](long i) { return (static_cast<double>(i) - static_cast<double>(mid)) * h; };

    for (long i = 0; i <= n; ++i) {
        const double y = ycoord(i);
        diag[static_cast<size_t>(i)] = 2.0 * d / (h * h) + p + nu.cont(y);
        rhs[static_cast<size_t>(i)] = mu.cont(y);
    }
    // ghost-point elimination of the decay condition phi' = -+ alpha phi
    diag[0] += 2.0 * d * alpha / h;
    sup[0] = 2.0 * off;
    diag[static_cast<size_t>(n)] += 2.0 * d * alpha / h;
    sub[static_cast<size_t>(n - 1)] = 2.0 * off;
    // Dirac atoms lumped onto the y = 0 row
    diag[static_cast<size_t>(mid)] += nu.atom() / h;
    rhs[static_cast<size_t>(mid)] += mu.atom() / h;

    std::vector<double> phi;
    solve_tridiagonal(sub, diag, sup, rhs, phi);

    // Psi2 = nu_atom phi(0) + trapezoid(nu_cont phi); the integrand vanishes
    // outside the kernel support, so only that band is visited.
    double psi = nu.atom() * phi[static_cast<size_t>(mid)];
    if (nu.has_cont()) {
        const long reach = std::min<long>(mid, static_cast<long>(std::ceil(nu.support_radius() / h)) + 1);
        double acc = 0.0;
        for (long i = mid - reach; i <= mid + reach; ++i) {
            const double w = (i == mid - reach || i == mid + reach) ? 0.5 : 1.0;
            acc += w * nu.cont(ycoord(i)) * phi[static_cast<size_t>(i)];
        }
        psi += acc * h;
    }

    if (out != nullptr) {
        out->phi = phi;
        out->ygrid.resize(static_cast<size_t>(nn));
        for (long i = 0; i <= n; ++i) out->ygrid[static_cast<size_t>(i)] = ycoord(i);
        out->p_value = p;
        out->trunc_len = L;
        // residual of the solved rows, relative to the forcing scale
        double scale = std::max(1.0, *std::max_element(rhs.begin(), rhs.end()));
        double rmax = 0.0;
        for (long i = 0; i <= n; ++i) {
            double r = diag[static_cast<size_t>(i)] * phi[static_cast<size_t>(i)] - rhs[static_cast<size_t>(i)];
            if (i > 0) r += sub[static_cast<size_t>(i - 1)] * phi[static_cast<size_t>(i - 1)];
            if (i < n) r += sup[static_cast<size_t>(i)] * phi[static_cast<size_t>(i + 1)];
            rmax = std::max(rmax, std::abs(r));
        }
        out->residual = rmax / scale;
        if (out->residual > g.residual_tol)
            throw solver_error("profile solve: residual above tolerance (internal)");
    }
    return psi;
}

ProfileSolution solve_profile(const Params& p, double c, double lambda,
                              const ModelSpec& spec, const GridControl& g) {
    p.validate();
    spec.validate_masses(p);
    const LambdaWindow w = lambda_window(p, c);
    const double lam = clamp_lambda(w, lambda, g.window_margin);
    ProfileSolution sol;
    sol.lambda = lam;
    sol.c = c;
    psi2_at_p(p.d, p_value(p, c, lam), spec.nu, spec.mu, g, &sol);
    return sol;
}

double psi2(const Params& p, double c, double lambda, const ModelSpec& spec,
            const GridControl& g) {
    p.validate();
    spec.validate_masses(p);
    const LambdaWindow w = lambda_window(p, c);
    const double lam = clamp_lambda(w, lambda, g.window_margin);
    return psi2_at_p(p.d, p_value(p, c, lam), spec.nu, spec.mu, g);
}

double psi2_closed_limit_at_p(double d, double p, double nu_bar, double mu_bar) {
    if (!(p > 0.0)) throw domain_error("psi2_closed_limit: P(lambda) must be positive");
    return nu_bar * mu_bar / (nu_bar + 2.0 * std::sqrt(d * p));
}

double psi2_closed_limit(const Params& p, double c, double lambda) {
    const double pv = p_value(p, c, lambda);
    return psi2_closed_limit_at_p(p.d, pv, p.nu_bar, p.mu_bar);
}

double damped_halfline_integral(const Kernel& k, double alpha) {
    if (!(alpha > 0.0)) throw domain_error("damped_halfline_integral: alpha must be positive");
    const auto& v = k.half_samples();
    if (v.empty()) return 0.0;
    const double dz = k.spacing();
    const double x = alpha * dz;
    // weights of A and B in int_0^dz e^{-alpha t}(A + B t/dz) dt
    double w0, w1;
    if (x > 1e-4) {
        w0 = -std::expm1(-x) / alpha;
        w1 = (1.0 - std::exp(-x) * (1.0 + x)) / (alpha * alpha * dz);
    } else {
        w0 = dz * (1.0 - x / 2.0 + x * x / 6.0 - x * x * x / 24.0);
        w1 = dz * (0.5 - x / 3.0 + x * x / 8.0);
    }
    double acc = 0.0;
    double damp = 1.0;
    const double step = std::exp(-x);
    for (size_t i = 0; i + 1 < v.size(); ++i) {
        const double a = v[i];
        const double b = v[i + 1] - v[i];
        acc += damp * (a * w0 + b * w1);
        damp *= step;
    }
    return acc;
}

double psi2_closed_rpsl2_at_p(double d, double p, double nu_bar, const Kernel& mu_kernel) {
    if (!(p > 0.0)) throw domain_error("psi2_closed_rpsl2: P(lambda) must be positive");
    if (mu_kernel.has_atom())
        throw validation_error("psi2_closed_rpsl2: mu must be purely continuous");
    const double alpha = std::sqrt(p / d);
    const double integral = damped_halfline_integral(mu_kernel, alpha);
    return 2.0 * nu_bar / (nu_bar + 2.0 * std::sqrt(d * p)) * integral;
}

double psi2_closed_rpsl2(const Params& p, double c, double lambda, const Kernel& mu_kernel) {
    const double pv = p_value(p, c, lambda);
    return psi2_closed_rpsl2_at_p(p.d, pv, p.nu_bar, mu_kernel);
}

}  // namespace roadfield
