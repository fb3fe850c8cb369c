#include "roadfield/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "roadfield/errors.hpp"

namespace roadfield {

namespace {

void require_unit_normalisation(const Params& p) {
    if (p.d != 1.0 || p.nu_bar != 1.0)
        throw validation_error(
            "this operation is derived under d = nu_bar = 1; rescale y by sqrt(d) and "
            "time by 1/nu_bar before calling");
}

/// Run fn(i) for i in [0, n) across the requested number of threads.
template <typename Fn>
void parallel_for(long n, int threads, Fn&& fn) {
    threads = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    if (threads == 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<long> next{0};
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (long i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace

double c_infinity(double d, double growth, double mu_bar, const Kernel& nu,
                  const Kernel& mu, const SearchControl& s) {
    if (!(growth > 0.0)) throw validation_error("c_infinity: growth must be positive");
    const bool closed = !nu.has_cont() && !mu.has_cont();
    const double nu_bar = nu.mass();
    const double mu_mass = mu.mass();

    auto gap_at = [&](double c) {
        const double lam_lo = growth / c;
        const double lam_hi = 0.5 * (c + std::sqrt(c * c + 4.0 * mu_bar));
        if (lam_hi <= lam_lo * (1.0 + 1e-12)) return 1.0;  // empty window: no intersection
        const double m = s.grid.window_margin * (lam_hi - lam_lo);
        const double a = lam_lo + m;
        const double b = lam_hi - m;
        auto parabola = [&](double lam) { return lam * c - lam * lam + mu_bar; };
        const bool cross = parabola(a) >= mu_bar || parabola(b) >= mu_bar;
        auto objective = [&](double lam) {
            const double pt = lam * c - growth;
            const double v = closed ? psi2_closed_limit_at_p(d, pt, nu_bar, mu_mass)
                                    : psi2_at_p(d, pt, nu, mu, s.grid);
            return v - parabola(lam);
        };
        auto [argmin, fmin] = golden_minimize(objective, a, b, s.golden_rel_tol, s.golden_max_iter);
        (void)argmin;
        if (cross) fmin = std::min(fmin, -std::numeric_limits<double>::epsilon());
        return fmin;
    };

    // c_inf <= sqrt(f'(0)) by the window geometry, so expand around it.
    double hi = std::sqrt(growth) * (1.0 + 1e-6);
    int guard = 0;
    while (gap_at(hi) > 0.0) {
        hi *= 2.0;
        if (++guard > 60) throw solver_error("c_infinity: no upper bracket found");
    }
    double lo = 0.5 * hi;
    guard = 0;
    while (gap_at(lo) <= 0.0) {
        lo *= 0.5;
        if (++guard > 60) throw solver_error("c_infinity: no lower bracket found");
    }
    while (hi - lo > s.c_rel_tol * hi) {
        const double mid = 0.5 * (lo + hi);
        (gap_at(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

AsymptoticReport sweep_big_d(const Params& base, const std::vector<double>& d_ladder,
                             const ModelSpec& spec, const SearchControl& s, int threads) {
    base.validate();
    if (d_ladder.empty()) throw validation_error("sweep_big_d: empty ladder");
    if (!std::is_sorted(d_ladder.begin(), d_ladder.end()))
        throw validation_error("sweep_big_d: ladder must be sorted ascending");
    for (double D : d_ladder)
        if (!(D > 2.0 * base.d))
            throw validation_error("sweep_big_d: every D must exceed 2d");

    AsymptoticReport rep;
    rep.big_d_values = d_ladder;
    rep.growth = base.growth;
    rep.c_star.resize(d_ladder.size());
    rep.ratio.resize(d_ladder.size());
    parallel_for(static_cast<long>(d_ladder.size()), threads, [&](long i) {
        Params p = base;
        p.big_d = d_ladder[static_cast<size_t>(i)];
        const SpeedResult r = spreading_speed(p, spec, s);
        rep.c_star[static_cast<size_t>(i)] = r.c_star;
        rep.ratio[static_cast<size_t>(i)] = r.c_star / std::sqrt(p.big_d);
    });
    rep.c_inf = c_infinity(base.d, base.growth, base.mu_bar, spec.nu, spec.mu, s);
    rep.chain_slack_lower = base.growth / rep.c_inf - rep.c_inf;
    rep.chain_slack_upper =
        0.5 * (rep.c_inf + std::sqrt(rep.c_inf * rep.c_inf + 4.0 * base.mu_bar)) -
        base.growth / rep.c_inf;
    return rep;
}

CompareReport rpsl2_compare(const Params& p, const std::vector<Kernel>& mu_list,
                            const std::vector<std::string>& labels,
                            const SearchControl& s, int threads) {
    p.validate();
    if (mu_list.empty()) throw validation_error("rpsl2_compare: empty kernel list");
    if (!labels.empty() && labels.size() != mu_list.size())
        throw validation_error("rpsl2_compare: label/kernel count mismatch");
    for (const Kernel& mu : mu_list) {
        if (mu.has_atom() || !mu.has_cont())
            throw validation_error("rpsl2_compare: mu kernels must be purely continuous");
        if (std::abs(mu.mass() - p.mu_bar) > 1e-8 * std::max(1.0, p.mu_bar))
            throw validation_error("rpsl2_compare: mu kernel mass does not match mu_bar");
    }
    CompareReport rep;
    rep.rows.resize(mu_list.size());
    parallel_for(static_cast<long>(mu_list.size()), threads, [&](long i) {
        const auto idx = static_cast<size_t>(i);
        ModelSpec spec{Kernel::pure_atom(p.nu_bar), mu_list[idx]};
        rep.rows[idx].label = labels.empty() ? "mu_" + std::to_string(i) : labels[idx];
        rep.rows[idx].c_star = spreading_speed(p, spec, s).c_star;
    });
    SearchControl closed = s;
    closed.pipeline = Psi2Pipeline::closed_form;
    ModelSpec limit_spec{Kernel::pure_atom(p.nu_bar), Kernel::pure_atom(p.mu_bar)};
    rep.c_star_limit = spreading_speed(p, limit_spec, closed).c_star;
    return rep;
}

double g_indicator(double alpha, double y) {
    if (!(alpha > 0.0)) throw validation_error("g_indicator: alpha must be positive");
    const double a = std::abs(y);
    return -std::expm1(-alpha * a) + std::expm1(-2.0 * alpha * a) / (1.0 + 2.0 * alpha);
}

double y_threshold(double alpha) {
    if (!(alpha > 0.0) || !(alpha < 0.5))
        throw domain_error("y_threshold: g has no positive root; g >= 0 for alpha >= 1/2");
    double lo = 1e-12;
    if (!(g_indicator(alpha, lo) < 0.0))
        throw solver_error("y_threshold: g not negative near 0 (internal)");
    double hi = 1.0;
    int guard = 0;
    while (g_indicator(alpha, hi) < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 200) throw solver_error("y_threshold: no sign change found");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (g_indicator(alpha, mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double m1_threshold(double growth) {
    if (!(growth > 0.0)) throw validation_error("m1_threshold: growth must be positive");
    const double inv = 1.0 / growth;
    return 2.0 + 0.5 * inv + 0.5 * std::sqrt(12.0 + inv * inv + 7.0 * inv);
}

double i0_integral(double mu_bar, double nu_bar, double p_value, const Kernel& nu_kernel) {
    if (!(p_value > 0.0)) throw validation_error("i0_integral: P must be positive");
    if (nu_kernel.has_atom())
        throw validation_error("i0_integral: nu must be purely continuous");
    if (nu_kernel.is_zero()) return 0.0;
    if (nu_kernel.support_radius() > 1.0 + 1e-12)
        throw validation_error("i0_integral: nu support must lie in [-1, 1]; rescale first");
    if (std::abs(nu_kernel.mass() - nu_bar) > 1e-8 * std::max(1.0, nu_bar))
        throw validation_error("i0_integral: nu kernel mass does not match nu_bar");

    const auto& v = nu_kernel.half_samples();
    const double dz = nu_kernel.spacing();
    const double denom = nu_bar + 2.0 * std::sqrt(p_value);
    // running trapezoid prefix of int_{-z}^{z} nu = 2 int_0^z nu
    double prefix = 0.0;
    double acc = 0.0;
    double prev_f = 0.0;  // the z = 0 term vanishes
    for (size_t i = 1; i < v.size(); ++i) {
        prefix += 0.5 * dz * (v[i - 1] + v[i]);
        const double z = dz * static_cast<double>(i);
        const double f = (2.0 * prefix / denom - 1.0) * z * v[i];
        acc += 0.5 * dz * (prev_f + f);
        prev_f = f;
    }
    return mu_bar * acc;
}

SelfSimilarReport dpsi2_deps_selfsimilar(const Params& p, double c, double lambda,
                                         const Kernel& base_nu,
                                         std::vector<double> eps_ladder,
                                         const SearchControl& s) {
    p.validate();
    require_unit_normalisation(p);
    if (base_nu.has_atom() || !base_nu.has_cont())
        throw validation_error("dpsi2_deps_selfsimilar: base nu must be purely continuous");
    if (eps_ladder.empty())
        throw validation_error("dpsi2_deps_selfsimilar: empty eps ladder");
    for (double e : eps_ladder)
        if (!(e > 0.0 && e <= 0.5))
            throw validation_error("dpsi2_deps_selfsimilar: eps values must lie in (0, 0.5]");
    if (!std::is_sorted(eps_ladder.rbegin(), eps_ladder.rend()))
        throw validation_error("dpsi2_deps_selfsimilar: ladder must be sorted descending");

    const LambdaWindow w = lambda_window(p, c);
    const double lam = clamp_lambda(w, lambda, s.grid.window_margin);
    const double pv = p_value(p, c, lam);

    SelfSimilarReport rep;
    rep.eps_ladder = eps_ladder;
    rep.psi2_at_zero = psi2_closed_limit(p, c, lam);
    rep.psi2_values.resize(eps_ladder.size());
    const Kernel mu_atom = Kernel::pure_atom(p.mu_bar);
    for (size_t i = 0; i < eps_ladder.size(); ++i) {
        ModelSpec spec{mollify(base_nu, eps_ladder[i]), mu_atom};
        rep.psi2_values[i] = psi2(p, c, lam, spec, s.grid);
    }

    const size_t n = eps_ladder.size();
    const double d_last = (rep.psi2_values[n - 1] - rep.psi2_at_zero) / eps_ladder[n - 1];
    if (n == 1) {
        rep.low_order = true;
        rep.fd_derivative = d_last;
    } else {
        // linear extrapolation of the one-sided quotient to eps = 0
        const double d_prev = (rep.psi2_values[n - 2] - rep.psi2_at_zero) / eps_ladder[n - 2];
        const double e1 = eps_ladder[n - 2], e2 = eps_ladder[n - 1];
        rep.fd_derivative = (e1 * d_last - e2 * d_prev) / (e1 - e2);
    }
    rep.i0 = i0_integral(p.mu_bar, p.nu_bar, pv, base_nu);
    rep.closed_form = -2.0 * std::sqrt(pv) * rep.i0 / (p.nu_bar + 2.0 * std::sqrt(pv));
    return rep;
}

PerturbedSpeed perturbed_speed(const Params& p, const Kernel& upsilon, double eps,
                               const SearchControl& s) {
    p.validate();
    require_unit_normalisation(p);
    if (!(eps >= 0.0 && eps < 1.0))
        throw validation_error("perturbed_speed: eps must lie in [0, 1)");

    SearchControl closed = s;
    closed.pipeline = Psi2Pipeline::closed_form;
    ModelSpec limit_spec{Kernel::pure_atom(p.nu_bar), Kernel::pure_atom(p.mu_bar)};
    PerturbedSpeed out;
    out.c_star_0 = spreading_speed(p, limit_spec, closed).c_star;
    if (eps == 0.0) {
        out.c_star_eps = out.c_star_0;
        out.delta = 0.0;
        return out;
    }
    ModelSpec mix{mix_with_atom(upsilon, eps), Kernel::pure_atom(p.mu_bar)};
    out.c_star_eps = spreading_speed(p, mix, s).c_star;
    out.delta = out.c_star_eps - out.c_star_0;
    return out;
}

double alpha_star_limit(const Params& p, const SearchControl& s) {
    SearchControl closed = s;
    closed.pipeline = Psi2Pipeline::closed_form;
    ModelSpec limit_spec{Kernel::pure_atom(p.nu_bar), Kernel::pure_atom(p.mu_bar)};
    const SpeedResult r = spreading_speed(p, limit_spec, closed);
    if (!r.lambda_star)
        throw domain_error("alpha_star_limit: no tangency exists for D <= 2d");
    return std::sqrt(p_value(p, r.c_star, *r.lambda_star));
}

PerturbationReport perturbation_study(const Params& p, const Kernel& upsilon,
                                      std::vector<double> eps_ladder,
                                      const SearchControl& s) {
    if (eps_ladder.size() < 2)
        throw validation_error("perturbation_study: need at least two eps values");
    std::sort(eps_ladder.rbegin(), eps_ladder.rend());
    PerturbationReport rep;
    rep.eps_ladder = eps_ladder;
    rep.m1 = m1_threshold(p.growth);
    rep.alpha_star = alpha_star_limit(p, s);
    for (double e : eps_ladder) {
        const PerturbedSpeed ps = perturbed_speed(p, upsilon, e, s);
        rep.c_star_0 = ps.c_star_0;
        rep.c_star_eps.push_back(ps.c_star_eps);
        rep.delta.push_back(ps.delta);
    }
    const size_t n = eps_ladder.size();
    const double d1 = rep.delta[n - 2], d2 = rep.delta[n - 1];
    if (d1 > 0.0 && d2 > 0.0)
        rep.sign = 1;
    else if (d1 < 0.0 && d2 < 0.0)
        rep.sign = -1;
    else
        rep.inconclusive = true;
    return rep;
}

}  // namespace roadfield
