#pragma once

#include <vector>

#include "roadfield/model_spec.hpp"
#include "roadfield/params.hpp"

namespace roadfield {

/// Discretisation policy for the profile solver.
///
/// The base grid is `intervals` uniform intervals on [-L, L] with
/// L = support_radius + tail_efolds / sqrt(P/d). When a continuous kernel
/// would be under-resolved the interval count grows so that
/// h <= support_radius / points_per_halfwidth; if that would exceed
/// max_nodes the tail is shortened instead (the decay closure at the
/// boundary is exact for any truncation beyond the kernel support).
struct GridControl {
    long intervals = 16384;
    double tail_efolds = 14.0;
    double points_per_halfwidth = 64.0;
    long max_nodes = 2000000;
    double window_margin = 1e-6;  // relative clamp distance from the lambda window edges
    double residual_tol = 1e-9;
};

/// Coercivity value P(lambda) = lambda*c - d*lambda^2 - f'(0).
inline double p_value(const Params& p, double c, double lambda) {
    return lambda * c - p.d * lambda * lambda - p.growth;
}

/// Interval of decay exponents on which the profile equation is coercive.
struct LambdaWindow {
    double lo, hi;
    double width() const { return hi - lo; }
};

/// (c -/+ sqrt(c^2 - c_KPP^2)) / (2d); only exists for c > c_KPP.
LambdaWindow lambda_window(const Params& p, double c);

/// Road dispersion parabola Psi1 = -D lambda^2 + c lambda + mu_bar.
inline double psi1(const Params& p, double c, double lambda) {
    return -p.big_d * lambda * lambda + c * lambda + p.mu_bar;
}

/// Discretised positive profile phi(y; lambda, c) of the exchange ODE.
struct ProfileSolution {
    std::vector<double> ygrid;
    std::vector<double> phi;
    double lambda = 0.0;
    double c = 0.0;
    double p_value = 0.0;
    double trunc_len = 0.0;   // grid half-length L
    double residual = 0.0;    // max discrete-equation residual (relative)
};

/// Solve -d phi'' + (P(lambda) + nu(y)) phi = mu(y) on [-L, L] with decay
/// (Robin) closures phi'(+-L) = -+ sqrt(P/d) phi(+-L). Dirac atoms enter
/// through the y = 0 row only.
ProfileSolution solve_profile(const Params& p, double c, double lambda,
                              const ModelSpec& spec, const GridControl& g = {});

/// Psi2 = nu_atom * phi(0) + trapezoid(nu_cont * phi).
double psi2(const Params& p, double c, double lambda, const ModelSpec& spec,
            const GridControl& g = {});

/// Closed form for the pure-atom (limit) model:
/// Psi2^0 = nu_bar mu_bar / (nu_bar + 2 sqrt(d P)).
double psi2_closed_limit(const Params& p, double c, double lambda);

/// Closed form for the nu-atom / mu-continuous model:
/// Psi2 = 2 nu_bar / (nu_bar + 2 sqrt(d P)) * int_0^inf e^{-sqrt(P/d) z} mu(z) dz.
double psi2_closed_rpsl2(const Params& p, double c, double lambda, const Kernel& mu_kernel);

// --- keyed by the coercivity value directly (used by the D -> infinity study) ---

double psi2_at_p(double d, double p, const Kernel& nu, const Kernel& mu,
                 const GridControl& g = {}, ProfileSolution* out = nullptr);
double psi2_closed_limit_at_p(double d, double p, double nu_bar, double mu_bar);
double psi2_closed_rpsl2_at_p(double d, double p, double nu_bar, const Kernel& mu_kernel);

/// int_0^inf e^{-alpha z} k(z) dz, exact per linear interval of the table.
double damped_halfline_integral(const Kernel& k, double alpha);

/// Lambda clamped into the window by the relative margin; exact-endpoint and
/// outside queries are domain errors.
double clamp_lambda(const LambdaWindow& w, double lambda, double margin);

}  // namespace roadfield
