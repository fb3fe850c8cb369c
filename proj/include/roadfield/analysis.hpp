#pragma once

#include <string>
#include <vector>

#include "roadfield/dispersion.hpp"

namespace roadfield {

/// Limit speed of c*(D)/sqrt(D) as D -> infinity: first c at which the
/// rescaled parabola lambda*c - lambda^2 + mu_bar meets the limit curve
/// built from -d phi'' + (lambda c - f'(0) + nu) phi = mu on lambda > f'(0)/c.
double c_infinity(double d, double growth, double mu_bar, const Kernel& nu,
                  const Kernel& mu, const SearchControl& s = {});

struct AsymptoticReport {
    std::vector<double> big_d_values;
    std::vector<double> c_star;
    std::vector<double> ratio;  // c*/sqrt(D)
    double c_inf = 0.0;
    double growth = 0.0;
    // slacks of c_inf <= f'(0)/c_inf <= (c_inf + sqrt(c_inf^2 + 4 mu_bar))/2
    double chain_slack_lower = 0.0;
    double chain_slack_upper = 0.0;
};

/// c* along a geometric D ladder plus the independently computed c_inf.
AsymptoticReport sweep_big_d(const Params& base, const std::vector<double>& d_ladder,
                             const ModelSpec& spec, const SearchControl& s = {},
                             int threads = 1);

struct KernelSpeedRow {
    std::string label;
    double c_star = 0.0;
};

struct CompareReport {
    std::vector<KernelSpeedRow> rows;
    double c_star_limit = 0.0;  // supremum candidate from the pure-atom model
};

/// Speeds of the nu-atom / mu-continuous model across a family of mu kernels,
/// all bounded by the pure-atom speed.
CompareReport rpsl2_compare(const Params& p, const std::vector<Kernel>& mu_list,
                            const std::vector<std::string>& labels,
                            const SearchControl& s = {}, int threads = 1);

/// g(alpha, y) = 1 - e^{-alpha|y|} - (1 - e^{-2 alpha|y|})/(1 + 2 alpha).
/// Its sign against a perturbation kernel decides speed enhancement.
double g_indicator(double alpha, double y);

/// Unique positive root of g(alpha, .) for 0 < alpha < 1/2; g < 0 below it.
double y_threshold(double alpha);

/// m1 = 2 + 1/(2 f'(0)) + sqrt(12 + f'(0)^{-2} + 7/f'(0))/2; D below this
/// admits an enhancing perturbation.
double m1_threshold(double growth);

/// I0 = mu_bar int_0^1 ((int_{-z}^{z} nu)/(nu_bar + 2 sqrt(P)) - 1) z nu(z) dz
/// under the d = 1 normalisation, nu supported in [-1, 1]. Strictly negative
/// for nonzero nu.
double i0_integral(double mu_bar, double nu_bar, double p_value, const Kernel& nu_kernel);

struct SelfSimilarReport {
    double fd_derivative = 0.0;  // extrapolated d Psi2/d eps at eps = 0
    double closed_form = 0.0;    // -2 sqrt(P) I0 / (nu_bar + 2 sqrt(P))
    double i0 = 0.0;
    bool low_order = false;      // single-entry ladder, one-sided estimate only
    std::vector<double> eps_ladder;
    std::vector<double> psi2_values;
    double psi2_at_zero = 0.0;
};

/// Derivative of Psi2 along the self-similar family nu_eps = (1/eps) nu(y/eps)
/// with mu a Dirac atom, against the closed-form limit value. Requires the
/// d = nu_bar = 1 normalisation.
SelfSimilarReport dpsi2_deps_selfsimilar(const Params& p, double c, double lambda,
                                         const Kernel& base_nu,
                                         std::vector<double> eps_ladder,
                                         const SearchControl& s = {});

struct PerturbedSpeed {
    double c_star_eps = 0.0;
    double c_star_0 = 0.0;
    double delta = 0.0;
};

/// Speed of the mixture model nu = (1-eps) delta_0 + eps upsilon (mu a Dirac
/// atom) against the pure-atom closed-form speed. d = nu_bar = 1 required.
PerturbedSpeed perturbed_speed(const Params& p, const Kernel& upsilon, double eps,
                               const SearchControl& s = {});

struct PerturbationReport {
    std::vector<double> eps_ladder;
    std::vector<double> c_star_eps;
    std::vector<double> delta;
    double c_star_0 = 0.0;
    double alpha_star = 0.0;  // sqrt(P(lambda*)) at the unperturbed tangency
    double m1 = 0.0;
    int sign = 0;  // +1 enhanced, -1 suppressed, 0 inconclusive
    bool inconclusive = false;
};

PerturbationReport perturbation_study(const Params& p, const Kernel& upsilon,
                                      std::vector<double> eps_ladder,
                                      const SearchControl& s = {});

/// sqrt(P(lambda*)) at the tangency of the unperturbed pure-atom model.
double alpha_star_limit(const Params& p, const SearchControl& s = {});

}  // namespace roadfield
