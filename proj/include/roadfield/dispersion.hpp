#pragma once

#include <optional>
#include <vector>

#include "roadfield/bvp.hpp"

namespace roadfield {

/// How Psi2 is evaluated inside speed searches. `automatic` takes the
/// closed form for the pure-atom model and the BVP otherwise.
enum class Psi2Pipeline { automatic, numeric, closed_form };

struct SearchControl {
    double c_rel_tol = 1e-8;
    double bracket_start_offset = 1e-6;   // first probe at c_KPP * (1 + offset)
    double bracket_max_offset = 1e6;      // expansion failure bound
    double golden_rel_tol = 1e-10;        // window-relative
    int golden_max_iter = 200;
    Psi2Pipeline pipeline = Psi2Pipeline::automatic;
    GridControl grid;
};

/// Minimum of Psi2 - Psi1 over the clamped lambda window at speed c.
/// Negative gap means the curves intersect (c is at or above c*).
struct GapReport {
    double c = 0.0;
    double gap = 0.0;
    double lambda_argmin = 0.0;
    bool endpoint_cross = false;  // Psi1 already exceeds mu_bar at a window edge
};

GapReport gap(const Params& p, const ModelSpec& spec, double c,
              const SearchControl& s = {});

struct SpeedResult {
    double c_star = 0.0;
    std::optional<double> lambda_star;  // absent on the analytic D <= 2d branch
    std::optional<double> psi_star;     // common curve value at tangency
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    bool analytic_branch = false;       // D <= 2d: c* = c_KPP exactly
    bool threshold_degenerate = false;  // D barely above 2d, c* below tolerance of c_KPP
    ModelKind kind = ModelKind::limit;
    long grid_intervals = 0;
    double c_rel_tol = 0.0;
};

/// First speed at which the parabola and the convex dispersion curve touch.
/// Analytic c_KPP for D <= 2d; bracketed gap bisection otherwise.
SpeedResult spreading_speed(const Params& p, const ModelSpec& spec,
                            const SearchControl& s = {});

struct CurvePoint {
    double lambda, psi1, psi2;
};

/// n uniformly spaced lambda in the clamped window with both curve values.
std::vector<CurvePoint> curve_sample(const Params& p, const ModelSpec& spec, double c,
                                     int n, const SearchControl& s = {});

/// c*/D <= (c* - sqrt(c*^2 - c_KPP^2))/(2d) <= (c* + sqrt(c*^2 + 4 D mu_bar))/(2D)
struct ChainReport {
    bool ok = false;
    double slack_lower = 0.0;  // middle - left
    double slack_upper = 0.0;  // right - middle
};

ChainReport check_inequality_chain(const SpeedResult& r, const Params& p,
                                   double tol = 1e-9);

/// Internal dispatch shared with the analysis module.
double psi2_dispatch(const Params& p, double c, double lambda, const ModelSpec& spec,
                     const SearchControl& s);

/// Derivative-free minimiser for strictly unimodal objectives.
template <typename F>
std::pair<double, double> golden_minimize(F&& f, double a, double b, double rel_tol,
                                          int max_iter) {
    constexpr double inv_phi = 0.6180339887498949;
    const double span = b - a;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int it = 0; it < max_iter && (b - a) > rel_tol * span; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? std::make_pair(x1, f1) : std::make_pair(x2, f2);
}

}  // namespace roadfield
