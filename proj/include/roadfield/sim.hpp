#pragma once

#include <string>
#include <vector>

#include "roadfield/model_spec.hpp"
#include "roadfield/params.hpp"

namespace roadfield {

/// Compactly supported boxcar bumps centred at the origin.
struct InitBump {
    double u_amp = 0.0;
    double u_halfwidth = 0.0;
    double v_amp = 0.0;
    double v_halfwidth_x = 0.0;
    double v_halfwidth_y = 0.0;
};

struct SimConfig {
    Params params;
    ModelSpec spec;  // limit or full_nonlocal only
    double lx = 60.0, ly = 10.0;
    long nx = 1201, ny = 201;  // node counts; ny odd so y = 0 is a node row
    double dt = 0.0;           // <= 0 selects 0.9 * stability bound
    double t_end = 20.0;
    InitBump init{1.0, 2.0, 1.0, 2.0, 2.0};
    long snapshot_stride = 0;  // steps between stored snapshots; 0 = final only
    long trace_points = 500;   // approximate number of front-trace samples
    double theta = 0.1;        // front threshold as a fraction of U_s

    /// 0.9 * min(hx^2/2D, 1/(2d(1/hx^2 + 1/hy^2)), 1/(growth + nu_max)),
    /// nu_max counting a lumped atom as atom/hy.
    double stability_dt() const;
    double hx() const { return 2.0 * lx / static_cast<double>(nx - 1); }
    double hy() const { return 2.0 * ly / static_cast<double>(ny - 1); }
    void validate() const;
};

struct Snapshot {
    double t = 0.0;
    std::vector<double> u;  // nx
    std::vector<double> v;  // nx * ny, row-major (x outer, y inner)
};

struct FrontTrace {
    std::vector<double> times;
    std::vector<double> positions;  // x_f(t) = max{x : u >= theta * U_s}
    double theta = 0.1;
    double u_s_reference = 0.0;
};

struct StationaryState {
    std::vector<double> ygrid;
    std::vector<double> v;  // V_s(y)
    double u = 0.0;         // U_s
};

struct SimResult {
    std::vector<Snapshot> snapshots;
    FrontTrace trace;
    StationaryState stationary;
    bool boundary_warning = false;  // front came within 10 hx of the x-boundary
    double dt_used = 0.0;
    long steps = 0;
};

struct StationaryControl {
    double ly = 12.0;
    long ny = 241;  // odd
    double tol = 1e-10;
    long max_steps = 5000000;
};

/// Unique positive x-independent equilibrium (U_s, V_s), obtained by
/// explicit time-marching of the y-only system from (0.5 nu_bar/mu_bar, 0.5).
StationaryState stationary_state(const Params& p, const ModelSpec& spec,
                                 const StationaryControl& g = {});

/// Forward-Euler integration of the coupled road--field system with
/// five-point field Laplacian, zero-flux outer boundaries and trapezoid
/// exchange integrals. The limit model exchanges through the y = 0 row.
SimResult simulate(const SimConfig& cfg);

struct SpeedFit {
    double speed = 0.0;
    double r2 = 0.0;
    bool ballistic = false;  // false when r2 < 0.99 ("not yet ballistic")
    long n_used = 0;
};

/// Least-squares slope of x_f over the trailing fraction of the trace.
SpeedFit estimate_speed(const FrontTrace& trace, double window_fraction = 0.5);

}  // namespace roadfield
