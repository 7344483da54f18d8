#pragma once

#include <vector>

#include "telegf/errors.hpp"
#include "telegf/parallel.hpp"
#include "telegf/types.hpp"

namespace telegf {

/// Finite-volume grid for the two-direction system. With a wall the domain
/// is [0, L]; in free space it is [x0 - L, x0 + L]. dt must satisfy c dt <= dx.
struct SolverGrid {
    double dx = 2e-3;
    double L = 0.0;
    double dt = 0.0;
    int n_steps = 0;
    int output_stride = 0;  // snapshot every this many steps; 0 keeps the final state only
};

/// Grid reaching t_final with Courant number at most `cfl`, sized so that the
/// far boundary stays outside the light cone, with `n_outputs` snapshots.
SolverGrid make_grid(const Medium& m, double x0, double dx, double t_final, double cfl = 1.0, int n_outputs = 1);

struct SolveResult {
    double dx = 0.0;
    std::vector<double> x;                   // cell centres
    std::vector<double> snapshot_times;      // includes t = 0
    std::vector<std::vector<double>> aPlus;  // right movers, 1/length
    std::vector<std::vector<double>> bMinus; // left movers, 1/length
    // per time step, index 0 is t = 0
    std::vector<double> times;
    std::vector<double> survival;    // mass inside the domain
    std::vector<double> bound;       // mass held by the wall
    std::vector<double> wall_flux;   // c (a - b) at x = 0 during the step ending at times[k]
    double escaped = 0.0;            // mass that left through an open end
};

/// Upwind finite-volume solution of
///   a_t + c a_x = (b - a)/(2T),   b_t - c b_x = (a - b)/(2T)
/// started from a = b = delta(x - x0)/2, split linearly between the two
/// nearest cells. Turning is integrated exactly over half steps (Strang);
/// at Courant number 1 advection is an exact shift. At x = 0 the wall sets
///   a(0) = (1 - beta) b(0) + (beta kappa / 2) M,   dM/dt = c [b(0) - a(0)].
/// Throws ConfigError on CFL violation or a domain smaller than the light cone.
SolveResult solve(const BoundaryRegime& bc, const Medium& m, double x0, const SolverGrid& grid,
                  Execution exec = Execution::parallel);

/// p = a + b on the cells of snapshot `index`, mollified with a hat kernel of
/// half-width `smoothing` (no smoothing below one cell).
std::vector<double> density_at(const SolveResult& result, std::size_t index, double smoothing = 0.0);

/// Discrete hat kernel of half-width `width` applied to a cell array; values
/// beyond the array ends count as zero. Used on both sides of a comparison.
std::vector<double> mollify(const std::vector<double>& p, double dx, double width);

}  // namespace telegf
