#include "telegf/rw_oracle.hpp"

#include <algorithm>
#include <cmath>

namespace telegf {

namespace {

constexpr std::size_t kBlock = 1024;

// Courant numbers this close to one are treated as exactly one so that the
// advection step is a plain shift.
constexpr double kUnitCfl = 1e-12;

struct Wall {
    bool present;
    double reflect;  // 1 - beta
    double release;  // beta kappa / 2
};

Wall wall_of(const BoundaryRegime& bc) {
    switch (bc.kind) {
        case Boundary::free: return {false, 0.0, 0.0};
        case Boundary::absorbing: return {true, 0.0, 0.0};
        case Boundary::reflecting: return {true, 1.0, 0.0};
        case Boundary::radiation: return {true, 1.0 - bc.beta, 0.0};
        case Boundary::backreaction: return {true, 1.0 - bc.beta, 0.5 * bc.beta * bc.kappa};
    }
    return {false, 0.0, 0.0};
}

// a - b relaxes at rate 1/T, a + b is untouched
void turn(std::vector<double>& a, std::vector<double>& b, double decay, Execution exec) {
    const std::ptrdiff_t n = std::ptrdiff_t(a.size());
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const double mean = 0.5 * (a[i] + b[i]);
        const double half_diff = 0.5 * (a[i] - b[i]) * decay;
        a[i] = mean + half_diff;
        b[i] = mean - half_diff;
    }
}

void advect(const std::vector<double>& a, const std::vector<double>& b, std::vector<double>& a_next,
            std::vector<double>& b_next, double ghost, double nu, bool shift, Execution exec) {
    const std::ptrdiff_t n = std::ptrdiff_t(a.size());
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const double left = i == 0 ? ghost : a[i - 1];
        const double right = i + 1 == n ? 0.0 : b[i + 1];
        if (shift) {
            a_next[i] = left;
            b_next[i] = right;
        } else {
            a_next[i] = a[i] - nu * (a[i] - left);
            b_next[i] = b[i] - nu * (b[i] - right);
        }
    }
}

// fixed blocking keeps the sum independent of the thread count
double mass(const std::vector<double>& a, const std::vector<double>& b, double dx, std::vector<double>& partial,
            Execution exec) {
    const std::ptrdiff_t nb = std::ptrdiff_t(partial.size());
    const std::size_t n = a.size();
#pragma omp parallel for schedule(static) if (exec == Execution::parallel)
    for (std::ptrdiff_t k = 0; k < nb; ++k) {
        double s = 0.0;
        const std::size_t end = std::min(n, std::size_t(k + 1) * kBlock);
        for (std::size_t i = std::size_t(k) * kBlock; i < end; ++i) s += a[i] + b[i];
        partial[k] = s;
    }
    double total = 0.0;
    for (double s : partial) total += s;
    return total * dx;
}

}  // namespace

SolverGrid make_grid(const Medium& m, double x0, double dx, double t_final, double cfl, int n_outputs) {
    if (!(dx > 0.0) || !(t_final >= 0.0) || !(cfl > 0.0 && cfl <= 1.0) || n_outputs < 1)
        throw ConfigError("make_grid: need dx > 0, t_final >= 0, 0 < cfl <= 1, n_outputs >= 1");
    SolverGrid g;
    g.dx = dx;
    const int steps = std::max(1, int(std::ceil(t_final * m.c() / (cfl * dx) - 1e-9)));
    g.n_steps = t_final > 0.0 ? steps : 0;
    g.dt = t_final > 0.0 ? t_final / steps : cfl * dx / m.c();
    // upwind moves mass one cell per step, faster than c when cfl < 1, so the
    // domain covers the numerical cone plus a few spare cells
    g.L = (std::ceil(std::abs(x0) / dx) + g.n_steps + 4.0) * dx;
    g.output_stride = g.n_steps > 0 ? std::max(1, g.n_steps / n_outputs) : 0;
    return g;
}

SolveResult solve(const BoundaryRegime& bc, const Medium& m, double x0, const SolverGrid& grid, Execution exec) {
    bc.validate();
    if (!(grid.dx > 0.0) || !(grid.dt > 0.0) || grid.n_steps < 0 || grid.output_stride < 0)
        throw ConfigError("solve: invalid grid");
    const double nu = m.c() * grid.dt / grid.dx;
    if (nu > 1.0 + kUnitCfl) throw ConfigError("solve: CFL violated, c dt / dx > 1");
    const bool shift = std::abs(nu - 1.0) <= kUnitCfl;
    const Wall wall = wall_of(bc);
    if (wall.present && x0 < 0.0) throw DomainError("solve: x0 must be >= 0 with a wall");
    const double t_final = grid.dt * grid.n_steps;
    const double reach = m.c() * t_final;
    if (grid.L + 1e-12 * grid.dx < (wall.present ? x0 + reach : reach))
        throw ConfigError("solve: domain does not contain the light cone at the final time");

    const double xmin = wall.present ? 0.0 : x0 - grid.L;
    const std::size_t n = std::size_t(std::ceil((wall.present ? grid.L : 2.0 * grid.L) / grid.dx - 1e-9));
    if (n < 2) throw ConfigError("solve: fewer than two cells");

    SolveResult out;
    out.dx = grid.dx;
    out.x.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.x[i] = xmin + (double(i) + 0.5) * grid.dx;

    std::vector<double> a(n, 0.0), b(n, 0.0), a_next(n), b_next(n);
    {
        const double f = (x0 - xmin) / grid.dx - 0.5;
        const double lo = std::floor(f);
        const double w = f - lo;
        auto deposit = [&](double cell, double mass) {
            const std::size_t i = std::size_t(std::clamp(cell, 0.0, double(n - 1)));
            a[i] += 0.5 * mass / grid.dx;
            b[i] += 0.5 * mass / grid.dx;
        };
        deposit(lo, 1.0 - w);
        if (w > 0.0) deposit(lo + 1.0, w);
    }

    std::vector<double> partial((n + kBlock - 1) / kBlock);
    double bound = 0.0;
    auto record_snapshot = [&](double t) {
        out.snapshot_times.push_back(t);
        out.aPlus.push_back(a);
        out.bMinus.push_back(b);
    };
    out.times.push_back(0.0);
    out.survival.push_back(mass(a, b, grid.dx, partial, exec));
    out.bound.push_back(0.0);
    out.wall_flux.push_back(0.0);
    record_snapshot(0.0);

    const double half_decay = std::exp(-0.5 * grid.dt / m.T());
    const double face = nu * grid.dx;  // per unit density, mass crossing a face in one step
    for (int step = 1; step <= grid.n_steps; ++step) {
        turn(a, b, half_decay, exec);
        const double ghost = wall.present ? wall.reflect * b[0] + wall.release * bound : 0.0;
        if (wall.present)
            bound += face * (b[0] - ghost);
        else
            out.escaped += face * b[0];
        out.escaped += face * a[n - 1];
        const double flux = wall.present ? m.c() * (ghost - b[0]) : 0.0;
        advect(a, b, a_next, b_next, ghost, nu, shift, exec);
        a.swap(a_next);
        b.swap(b_next);
        turn(a, b, half_decay, exec);

        const double t = step * grid.dt;
        out.times.push_back(t);
        out.survival.push_back(mass(a, b, grid.dx, partial, exec));
        out.bound.push_back(bound);
        out.wall_flux.push_back(flux);
        if ((grid.output_stride > 0 && step % grid.output_stride == 0) || step == grid.n_steps) record_snapshot(t);
    }
    return out;
}

std::vector<double> mollify(const std::vector<double>& p, double dx, double width) {
    const int half = int(std::floor(width / dx));
    if (half < 1) return p;
    std::vector<double> kernel(2 * half + 1);
    double norm = 0.0;
    for (int k = -half; k <= half; ++k) norm += kernel[k + half] = 1.0 - std::abs(k) / double(half + 1);
    for (double& w : kernel) w /= norm;
    const std::ptrdiff_t n = std::ptrdiff_t(p.size());
    std::vector<double> out(p.size(), 0.0);
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (int k = -half; k <= half; ++k) {
            const std::ptrdiff_t j = i + k;
            if (j >= 0 && j < n) s += kernel[k + half] * p[j];
        }
        out[i] = s;
    }
    return out;
}

std::vector<double> density_at(const SolveResult& result, std::size_t index, double smoothing) {
    if (index >= result.aPlus.size()) throw DomainError("density_at: snapshot index out of range");
    const auto& a = result.aPlus[index];
    const auto& b = result.bMinus[index];
    std::vector<double> p(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) p[i] = a[i] + b[i];
    return mollify(p, result.dx, smoothing);
}

}  // namespace telegf
