#pragma once

#include <string>
#include <vector>

namespace telegf {

/// Transport medium of the persistent walk: speed c and relaxation time T.
/// The turning rate of the underlying walk is 1/(2T); the diffusion limit
/// has D = c^2 T.
class Medium {
public:
    Medium(double c, double T);

    double c() const noexcept { return c_; }
    double T() const noexcept { return T_; }
    double alpha() const noexcept { return 1.0 / T_; }
    double diffusion() const noexcept { return c_ * c_ * T_; }

private:
    double c_;
    double T_;
};

enum class Boundary { free, absorbing, reflecting, radiation, backreaction };

/// Boundary condition at x = 0.
///
/// beta is the probability that a walker reaching the wall is absorbed,
/// kappa (1/length) the desorption coefficient of the backreaction wall.
/// The factories fill in the implied values (absorbing: beta = 1, ...).
struct BoundaryRegime {
    Boundary kind = Boundary::free;
    double beta = 0.0;
    double kappa = 0.0;

    static BoundaryRegime free_space() { return {Boundary::free, 0.0, 0.0}; }
    static BoundaryRegime absorbing() { return {Boundary::absorbing, 1.0, 0.0}; }
    static BoundaryRegime reflecting() { return {Boundary::reflecting, 0.0, 0.0}; }
    static BoundaryRegime radiation(double beta) { return {Boundary::radiation, beta, 0.0}; }
    static BoundaryRegime backreaction(double kappa, double beta = 1.0) {
        return {Boundary::backreaction, beta, kappa};
    }

    bool has_wall() const noexcept { return kind != Boundary::free; }

    /// Throws ConfigError when beta or kappa is out of range for the kind.
    void validate() const;

    std::string name() const;
};

/// Parse "free", "absorbing", "reflecting", "radiation", "backreaction".
Boundary parse_boundary(const std::string& name);

/// Observation point (x, t) for a walker released at x0.
struct Query {
    double x = 0.0;
    double x0 = 0.0;
    double t = 0.0;
};

/// Throws DomainError unless the query is admissible for the regime
/// (t >= 0; x, x0 >= 0 whenever a wall is present).
void check_query(const Query& q, const BoundaryRegime& bc);

struct DeltaTerm {
    double location;
    double weight;
};

/// Green's function value at a point: the regular density plus the Dirac
/// terms of the spatial distribution at time t. Dirac mass is never folded
/// into `regular`.
struct GfValue {
    double regular = 0.0;
    std::vector<DeltaTerm> deltas;
    double error_estimate = 0.0;
    bool accuracy_warning = false;

    double delta_mass() const noexcept {
        double m = 0.0;
        for (const auto& d : deltas) m += d.weight;
        return m;
    }
};

/// Spatial Dirac terms of the GF at time t: ballistic walkers that have not
/// turned yet, weight e^{-t/2T}/2 each, plus the reflected packet of weight
/// (1 - beta) e^{-t/2T}/2 once the wall has been hit.
std::vector<DeltaTerm> ballistic_deltas(double x0, double t, const BoundaryRegime& bc,
                                        const Medium& m);

}  // namespace telegf
