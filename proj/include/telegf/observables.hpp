#pragma once

#include "telegf/profile.hpp"
#include "telegf/types.hpp"

namespace telegf {

struct ObservableSpec {
    RouteSpec route;
    double tol = 1e-12;          // relative tolerance of the time and space quadratures
    double cone_margin = 1e-3;   // in units of cT; closest allowed approach to a front
    double consistency_floor = 1e-8;  // absolute slack added to the survival cross-check
};

/// Cattaneo flux j(x, t) = -c^2 d/dx int_0^t e^{-(t - tau)/T} p(x, tau) dtau.
/// Fronts crossing x enter the time integral in closed form. The derivative
/// is a Richardson-extrapolated five-point stencil, one-sided at a wall.
/// Throws DomainError within cone_margin of a front at time t.
struct FluxResult {
    double value = 0.0;
    double error = 0.0;
};
FluxResult flux(const Query& q, const BoundaryRegime& bc, const Medium& m, const ObservableSpec& spec = {});

enum class SurvivalMethod { spatial, flux };

struct SurvivalResult {
    double S = 1.0;
    SurvivalMethod method = SurvivalMethod::spatial;
    double error = 0.0;
};

/// Survival probability S(t | x0), the mass remaining in x > 0.
///   spatial: Dirac weights plus the regular part integrated over its support
///   flux:    S = 1 + int_0^t j(0+, t') dt'  (j <= 0 at an absorbing wall)
SurvivalResult survival(double t, double x0, const BoundaryRegime& bc, const Medium& m,
                        SurvivalMethod method = SurvivalMethod::spatial, const ObservableSpec& spec = {});

struct SurvivalCheck {
    SurvivalResult spatial;
    SurvivalResult flux;
    double difference = 0.0;
};

/// Both methods; throws ConsistencyError when they differ by more than ten
/// times their combined error estimates plus consistency_floor.
SurvivalCheck survival_checked(double t, double x0, const BoundaryRegime& bc, const Medium& m,
                               const ObservableSpec& spec = {});

}  // namespace telegf
