#pragma once

#include <string>
#include <vector>

#include "telegf/gf_bromwich.hpp"
#include "telegf/gf_closed.hpp"
#include "telegf/laplace_domain.hpp"
#include "telegf/parallel.hpp"
#include "telegf/types.hpp"

namespace telegf {

// Analytic evaluation routes for the regular part of the GF.
enum class Route { closed, bromwich, laplace };

Route parse_route(const std::string& name);
std::string route_name(Route r);

struct RouteSpec {
    SeriesSpec series;
    QuadSpec quad;
    InversionSpec inversion;
};

/// GF at one point through the chosen route. Deltas always come from
/// ballistic_deltas. The closed route throws UnsupportedRegime for
/// backreaction; the laplace route throws DomainError near a front.
GfValue evaluate(Route route, const Query& q, const BoundaryRegime& bc, const Medium& m, const RouteSpec& spec = {});

struct Profile {
    std::vector<double> x;
    std::vector<double> regular;  // NaN where the route is undefined (laplace near a front)
    std::vector<double> error;
    std::vector<DeltaTerm> deltas;
    bool accuracy_warning = false;
};

/// Regular part on the points xs at time t. Points are independent, so the
/// parallel and serial kernels agree bitwise. AccuracyError from any point
/// is rethrown after the loop.
Profile tabulate(Route route, const BoundaryRegime& bc, const Medium& m, double x0, double t,
                 const std::vector<double>& xs, const RouteSpec& spec = {},
                 Execution exec = Execution::parallel);

/// Cell densities on a uniform grid of cell centres (spacing dx): the regular
/// part sampled at the centres plus each Dirac term split linearly between
/// its two nearest cells. Used against the finite-volume oracle.
std::vector<double> cell_density(const Profile& profile, double dx);

/// sum |p - q| dx
double l1_distance(const std::vector<double>& p, const std::vector<double>& q, double dx);

}  // namespace telegf
