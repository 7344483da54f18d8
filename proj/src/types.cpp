#include "telegf/types.hpp"

#include <cmath>

#include "telegf/errors.hpp"

namespace telegf {

Medium::Medium(double c, double T) : c_(c), T_(T) {
    if (!(c > 0.0) || !std::isfinite(c)) throw ConfigError("medium: speed c must be positive");
    if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("medium: relaxation time T must be positive");
}

void BoundaryRegime::validate() const {
    switch (kind) {
        case Boundary::free:
        case Boundary::absorbing:
        case Boundary::reflecting:
            return;
        case Boundary::radiation:
            if (!(beta >= 0.0 && beta <= 1.0))
                throw ConfigError("radiation boundary: beta must lie in [0, 1]");
            return;
        case Boundary::backreaction:
            if (!(beta >= 0.0 && beta <= 1.0))
                throw ConfigError("backreaction boundary: beta must lie in [0, 1]");
            if (!(kappa >= 0.0) || !std::isfinite(kappa))
                throw ConfigError("backreaction boundary: kappa must be non-negative");
            return;
    }
}

std::string BoundaryRegime::name() const {
    switch (kind) {
        case Boundary::free: return "free";
        case Boundary::absorbing: return "absorbing";
        case Boundary::reflecting: return "reflecting";
        case Boundary::radiation: return "radiation";
        case Boundary::backreaction: return "backreaction";
    }
    return "unknown";
}

Boundary parse_boundary(const std::string& name) {
    if (name == "free") return Boundary::free;
    if (name == "absorbing") return Boundary::absorbing;
    if (name == "reflecting") return Boundary::reflecting;
    if (name == "radiation") return Boundary::radiation;
    if (name == "backreaction") return Boundary::backreaction;
    throw ConfigError("unknown boundary condition '" + name + "'");
}

void check_query(const Query& q, const BoundaryRegime& bc) {
    if (!(q.t >= 0.0) || !std::isfinite(q.t)) throw DomainError("query: t must be finite and >= 0");
    if (!std::isfinite(q.x) || !std::isfinite(q.x0)) throw DomainError("query: x, x0 must be finite");
    if (bc.has_wall() && (q.x < 0.0 || q.x0 < 0.0))
        throw DomainError("query: x and x0 must be >= 0 when a wall sits at x = 0");
}

std::vector<DeltaTerm> ballistic_deltas(double x0, double t, const BoundaryRegime& bc,
                                        const Medium& m) {
    const double w = 0.5 * std::exp(-0.5 * t / m.T());
    const double reach = m.c() * t;
    std::vector<DeltaTerm> out;
    if (!bc.has_wall()) {
        out.push_back({x0 - reach, w});
        if (reach > 0.0) out.push_back({x0 + reach, w});
        else out.front().weight = 2.0 * w;
        return out;
    }
    if (reach == 0.0) return {{x0, 2.0 * w}};
    if (x0 - reach >= 0.0) out.push_back({x0 - reach, w});
    out.push_back({x0 + reach, w});
    const double reflected = 1.0 - (bc.kind == Boundary::absorbing ? 1.0 : bc.beta);
    if (reach > x0 && reflected > 0.0) out.push_back({reach - x0, reflected * w});
    return out;
}

}  // namespace telegf
