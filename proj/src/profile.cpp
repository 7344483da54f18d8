#include "telegf/profile.hpp"

#include <cmath>
#include <exception>
#include <limits>

namespace telegf {

Route parse_route(const std::string& name) {
    if (name == "closed") return Route::closed;
    if (name == "bromwich") return Route::bromwich;
    if (name == "laplace") return Route::laplace;
    throw ConfigError("unknown method '" + name + "'");
}

std::string route_name(Route r) {
    switch (r) {
        case Route::closed: return "closed";
        case Route::bromwich: return "bromwich";
        case Route::laplace: return "laplace";
    }
    return "?";
}

GfValue evaluate(Route route, const Query& q, const BoundaryRegime& bc, const Medium& m, const RouteSpec& spec) {
    switch (route) {
        case Route::closed: return eval_closed_gf(q, bc, m, spec.series);
        case Route::bromwich: return eval_gf(q, bc, m, spec.quad);
        case Route::laplace: break;
    }
    check_query(q, bc);
    GfValue v;
    v.deltas = ballistic_deltas(q.x0, q.t, bc, m);
    if (q.t == 0.0) return v;
    const InversionResult r = invert_gf(q, bc, m, spec.inversion);
    v.regular = r.value;
    v.error_estimate = r.error;
    return v;
}

Profile tabulate(Route route, const BoundaryRegime& bc, const Medium& m, double x0, double t,
                 const std::vector<double>& xs, const RouteSpec& spec, Execution exec) {
    Profile out;
    out.x = xs;
    out.regular.assign(xs.size(), 0.0);
    out.error.assign(xs.size(), 0.0);
    out.deltas = ballistic_deltas(x0, t, bc, m);

    const std::ptrdiff_t n = std::ptrdiff_t(xs.size());
    std::vector<unsigned char> warned(xs.size(), 0);
    // first failure in index order, so the report does not depend on scheduling
    std::vector<std::exception_ptr> failure(xs.size());
#pragma omp parallel for schedule(dynamic, 4) if (exec == Execution::parallel)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            const GfValue v = evaluate(route, {xs[i], x0, t}, bc, m, spec);
            out.regular[i] = v.regular;
            out.error[i] = v.error_estimate;
            warned[i] = v.accuracy_warning;
        } catch (const DomainError&) {
            if (route != Route::laplace) {
                failure[i] = std::current_exception();
                continue;
            }
            out.regular[i] = std::numeric_limits<double>::quiet_NaN();
            out.error[i] = std::numeric_limits<double>::quiet_NaN();
        } catch (...) {
            failure[i] = std::current_exception();
        }
    }
    for (const auto& f : failure)
        if (f) std::rethrow_exception(f);
    for (unsigned char w : warned) out.accuracy_warning |= bool(w);
    return out;
}

std::vector<double> cell_density(const Profile& profile, double dx) {
    std::vector<double> p = profile.regular;
    if (p.empty()) return p;
    const double x_first = profile.x.front();
    const std::ptrdiff_t n = std::ptrdiff_t(p.size());
    for (const DeltaTerm& d : profile.deltas) {
        const double f = (d.location - x_first) / dx;
        const double lo = std::floor(f);
        const double w = f - lo;
        auto put = [&](double cell, double mass) {
            const std::ptrdiff_t i = std::ptrdiff_t(cell);
            if (i >= 0 && i < n) p[i] += mass / dx;
        };
        put(lo, (1.0 - w) * d.weight);
        if (w > 0.0) put(lo + 1.0, w * d.weight);
    }
    return p;
}

double l1_distance(const std::vector<double>& p, const std::vector<double>& q, double dx) {
    if (p.size() != q.size()) throw ConfigError("l1_distance: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return s * dx;
}

}  // namespace telegf
