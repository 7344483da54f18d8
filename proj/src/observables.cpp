#include "telegf/observables.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace telegf {

namespace {

using boost::math::quadrature::gauss_kronrod;

struct Value {
    double value = 0.0;
    double error = 0.0;
};

Route regular_route(const BoundaryRegime& bc) {
    return (bc.kind == Boundary::radiation || bc.kind == Boundary::backreaction) ? Route::bromwich : Route::closed;
}

// weight of the reflected front relative to a direct one
double image_factor(const BoundaryRegime& bc) {
    switch (bc.kind) {
        case Boundary::free:
        case Boundary::absorbing: return 0.0;
        case Boundary::reflecting: return 1.0;
        default: return 1.0 - bc.beta;
    }
}

Value integrate(const auto& f, double a, double b, double tol) {
    if (!(b > a)) return {};
    Value v;
    v.value = gauss_kronrod<double, 31>::integrate(f, a, b, 15, tol, &v.error);
    return v;
}

// int_0^t K(t - tau) p(x, tau) dtau, fronts included in closed form
template <class Kernel>
Value time_convolution(double x, double x0, double t, const BoundaryRegime& bc, const Medium& m,
                       const ObservableSpec& spec, Kernel kernel) {
    const double c = m.c(), T = m.T();
    Value out;
    const double direct = std::abs(x - x0) / c;
    if (direct > t) return out;
    out.value += kernel(t - direct) * 0.5 * std::exp(-0.5 * direct / T) / c;

    std::vector<double> cuts{direct};
    if (bc.has_wall()) {
        const double image = (x + x0) / c;
        if (image <= t) {
            out.value += kernel(t - image) * image_factor(bc) * 0.5 * std::exp(-0.5 * image / T) / c;
            cuts.push_back(image);
        }
    }
    cuts.push_back(t);
    const Route route = regular_route(bc);
    auto integrand = [&](double tau) {
        return kernel(t - tau) * evaluate(route, {x, x0, tau}, bc, m, spec.route).regular;
    };
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const Value piece = integrate(integrand, cuts[k], cuts[k + 1], spec.tol);
        out.value += piece.value;
        out.error += piece.error;
    }
    return out;
}

// fronts of the spatial profile at time t, where Q and W lose smoothness
double front_distance(double x, double x0, double t, const BoundaryRegime& bc, const Medium& m) {
    const double ct = m.c() * t;
    double d = std::min(std::abs(x - (x0 + ct)), std::abs(x - (x0 - ct)));
    if (bc.has_wall()) d = std::min(d, std::abs(x - (ct - x0)));
    return d;
}

// Richardson-extrapolated five-point derivative, h and h/2
template <class F>
Value derivative(F&& f, double x, double h, bool forward) {
    auto stencil = [&](double step) {
        if (forward)
            return (-25.0 * f(x) + 48.0 * f(x + step) - 36.0 * f(x + 2 * step) + 16.0 * f(x + 3 * step) -
                    3.0 * f(x + 4 * step)) /
                   (12.0 * step);
        return (f(x - 2 * step) - 8.0 * f(x - step) + 8.0 * f(x + step) - f(x + 2 * step)) / (12.0 * step);
    };
    const double coarse = stencil(h);
    const double fine = stencil(0.5 * h);
    return {fine + (fine - coarse) / 15.0, std::abs(fine - coarse)};
}

template <class Kernel>
Value spatial_derivative(double x, double x0, double t, const BoundaryRegime& bc, const Medium& m,
                         const ObservableSpec& spec, Kernel kernel) {
    const double scale = m.c() * m.T();
    const double dist = front_distance(x, x0, t, bc, m);
    if (dist < spec.cone_margin * scale) throw DomainError("flux: evaluation point too close to a front");
    double h = std::min(0.05 * scale, dist / 4.0);
    bool forward = false;
    if (bc.has_wall() && x - 2.0 * h < 0.0) {
        forward = true;
        h = std::min(0.025 * scale, dist / 8.0);
    }
    double err = 0.0;
    auto f = [&](double xs) {
        const Value v = time_convolution(xs, x0, t, bc, m, spec, kernel);
        err = std::max(err, v.error);
        return v.value;
    };
    Value d = derivative(f, x, h, forward);
    // quadrature noise amplified by the stencil weights
    d.error += 16.0 * err / h;
    return d;
}

}  // namespace

FluxResult flux(const Query& q, const BoundaryRegime& bc, const Medium& m, const ObservableSpec& spec) {
    check_query(q, bc);
    bc.validate();
    if (q.t == 0.0) return {};
    const double T = m.T(), c2 = m.c() * m.c();
    auto kernel = [T](double lag) { return std::exp(-lag / T); };
    const Value d = spatial_derivative(q.x, q.x0, q.t, bc, m, spec, kernel);
    return {-c2 * d.value, c2 * d.error};
}

SurvivalResult survival(double t, double x0, const BoundaryRegime& bc, const Medium& m, SurvivalMethod method,
                        const ObservableSpec& spec) {
    check_query({x0, x0, t}, bc);
    bc.validate();
    SurvivalResult out;
    out.method = method;
    const double ct = m.c() * t;
    // nothing has reached x = 0 before the first arrival
    if (t == 0.0 || (bc.has_wall() && ct < x0)) return out;

    if (method == SurvivalMethod::flux) {
        if (!bc.has_wall()) return out;
        const double T = m.T(), c2 = m.c() * m.c();
        auto kernel = [T](double lag) { return -T * std::expm1(-lag / T); };
        const Value d = spatial_derivative(0.0, x0, t, bc, m, spec, kernel);
        out.S = 1.0 - c2 * d.value;
        out.error = c2 * d.error;
        return out;
    }

    out.S = 0.0;
    for (const DeltaTerm& dt : ballistic_deltas(x0, t, bc, m)) out.S += dt.weight;
    const double lo = bc.has_wall() ? std::max(0.0, x0 - ct) : x0 - ct;
    const double hi = x0 + ct;
    std::vector<double> cuts{lo, hi, x0};
    if (bc.has_wall()) cuts.push_back(ct - x0);
    if (!bc.has_wall() || x0 - ct > 0.0) cuts.push_back(x0 - ct);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::remove_if(cuts.begin(), cuts.end(), [&](double v) { return v < lo || v > hi; }), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const Route route = regular_route(bc);
    double pointwise = 0.0;
    auto density = [&](double x) {
        const GfValue v = evaluate(route, {x, x0, t}, bc, m, spec.route);
        pointwise = std::max(pointwise, v.error_estimate);
        return v.regular;
    };
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const Value piece = integrate(density, cuts[k], cuts[k + 1], spec.tol);
        out.S += piece.value;
        out.error += piece.error;
    }
    out.error += pointwise * (hi - lo);
    return out;
}

SurvivalCheck survival_checked(double t, double x0, const BoundaryRegime& bc, const Medium& m,
                               const ObservableSpec& spec) {
    SurvivalCheck out;
    out.spatial = survival(t, x0, bc, m, SurvivalMethod::spatial, spec);
    out.flux = survival(t, x0, bc, m, SurvivalMethod::flux, spec);
    out.difference = std::abs(out.spatial.S - out.flux.S);
    const double allowed = 10.0 * (out.spatial.error + out.flux.error) + spec.consistency_floor;
    if (out.difference > allowed)
        throw ConsistencyError("survival: spatial and flux routes differ by " + std::to_string(out.difference));
    return out;
}

}  // namespace telegf
