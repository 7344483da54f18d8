#include "telegf/gf_closed.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "telegf/errors.hpp"
#include "telegf/specfun.hpp"

namespace telegf {
namespace {

// Inside-cone geometry shared by the kernels: u, the ratio (ct-x)/(ct+x)
// and the log of the damping e^{-t/2T} folded with the e^{u} of the scaled
// Bessel functions (always <= 0).
struct Cone {
    double u;
    double ratio;
    double log_scale;
};

Cone cone_of(double t, double x, const Medium& m) {
    const double ct = m.c() * t;
    const double u = std::sqrt(std::max(0.0, (ct - x) * (ct + x))) / (2.0 * m.c() * m.T());
    const double ratio = ct + x > 0.0 ? (ct - x) / (ct + x) : 1.0;
    return {u, ratio, u - 0.5 * t / m.T()};
}

bool inside(double t, double x, const Medium& m) { return m.c() * t >= x; }

}  // namespace

double lightcone_u(double t, double x, const Medium& m) {
    if (x < 0.0 || !(m.c() * t >= x))
        throw DomainError("lightcone_u: requires c t >= x >= 0");
    return std::sqrt((m.c() * t - x) * (m.c() * t + x)) / (2.0 * m.c() * m.T());
}

GfValue f0_eval(double t, double x, const Medium& m, double cone_tol) {
    if (t < 0.0 || x < 0.0) throw DomainError("f0_eval: requires t, x >= 0");
    GfValue out;
    if (!inside(t, x, m)) return out;
    const double u = lightcone_u(t, x, m);
    out.regular = (specfun::bessel_i(0, u) + 0.5 * t / m.T() * specfun::bessel_i1_over_z(u)) /
                  (4.0 * m.c() * m.T());
    if (std::abs(m.c() * t - x) <= cone_tol) out.deltas.push_back({x, 0.5});
    return out;
}

double f1_eval(double t, double x, const Medium& m) {
    if (t < 0.0 || x < 0.0) throw DomainError("f1_eval: requires t, x >= 0");
    if (!inside(t, x, m)) return 0.0;
    const Cone k = cone_of(t, x, m);
    const double sr = std::sqrt(k.ratio);
    return (specfun::bessel_i(0, k.u) + 2.0 * sr * specfun::bessel_i(1, k.u) +
            k.ratio * specfun::bessel_i(2, k.u)) /
           (8.0 * m.c() * m.T());
}

double gn_eval(unsigned n, double t, double x, const Medium& m) {
    if (t < 0.0 || x < 0.0) throw DomainError("gn_eval: requires t, x >= 0");
    if (!inside(t, x, m)) return 0.0;
    const Cone k = cone_of(t, x, m);
    return std::pow(k.ratio, 0.5 * n) * specfun::bessel_i(n, k.u);
}

double cn_coeff(unsigned n, double beta) {
    if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("cn_coeff: beta must lie in [0, 1]");
    switch (n) {
        case 0: return 1.0;
        case 1: return 4.0 - beta;
        case 2: return (2.0 - beta) * (3.0 - beta) + 1.0;
        default: {
            const double b = 2.0 - beta;
            return b * b * b * std::pow(1.0 - beta, double(n) - 3.0);
        }
    }
}

double f0_regular_damped(double t, double x, const Medium& m) {
    if (!inside(t, x, m)) return 0.0;
    const Cone k = cone_of(t, x, m);
    const double bracket = specfun::bessel_i_scaled(0, k.u) +
                           0.5 * t / m.T() * specfun::bessel_i1_over_z_scaled(k.u);
    return std::exp(k.log_scale) * bracket / (4.0 * m.c() * m.T());
}

double f1_damped(double t, double x, const Medium& m) {
    if (!inside(t, x, m)) return 0.0;
    const Cone k = cone_of(t, x, m);
    double seq[3];
    specfun::bessel_i_scaled_sequence(k.u, seq);
    const double bracket = seq[0] + 2.0 * std::sqrt(k.ratio) * seq[1] + k.ratio * seq[2];
    return std::exp(k.log_scale) * bracket / (8.0 * m.c() * m.T());
}

SeriesSum radiation_series_damped(double t, double x, double beta, const Medium& m, int n_max) {
    if (n_max < 1) throw ConfigError("radiation series: n_max must be >= 1");
    SeriesSum out;
    if (!inside(t, x, m)) return out;
    const Cone k = cone_of(t, x, m);
    const int explicit_top = std::max(n_max, 3) + 1;
    std::vector<double> bessel(std::size_t(explicit_top) + 1);
    specfun::bessel_i_scaled_sequence(k.u, bessel);

    const double scale = std::exp(k.log_scale);
    const double root = std::sqrt(k.ratio);
    double power = 1.0;  // ratio^{n/2}
    for (int n = 0; n <= explicit_top; ++n) {
        const double term = cn_coeff(unsigned(n), beta) * power * bessel[std::size_t(n)] * scale;
        if (n <= n_max) out.value += term;
        else if (n < explicit_top) out.tail_bound += term;
        else {
            // n >= explicit_top: I_n <= I_{explicit_top}, geometric in (1-beta) sqrt(ratio)
            const double q = (1.0 - beta) * root;
            out.tail_bound += q < 1.0 ? term / (1.0 - q) : HUGE_VAL;
        }
        power *= root;
    }
    return out;
}

GfValue eval_closed_gf(const Query& q, const BoundaryRegime& bc, const Medium& m,
                       const SeriesSpec& spec) {
    check_query(q, bc);
    bc.validate();
    if (bc.kind == Boundary::backreaction)
        throw UnsupportedRegime("backreaction has no closed form; use the Bromwich route (eval_gf)");

    GfValue out;
    out.deltas = ballistic_deltas(q.x0, q.t, bc, m);
    const double direct = f0_regular_damped(q.t, std::abs(q.x - q.x0), m);
    const double image_point = q.x + q.x0;

    switch (bc.kind) {
        case Boundary::free:
            out.regular = direct;
            break;
        case Boundary::absorbing:
            out.regular = direct - f1_damped(q.t, image_point, m);
            break;
        case Boundary::reflecting:
            out.regular = direct + f0_regular_damped(q.t, image_point, m);
            break;
        case Boundary::radiation: {
            const double beta = bc.beta;
            const double absorbing_image = -f1_damped(q.t, image_point, m);
            const double reflecting_image = f0_regular_damped(q.t, image_point, m);
            double image = beta * absorbing_image + (1.0 - beta) * reflecting_image;
            const double pref = beta * (1.0 - beta) / (8.0 * m.c() * m.T());
            if (pref > 0.0) {
                const SeriesSum s = radiation_series_damped(q.t, image_point, beta, m, spec.n_max);
                image -= pref * s.value;
                out.error_estimate = pref * s.tail_bound;
                out.accuracy_warning = out.error_estimate > spec.tail_tol;
            }
            out.regular = direct + image;
            break;
        }
        case Boundary::backreaction:
            break;
    }
    return out;
}

}  // namespace telegf
