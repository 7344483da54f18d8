#pragma once

#include "telegf/types.hpp"

namespace telegf {

/// Truncation control for the radiation power series.
struct SeriesSpec {
    int n_max = 64;
    double tail_tol = 1e-8;
};

/// u = sqrt(c^2 t^2 - x^2) / (2 c T). Throws DomainError when c t < x.
double lightcone_u(double t, double x, const Medium& m);

/// Free kernel f0(t, x) without the e^{-t/2T} damping. The Dirac term of
/// weight 1/2 sits on ct = x and is reported only when |ct - x| <= cone_tol;
/// on the cone the regular part takes its interior limit.
GfValue f0_eval(double t, double x, const Medium& m, double cone_tol = 1e-12);

double f1_eval(double t, double x, const Medium& m);
double gn_eval(unsigned n, double t, double x, const Medium& m);

/// Radiation series coefficients; beta in [0, 1].
double cn_coeff(unsigned n, double beta);

// Damped kernels e^{-t/2T} f(t, x). These stay finite for large t/T where
// the undamped Bessel factors overflow.
double f0_regular_damped(double t, double x, const Medium& m);
double f1_damped(double t, double x, const Medium& m);

struct SeriesSum {
    double value = 0.0;       // e^{-t/2T} sum_{n<=n_max} c_n g_n(t, x)
    double tail_bound = 0.0;  // bound on the omitted terms, same scaling
};

SeriesSum radiation_series_damped(double t, double x, double beta, const Medium& m, int n_max);

/// Closed-form GF for free, absorbing, reflecting and radiation walls.
/// The radiation branch reports its truncation bound in error_estimate and
/// flags accuracy_warning when it exceeds spec.tail_tol. Backreaction has
/// no closed form: UnsupportedRegime.
GfValue eval_closed_gf(const Query& q, const BoundaryRegime& bc, const Medium& m,
                       const SeriesSpec& spec = {});

}  // namespace telegf
