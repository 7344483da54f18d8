#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "telegf/errors.hpp"
#include "telegf/types.hpp"

namespace telegf {

using cplx = std::complex<double>;

// Two variables appear below. `s` is the transform variable of the density p
// itself; the undamped function P = e^{t/2T} p has transform P~(s') with
// s' = s + alpha/2. f0_laplace and omega take s'; gf_laplace takes s.

/// Transform of the undamped free kernel f0, (s' + alpha/2)/(2 c rho) e^{-|x| rho / c}
/// with rho = sqrt(s'^2 - alpha^2/4).
cplx f0_laplace(cplx s_shifted, double x, const Medium& m);

/// Reflection amplitude of the radiation wall,
/// Omega = [beta (s' + alpha/2) - (2 - beta) rho] / [beta (s' + alpha/2) + (2 - beta) rho].
/// Omega = 2T(s' - rho) at beta = 1 and -1 at beta = 0 (image added).
cplx omega(double beta, cplx s_shifted, const Medium& m);

/// Backreaction amplitude A(s) multiplying e^{-x R / c}, R = sqrt(s (s + alpha)).
cplx backreaction_amplitude(double kappa, double x0, cplx s, const Medium& m);

/// Laplace transform p~(x, s | x0) of the full density (Dirac fronts included).
/// Throws DomainError within 1e-12 alpha of the cut [-alpha, 0] and
/// UnsupportedRegime for backreaction with beta != 1.
cplx gf_laplace(const BoundaryRegime& bc, const Medium& m, double x, double x0, cplx s);

/// One front of p~: term(s) = e^{-s d} G(s) where G(s) -> weight + jump/s as
/// s -> infinity. In the time domain the term is
///   weight delta(t - d) + Theta(t - d) [jump + g(t - d)],
/// g being the inverse of G - weight - jump/s, which decays like 1/s^2.
struct DelayedTerm {
    double delay = 0.0;
    double weight = 0.0;  // Dirac weight in time (density weight times 1/c)
    double jump = 0.0;    // value of the regular part just behind the front
    std::function<cplx(cplx)> stripped;
};

std::vector<DelayedTerm> delayed_terms(const BoundaryRegime& bc, const Medium& m, double x, double x0);

enum class InversionMethod { euler, talbot };

struct InversionSpec {
    InversionMethod method = InversionMethod::euler;
    int n_terms = 32;
    // Euler: the Bromwich line sits at Re s = margin / t; the discretization
    // error is about e^{-2 margin}. Talbot ignores it.
    double margin = 11.5;
    // Talbot multiplies by e^{2 n_terms / 5}; in double precision it is best
    // kept to n_terms <= 40.
    double tol = 1e-6;  // absolute error allowed before AccuracyError
};

struct InversionResult {
    double value = 0.0;
    double error = 0.0;
};

/// Inverse transform of a scalar F at t > 0. The error is estimated by a
/// second evaluation with fewer terms.
InversionResult invert_laplace(const std::function<cplx(cplx)>& F, double t, const InversionSpec& spec = {});

/// Exclusion radius around the fronts, 5 / (alpha n_terms).
double exclusion_radius(const Medium& m, const InversionSpec& spec);

/// Regular part of the density at (x, t) from numerical inversion of
/// gf_laplace, fronts and jumps subtracted analytically. Throws DomainError
/// when t is within the exclusion radius of a front arrival.
InversionResult invert_gf(const Query& q, const BoundaryRegime& bc, const Medium& m,
                          const InversionSpec& spec = {});

}  // namespace telegf
