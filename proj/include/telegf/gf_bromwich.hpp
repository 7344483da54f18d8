#pragma once

#include <cmath>
#include <vector>

#include "telegf/errors.hpp"
#include "telegf/types.hpp"

namespace telegf {

enum class QuadMethod { chebyshev, adaptive };

// corrected: Pi(xi) carries -alpha c kappa and the pole residue for
// c kappa > alpha is added. paper_literal: the printed -c kappa and no
// residue, kept for forensics only.
enum class CutFormula { corrected, paper_literal };

struct QuadSpec {
    int n_nodes = 256;
    double tol = 1e-10;  // absolute, on the returned density (1/length)
    QuadMethod method = QuadMethod::adaptive;
    int max_nodes = 16384;
    CutFormula formula = CutFormula::corrected;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int nodes = 0;
};

// Overall sign of the branch-cut integrals. Calibrated once against
// h_abs = -e^{-t/2T} f1(t, x + x0) (see tests/test_gf_bromwich.cpp) and
// shared by the absorbing, radiation and backreaction integrals.
inline constexpr double kCutSign = +1.0;

/// Point xi = cos(theta) on the cut with the complementary quantities
/// evaluated from theta so that none of them loses relative accuracy.
struct CutNode {
    double xi;
    double one_minus;  // 1 - xi
    double one_plus;   // 1 + xi
    double root;       // sqrt(1 - xi^2)
};

struct CutRule {
    std::vector<CutNode> chebyshev;  // theta_j = (j + 1/2) pi / n, weight pi / n
    std::vector<CutNode> legendre;   // Gauss-Legendre in theta on [0, pi]
    std::vector<double> legendre_weights;  // include the sin(theta) Jacobian
};

/// Cached n-point rule; thread safe, references stay valid for the process.
const CutRule& cut_rule(int n);

namespace detail {

template <class Weighted, class Smooth>
double cut_sum(const CutRule& rule, Weighted& weighted, Smooth& smooth) {
    double a = 0.0;
    for (const CutNode& node : rule.chebyshev) a += weighted(node);
    a *= M_PI / double(rule.chebyshev.size());
    double b = 0.0;
    for (std::size_t j = 0; j < rule.legendre.size(); ++j)
        b += rule.legendre_weights[j] * smooth(rule.legendre[j]);
    return a + b;
}

}  // namespace detail

/// int_{-1}^{1} [ weighted(xi) / sqrt(1 - xi^2) + smooth(xi) ] dxi.
///
/// With xi = cos(theta) the weighted part becomes a periodic analytic
/// integrand (midpoint / Gauss-Chebyshev rule, spectrally convergent) and the
/// smooth part picks up sin(theta) (Gauss-Legendre in theta). The error is
/// estimated from n vs 2n nodes; `adaptive` keeps doubling up to max_nodes.
/// Throws AccuracyError carrying the best estimate on failure.
template <class Weighted, class Smooth>
QuadResult cut_integral(Weighted&& weighted, Smooth&& smooth, const QuadSpec& spec) {
    if (spec.n_nodes < 8) throw ConfigError("cut_integral: n_nodes must be >= 8");
    if (!(spec.tol > 0.0)) throw ConfigError("cut_integral: tol must be positive");
    int n = spec.n_nodes;
    double coarse = detail::cut_sum(cut_rule(n), weighted, smooth);
    for (;;) {
        const double fine = detail::cut_sum(cut_rule(2 * n), weighted, smooth);
        const double err = std::abs(fine - coarse);
        if (err <= spec.tol) return {fine, err, 2 * n};
        if (spec.method == QuadMethod::chebyshev || 4 * n > spec.max_nodes)
            throw AccuracyError("cut_integral: tolerance not reached", fine, err);
        n *= 2;
        coarse = fine;
    }
}

// Boundary terms of the Bromwich route. `image` is x + x0; each returns the
// regular density including the e^{-t/2T} damping and Theta(ct - image).
QuadResult h_abs_eval(double t, double image, const Medium& m, const QuadSpec& spec = {});
QuadResult h_rad_eval(double t, double image, double eta, const Medium& m, const QuadSpec& spec = {});
QuadResult h_back_eval(double t, double image, double kappa, const Medium& m, const QuadSpec& spec = {});

/// Residue of the real pole of the backreaction transform, present only
/// when c kappa > alpha; zero otherwise.
double h_back_pole_term(double t, double image, double kappa, const Medium& m);

/// Denominator c^2 kappa^2 + (alpha/2)(alpha - 2 c kappa)(1 + xi) of the
/// backreaction integrand.
double backreaction_denominator(double xi, double kappa, const Medium& m);

/// p_free + boundary term via the branch-cut integrals (reflecting uses the
/// closed image f0). Backreaction with beta != 1: UnsupportedRegime.
GfValue eval_gf(const Query& q, const BoundaryRegime& bc, const Medium& m, const QuadSpec& spec = {});

}  // namespace telegf
