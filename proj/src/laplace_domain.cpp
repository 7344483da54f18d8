#include "telegf/laplace_domain.hpp"

#include <algorithm>
#include <cmath>

namespace telegf {

namespace {

constexpr double kPi = 3.14159265358979323846;

// R = sqrt(s (s + alpha)) on the principal sheet, cut along [-alpha, 0]
cplx big_r(cplx s, double a) { return std::sqrt(s) * std::sqrt(s + a); }

// R - s = alpha s / (R + s), free of cancellation for large |s|
cplx r_minus_s(cplx s, cplx r, double a) { return a * s / (r + s); }

void check_off_cut(cplx s, const Medium& m) {
    const double a = m.alpha();
    const double re = std::clamp(s.real(), -a, 0.0);
    if (std::abs(s - cplx(re, 0.0)) < 1e-12 * a)
        throw DomainError("laplace: s lies on the branch cut [-alpha, 0]");
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) throw DomainError("laplace: s must be finite");
}

void check_regime(const BoundaryRegime& bc) {
    bc.validate();
    if (bc.kind == Boundary::backreaction && bc.beta != 1.0)
        throw UnsupportedRegime("laplace: backreaction is only available for beta = 1");
}

// effective absorption probability of a non-backreaction wall
double wall_beta(const BoundaryRegime& bc) {
    switch (bc.kind) {
        case Boundary::absorbing: return 1.0;
        case Boundary::reflecting: return 0.0;
        default: return bc.beta;
    }
}

// (s + alpha) / (2 c R) = sqrt((s + alpha)/s) / (2c)
cplx spread(cplx s, double a, double c) { return std::sqrt(s + a) / (std::sqrt(s) * 2.0 * c); }

// minus Omega written in the unshifted variable, [(2 - beta) R - beta (s + alpha)] / [...]
cplx minus_omega_unshifted(double beta, cplx s, cplx r, double a) {
    const cplx sa = s + a;
    const cplx num = 2.0 * (1.0 - beta) * r - beta * a * sa / (sa + r);
    return num / (beta * sa + (2.0 - beta) * r);
}

// (R - s - c kappa) / (R + s + c kappa): the bracket of A(s) after
// multiplying numerator and denominator by s / R
cplx back_ratio(double ck, cplx s, cplx r, double a) { return (r_minus_s(s, r, a) - ck) / (r + s + ck); }

}  // namespace

cplx f0_laplace(cplx s_shifted, double x, const Medium& m) {
    const double a = m.alpha(), c = m.c();
    const cplx s = s_shifted - 0.5 * a;
    check_off_cut(s, m);
    const cplx r = big_r(s, a);
    return spread(s, a, c) * std::exp(-std::abs(x) * r / c);
}

cplx omega(double beta, cplx s_shifted, const Medium& m) {
    if (!(beta >= 0.0 && beta <= 1.0)) throw DomainError("omega: beta must lie in [0, 1]");
    const double a = m.alpha();
    const cplx s = s_shifted - 0.5 * a;
    check_off_cut(s, m);
    return -minus_omega_unshifted(beta, s, big_r(s, a), a);
}

cplx backreaction_amplitude(double kappa, double x0, cplx s, const Medium& m) {
    if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw DomainError("backreaction_amplitude: kappa must be >= 0");
    check_off_cut(s, m);
    const double a = m.alpha(), c = m.c();
    const cplx r = big_r(s, a);
    return -spread(s, a, c) * back_ratio(c * kappa, s, r, a) * std::exp(-x0 * r / c);
}

cplx gf_laplace(const BoundaryRegime& bc, const Medium& m, double x, double x0, cplx s) {
    check_regime(bc);
    check_query({x, x0, 1.0}, bc);
    check_off_cut(s, m);
    const double a = m.alpha(), c = m.c();
    const cplx r = big_r(s, a);
    cplx value = spread(s, a, c) * std::exp(-std::abs(x - x0) * r / c);
    switch (bc.kind) {
        case Boundary::free: break;
        case Boundary::backreaction:
            value += backreaction_amplitude(bc.kappa, x0, s, m) * std::exp(-x * r / c);
            break;
        default:
            value += minus_omega_unshifted(wall_beta(bc), s, r, a) * spread(s, a, c) * std::exp(-(x + x0) * r / c);
    }
    return value;
}

std::vector<DelayedTerm> delayed_terms(const BoundaryRegime& bc, const Medium& m, double x, double x0) {
    check_regime(bc);
    check_query({x, x0, 1.0}, bc);
    const double a = m.alpha(), c = m.c();
    std::vector<DelayedTerm> terms;

    // free front: (s + alpha)/(2cR) e^{-d (R - s)} = e^{-a d/2}/(2c) [1 + (a/2 + a^2 d/8)/s + O(s^-2)]
    {
        const double d = std::abs(x - x0) / c;
        const double w = std::exp(-0.5 * a * d) / (2.0 * c);
        const double j = w * (0.5 * a + a * a * d / 8.0);
        terms.push_back({d, w, j, [=](cplx s) {
                             const cplx r = big_r(s, a);
                             return spread(s, a, c) * std::exp(-d * r_minus_s(s, r, a)) - w - j / s;
                         }});
    }
    if (!bc.has_wall()) return terms;

    const double d = (x + x0) / c;
    const double damp = std::exp(-0.5 * a * d) / (2.0 * c);
    if (bc.kind == Boundary::backreaction) {
        // A(s) e^{-xR/c} e^{sd} -> -damp (a - 2 c kappa) / (4 s)
        const double ck = c * bc.kappa;
        const double j = -damp * (a - 2.0 * ck) / 4.0;
        terms.push_back({d, 0.0, j, [=](cplx s) {
                             const cplx r = big_r(s, a);
                             return -spread(s, a, c) * back_ratio(ck, s, r, a) * std::exp(-d * r_minus_s(s, r, a)) -
                                    j / s;
                         }});
        return terms;
    }
    // -Omega -> eta - a beta (2 - beta) / (4 s), eta = 1 - beta
    const double beta = wall_beta(bc);
    const double eta = 1.0 - beta;
    const double w = eta * damp;
    const double j = damp * (eta * (0.5 * a + a * a * d / 8.0) - a * beta * (2.0 - beta) / 4.0);
    terms.push_back({d, w, j, [=](cplx s) {
                         const cplx r = big_r(s, a);
                         return minus_omega_unshifted(beta, s, r, a) * spread(s, a, c) *
                                    std::exp(-d * r_minus_s(s, r, a)) -
                                w - j / s;
                     }});
    return terms;
}

namespace {

// Fourier series on the line Re s = margin/t, Euler (binomial) averaging of
// the partial sums S_n .. S_{n+11}
double euler_sum(const std::function<cplx(cplx)>& F, double t, int n, double margin) {
    constexpr int kM = 11;
    const double sigma = margin / t;
    const double h = kPi / t;
    double partial = 0.5 * F(cplx(sigma, 0.0)).real();
    for (int k = 1; k < n; ++k) partial += (k % 2 ? -1.0 : 1.0) * F(cplx(sigma, k * h)).real();
    double binom = 1.0, acc = 0.0;
    for (int j = 0; j <= kM; ++j) {
        const int k = n + j;
        partial += (k % 2 ? -1.0 : 1.0) * F(cplx(sigma, k * h)).real();
        acc += binom * partial;
        binom = binom * (kM - j) / (j + 1);
    }
    return std::exp(margin) / t * acc / double(1 << kM);
}

// fixed Talbot contour s(theta) = r theta (cot theta + i), r = 2M/(5t)
double talbot_sum(const std::function<cplx(cplx)>& F, double t, int n) {
    const double r = 2.0 * n / (5.0 * t);
    double acc = 0.5 * std::exp(r * t) * F(cplx(r, 0.0)).real();
    for (int k = 1; k < n; ++k) {
        const double th = k * kPi / n;
        const double cot = std::cos(th) / std::sin(th);
        const cplx s(r * th * cot, r * th);
        const double sig = th + (th * cot - 1.0) * cot;
        acc += (std::exp(t * s) * F(s) * cplx(1.0, sig)).real();
    }
    return r / n * acc;
}

}  // namespace

InversionResult invert_laplace(const std::function<cplx(cplx)>& F, double t, const InversionSpec& spec) {
    if (spec.n_terms < 16) throw ConfigError("invert_laplace: n_terms must be >= 16");
    if (!(spec.margin > 0.0)) throw ConfigError("invert_laplace: margin must be positive");
    if (!(spec.tol > 0.0)) throw ConfigError("invert_laplace: tol must be positive");
    if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("invert_laplace: t must be positive");
    const int n = spec.n_terms, coarse = (3 * n) / 4;
    double fine_v, coarse_v;
    if (spec.method == InversionMethod::euler) {
        fine_v = euler_sum(F, t, n, spec.margin);
        coarse_v = euler_sum(F, t, coarse, spec.margin);
    } else {
        fine_v = talbot_sum(F, t, n);
        coarse_v = talbot_sum(F, t, coarse);
    }
    const double err = std::abs(fine_v - coarse_v);
    if (!std::isfinite(fine_v) || err > spec.tol)
        throw AccuracyError("invert_laplace: no convergence", fine_v, err);
    return {fine_v, err};
}

double exclusion_radius(const Medium& m, const InversionSpec& spec) { return 5.0 / (m.alpha() * spec.n_terms); }

InversionResult invert_gf(const Query& q, const BoundaryRegime& bc, const Medium& m, const InversionSpec& spec) {
    check_query(q, bc);
    const double eps = exclusion_radius(m, spec);
    InversionResult out;
    for (const DelayedTerm& term : delayed_terms(bc, m, q.x, q.x0)) {
        const double tau = q.t - term.delay;
        if (std::abs(tau) < eps) throw DomainError("invert_gf: t is within the exclusion radius of a front");
        if (tau < 0.0) continue;
        const InversionResult r = invert_laplace(term.stripped, tau, spec);
        out.value += term.jump + r.value;
        out.error += r.error;
    }
    return out;
}

}  // namespace telegf
