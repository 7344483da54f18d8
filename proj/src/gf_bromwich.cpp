#include "telegf/gf_bromwich.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "telegf/gf_closed.hpp"

namespace telegf {
namespace {

CutNode node_at(double theta) {
    const double half_s = std::sin(0.5 * theta);
    const double half_c = std::cos(0.5 * theta);
    return {std::cos(theta), 2.0 * half_s * half_s, 2.0 * half_c * half_c, std::sin(theta)};
}

// Gauss-Legendre on [-1, 1] by Newton iteration on the three-term recurrence.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(std::size_t(n));
    w.resize(std::size_t(n));
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        const double weight = 2.0 / ((1.0 - z * z) * dp * dp);
        x[std::size_t(i)] = -z;
        x[std::size_t(n - 1 - i)] = z;
        w[std::size_t(i)] = w[std::size_t(n - 1 - i)] = weight;
    }
}

std::unique_ptr<CutRule> build_rule(int n) {
    auto rule = std::make_unique<CutRule>();
    rule->chebyshev.reserve(std::size_t(n));
    for (int j = 0; j < n; ++j) rule->chebyshev.push_back(node_at((j + 0.5) * M_PI / n));
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    for (int j = 0; j < n; ++j) {
        const double theta = 0.5 * M_PI * (1.0 + x[std::size_t(j)]);
        const CutNode node = node_at(theta);
        rule->legendre.push_back(node);
        rule->legendre_weights.push_back(0.5 * M_PI * w[std::size_t(j)] * node.root);
    }
    return rule;
}

// alpha Theta / (4 pi c), with the damping folded into the integrand.
double cut_prefactor(const Medium& m) { return kCutSign * m.alpha() / (4.0 * M_PI * m.c()); }

bool image_reached(double t, double image, const Medium& m) { return m.c() * t >= image; }

QuadSpec scaled_spec(const QuadSpec& spec, const Medium& m) {
    QuadSpec s = spec;
    s.tol = spec.tol / std::abs(cut_prefactor(m));
    return s;
}

QuadResult finish(QuadResult raw, const Medium& m) {
    const double p = cut_prefactor(m);
    return {p * raw.value, std::abs(p) * raw.error, raw.nodes};
}

void check_args(double t, double image) {
    if (!(t >= 0.0)) throw DomainError("h_eval: t must be >= 0");
    if (!(image >= 0.0)) throw DomainError("h_eval: x + x0 must be >= 0");
}


// cos(w sqrt(y)) and sin(w sqrt(y))/sqrt(y), continued to y < 0 (points off
// the cut) as cosh and sinh; both are entire in y.
std::pair<double, double> cos_sinc(double w, double y) {
    if (y > 0.0) {
        const double r = std::sqrt(y);
        return {std::cos(w * r), std::sin(w * r) / r};
    }
    if (y < 0.0) {
        const double r = std::sqrt(-y);
        return {std::cosh(w * r), std::sinh(w * r) / r};
    }
    return {1.0, w};
}

// int_{-1}^{1} numerator(xi) / (denominator(xi) sqrt(1 - xi^2)) dxi where the
// denominator is linear, slope * (xi - xi_p). When the root xi_p comes close
// to [-1, 1] the integrand develops a layer of width |xi_p| - 1; the pole
// part is then integrated exactly,
//   int dxi / ((xi - xi_p) sqrt(1 - xi^2)) = -sign(xi_p) pi / sqrt(xi_p^2 - 1),
// and only the analytic divided difference goes through the quadrature.
// The numerator carries e^{-damping (1 + xi)}, which grows past xi = -1; once
// that growth at the pole exceeds e^4 the damping layer is narrower than the
// pole layer, the plain rule converges and subtraction would only cancel.
template <class Numerator, class Denominator>
QuadResult rational_cut(Numerator& numerator, Denominator& denominator, double slope, double pole_one_plus,
                        double pole_one_minus, double damping, const QuadSpec& spec) {
    auto zero = [](const CutNode&) { return 0.0; };
    const double pole_xi = pole_one_plus - 1.0;
    const bool near = std::abs(pole_xi) < 1.5 && (pole_xi > 0.0 || -damping * pole_one_plus <= 4.0);
    if (slope == 0.0 || !near) {
        auto plain = [&](const CutNode& n) { return numerator(n) / denominator(n); };
        return cut_integral(plain, zero, spec);
    }
    const CutNode pole{pole_xi, pole_one_minus, pole_one_plus, std::nan("")};
    const double at_pole = numerator(pole);
    const bool left = pole_xi < 0.0;
    auto distance = [&](const CutNode& n) {
        return left ? n.one_plus - pole_one_plus : pole_one_minus - n.one_minus;
    };
    auto subtracted = [&](const CutNode& n) { return (numerator(n) - at_pole) / (slope * distance(n)); };
    QuadResult out = cut_integral(subtracted, zero, spec);
    const double span = std::sqrt(-pole_one_minus * pole_one_plus);
    out.value += at_pole * (left ? 1.0 : -1.0) * M_PI / (span * slope);
    return out;
}

}  // namespace

const CutRule& cut_rule(int n) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<CutRule>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[n];
    if (!slot) slot = build_rule(n);
    return *slot;
}

QuadResult h_abs_eval(double t, double image, const Medium& m, const QuadSpec& spec) {
    check_args(t, image);
    if (!image_reached(t, image, m)) return {};
    const double a = m.alpha();
    const double half_ka = 0.5 * (image / m.c()) * a;
    const double half_at = 0.5 * a * t;
    auto weighted = [&](const CutNode& n) {
        return std::exp(-half_at * n.one_plus) * n.one_minus * n.xi * std::cos(half_ka * n.root);
    };
    auto smooth = [&](const CutNode& n) {
        return std::exp(-half_at * n.one_plus) * n.one_minus * std::sin(half_ka * n.root);
    };
    return finish(cut_integral(weighted, smooth, scaled_spec(spec, m)), m);
}

QuadResult h_rad_eval(double t, double image, double eta, const Medium& m, const QuadSpec& spec) {
    check_args(t, image);
    if (!(eta >= 0.0 && eta < 1.0))
        throw DomainError("h_rad_eval: eta = 1 - beta must lie in [0, 1); use the reflecting closed form");
    if (!image_reached(t, image, m)) return {};
    const double half_ka = 0.5 * (image / m.c()) * m.alpha();
    const double half_at = 0.5 * m.alpha() * t;
    const double e2 = eta * eta;
    auto numerator = [&](const CutNode& n) {
        const auto [cosine, sinc] = cos_sinc(half_ka, n.one_minus * n.one_plus);
        return std::exp(-half_at * n.one_plus) * n.one_minus *
               ((2.0 * eta + (1.0 + e2) * n.xi) * cosine + (1.0 - e2) * n.one_minus * n.one_plus * sinc);
    };
    // 1 + eta^2 + 2 eta xi = (1 - eta)^2 + 2 eta (1 + xi)
    auto denominator = [&](const CutNode& n) { return (1.0 - eta) * (1.0 - eta) + 2.0 * eta * n.one_plus; };
    const double pole_one_plus = eta > 0.0 ? -(1.0 - eta) * (1.0 - eta) / (2.0 * eta) : -HUGE_VAL;
    return finish(rational_cut(numerator, denominator, 2.0 * eta, pole_one_plus, 2.0 - pole_one_plus, half_at,
                               scaled_spec(spec, m)),
                  m);
}

double backreaction_denominator(double xi, double kappa, const Medium& m) {
    const double a = m.alpha(), ck = m.c() * kappa;
    return ck * ck + 0.5 * a * (a - 2.0 * ck) * (1.0 + xi);
}

double h_back_pole_term(double t, double image, double kappa, const Medium& m) {
    const double a = m.alpha(), ck = m.c() * kappa;
    const double delta = ck - a;
    if (!(delta > 1e-12 * a) || !image_reached(t, image, m)) return 0.0;
    const double g = 2.0 * ck - a;
    const double r = delta / g;
    return 2.0 * kappa * r * r * r * std::exp(-(ck * ck * t - kappa * delta * image) / g);
}

QuadResult h_back_eval(double t, double image, double kappa, const Medium& m, const QuadSpec& spec) {
    check_args(t, image);
    if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw DomainError("h_back_eval: kappa must be >= 0");
    if (!image_reached(t, image, m)) return {};
    if (kappa == 0.0) return h_abs_eval(t, image, m, spec);
    const double a = m.alpha(), ck = m.c() * kappa;
    const double half_ka = 0.5 * (image / m.c()) * a;
    const double half_at = 0.5 * a * t;
    const bool literal = spec.formula == CutFormula::paper_literal;
    const double third = literal ? -ck : -a * ck;
    const double slope = 0.5 * a * (a - 2.0 * ck);
    const double delta = ck - a;
    const bool cancel = std::abs(delta) <= 1e-12 * a;

    auto pi_term = [&](const CutNode& n) {
        return 0.5 * a * a * n.xi * n.xi + slope * n.xi + third + ck * ck;
    };
    auto gamma_term = [&](const CutNode& n) { return 0.5 * a * a * n.xi + slope; };
    // at c kappa = alpha the denominator is (alpha^2/2)(1 - xi) and the
    // explicit (1 - xi) of the numerator cancels against it
    auto numerator = [&](const CutNode& n) {
        const auto [cosine, sinc] = cos_sinc(half_ka, n.one_minus * n.one_plus);
        const double bracket = pi_term(n) * cosine + gamma_term(n) * n.one_minus * n.one_plus * sinc;
        return std::exp(-half_at * n.one_plus) * (cancel ? 2.0 / (a * a) : n.one_minus) * bracket;
    };
    // c^2 kappa^2 + slope (1 + xi), written around xi = 1 where it may be tiny
    auto denominator = [&](const CutNode& n) {
        if (cancel) return 1.0;
        return delta * delta - slope * n.one_minus;
    };
    // 1 - xi_p = delta^2 / slope keeps its digits when c kappa is near alpha
    const bool no_pole = cancel || slope == 0.0;
    const double pole_one_plus = no_pole ? -HUGE_VAL : -ck * ck / slope;
    const double pole_one_minus = no_pole ? HUGE_VAL : delta * delta / slope;
    QuadResult out = finish(rational_cut(numerator, denominator, no_pole ? 0.0 : slope, pole_one_plus, pole_one_minus,
                                         half_at, scaled_spec(spec, m)),
                            m);
    if (!literal) out.value += h_back_pole_term(t, image, kappa, m);
    return out;
}

GfValue eval_gf(const Query& q, const BoundaryRegime& bc, const Medium& m, const QuadSpec& spec) {
    check_query(q, bc);
    bc.validate();
    GfValue out;
    out.deltas = ballistic_deltas(q.x0, q.t, bc, m);
    const double direct = f0_regular_damped(q.t, std::abs(q.x - q.x0), m);
    const double image = q.x + q.x0;
    QuadResult boundary;
    switch (bc.kind) {
        case Boundary::free:
            break;
        case Boundary::absorbing:
            boundary = h_abs_eval(q.t, image, m, spec);
            break;
        case Boundary::reflecting:
            boundary.value = f0_regular_damped(q.t, image, m);
            break;
        case Boundary::radiation:
            if (bc.beta == 0.0) boundary.value = f0_regular_damped(q.t, image, m);
            else boundary = h_rad_eval(q.t, image, 1.0 - bc.beta, m, spec);
            break;
        case Boundary::backreaction:
            if (bc.beta != 1.0)
                throw UnsupportedRegime("analytic backreaction GF exists only for beta = 1; use the PDE oracle");
            boundary = h_back_eval(q.t, image, bc.kappa, m, spec);
            break;
    }
    out.regular = direct + boundary.value;
    out.error_estimate = boundary.error;
    return out;
}

}  // namespace telegf
