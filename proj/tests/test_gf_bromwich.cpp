#include "doctest.h"

#include <cmath>
#include <random>

#include "bessel_oracle.hpp"
#include "telegf/gf_bromwich.hpp"
#include "telegf/gf_closed.hpp"

using namespace telegf;
using telegf::testing::bessel_i_oracle;

namespace {
const Medium unit(1.0, 1.0);
auto zero = [](const CutNode&) { return 0.0; };
}  // namespace

TEST_CASE("cut_integral: Chebyshev weight and polynomial") {
    auto one = [](const CutNode&) { return 1.0; };
    CHECK(cut_integral(one, zero, {}).value == doctest::Approx(M_PI).epsilon(1e-14));
    auto square = [](const CutNode& n) { return n.xi * n.xi; };
    CHECK(std::abs(cut_integral(zero, square, {}).value - 2.0 / 3.0) < 1e-12);
}

TEST_CASE("cut_integral: fixed order reports non-convergence with a best estimate") {
    // |xi|^{1/2} has a kink at 0: algebraic convergence only
    auto rough = [](const CutNode& n) { return std::sqrt(std::abs(n.xi)); };
    QuadSpec spec;
    spec.method = QuadMethod::chebyshev;
    spec.tol = 1e-14;
    try {
        cut_integral(zero, rough, spec);
        FAIL("expected AccuracyError");
    } catch (const AccuracyError& e) {
        CHECK(e.best_estimate() == doctest::Approx(4.0 / 3.0).epsilon(1e-4));
        CHECK(e.error_estimate() > 0.0);
    }
    spec.n_nodes = 4;
    CHECK_THROWS_AS(cut_integral(zero, rough, spec), ConfigError);
}

// (1/pi) int e^{-a t xi / 2} cos(a k sqrt(1-xi^2) / 2) / sqrt(1-xi^2) dxi = I_0(a sqrt(t^2-k^2)/2)
double bessel_identity(double a, double t, double k) {
    auto w = [&](const CutNode& n) { return std::exp(-0.5 * a * t * n.xi) * std::cos(0.5 * a * k * n.root); };
    return cut_integral(w, zero, {}).value / M_PI;
}

TEST_CASE("cut_integral reproduces the I_0 integral identity") {
    CHECK(bessel_identity(1, 2, 1) == doctest::Approx(1.196474).epsilon(1e-6));
    for (double a : {0.5, 1.0, 2.0})
        for (double t : {1.0, 2.0, 4.0})
            for (double k : {0.0, 0.5, t / 2}) {
                const double want = bessel_i_oracle(0, 0.5 * a * std::sqrt(t * t - k * k));
                CHECK(std::abs(bessel_identity(a, t, k) - want) <= 1e-8);
            }
}

TEST_CASE("sign constant: calibrate on one point, hold out-of-sample") {
    // calibration point t = 2, x + x0 = 1, c = T = 1
    QuadSpec spec;
    const double raw = h_abs_eval(2.0, 1.0, unit, spec).value / kCutSign;
    const double closed = -std::exp(-1.0) * f1_eval(2.0, 1.0, unit);
    const double calibrated = std::copysign(1.0, closed / raw);
    CHECK(calibrated == kCutSign);
    CHECK(h_abs_eval(2.0, 1.0, unit).value == doctest::Approx(-0.0817652).epsilon(1e-6));

    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> cs(0.3, 3.0), Ts(0.2, 5.0), frac(0.0, 1.0), ts(0.05, 8.0);
    for (int i = 0; i < 199; ++i) {
        const Medium m(cs(rng), Ts(rng));
        const double t = ts(rng);
        const double image = frac(rng) * m.c() * t;
        const double want = -std::exp(-0.5 * t / m.T()) * f1_eval(t, image, m);
        const double got = h_abs_eval(t, image, m).value;
        INFO("c=" << m.c() << " T=" << m.T() << " t=" << t << " image=" << image);
        CHECK(std::abs(got - want) <= std::max(1e-8, 1e-6 * std::abs(want)));
    }
}

TEST_CASE("h_abs_eval anchors") {
    CHECK(h_abs_eval(0.5, 1.0, unit).value == 0.0);
    CHECK(h_abs_eval(2.0, 0.0, unit).value == doctest::Approx(-0.116440).epsilon(1e-5));
    CHECK_THROWS_AS(h_abs_eval(-1.0, 0.0, unit), DomainError);
}

TEST_CASE("h_rad_eval") {
    CHECK(h_rad_eval(2.0, 1.0, 0.0, unit).value == doctest::Approx(h_abs_eval(2.0, 1.0, unit).value).epsilon(1e-12));
    CHECK(h_rad_eval(0.5, 1.0, 0.5, unit).value == 0.0);
    CHECK_THROWS_AS(h_rad_eval(2.0, 1.0, 1.0, unit), DomainError);

    // against the truncated power series, x = x0 = 0.5, t = 2, beta = 0.5
    const double beta = 0.5;
    const Query q{0.5, 0.5, 2.0};
    const double series = eval_closed_gf(q, BoundaryRegime::radiation(beta), unit).regular;
    const double free = eval_closed_gf(q, BoundaryRegime::free_space(), unit).regular;
    CHECK(h_rad_eval(2.0, 1.0, 1.0 - beta, unit).value == doctest::Approx(series - free).epsilon(1e-9));
}

TEST_CASE("h_back_eval") {
    CHECK(h_back_eval(2.0, 1.0, 0.0, unit).value == doctest::Approx(-0.0817652).epsilon(1e-6));
    CHECK(h_back_eval(0.5, 1.0, 3.0, unit).value == 0.0);
    CHECK(std::isfinite(h_back_eval(2.0, 1.0, 1.0, unit).value));

    // frozen from mpmath Talbot inversion of A(s) e^{-x sqrt(s(s+a))/c} (30 digits)
    CHECK(h_back_eval(2.0, 1.0, 1.0, unit).value == doctest::Approx(0.08176519526).epsilon(1e-9));
    CHECK(h_back_eval(2.0, 1.0, 2.0, unit).value == doctest::Approx(0.15329372834).epsilon(1e-9));
    CHECK(h_back_eval(3.0, 0.5, 4.0, unit).value == doctest::Approx(0.141720922087).epsilon(1e-9));
    const Medium fast(1.0, 0.5);
    CHECK(h_back_eval(2.0, 1.0, 1.0, fast).value == doctest::Approx(0.03573411306).epsilon(1e-9));
    CHECK(h_back_eval(2.0, 1.0, 4.0, fast).value == doctest::Approx(0.184637622942).epsilon(1e-9));
    CHECK(h_back_eval(3.0, 0.5, 8.0, fast).value == doctest::Approx(0.205386561755).epsilon(1e-9));
}

TEST_CASE("h_back: the printed Pi term differs once T != 1") {
    QuadSpec literal;
    literal.formula = CutFormula::paper_literal;
    // identical at T = 1 (alpha c kappa == c kappa) below the pole threshold
    CHECK(h_back_eval(2.0, 1.0, 0.5, unit, literal).value ==
          doctest::Approx(h_back_eval(2.0, 1.0, 0.5, unit).value).epsilon(1e-12));
    const Medium fast(1.0, 0.5);
    CHECK(std::abs(h_back_eval(2.0, 1.0, 1.0, fast, literal).value - h_back_eval(2.0, 1.0, 1.0, fast).value) > 0.1);
}

TEST_CASE("pole term vanishes continuously at c kappa = alpha") {
    CHECK(h_back_pole_term(2.0, 1.0, 1.0, unit) == 0.0);
    CHECK(h_back_pole_term(2.0, 1.0, 0.5, unit) == 0.0);
    CHECK(h_back_pole_term(2.0, 1.0, 1.001, unit) < 1e-8);
    CHECK(h_back_pole_term(2.0, 1.0, 2.0, unit) == doctest::Approx(0.0200497).epsilon(1e-5));
    const double below = h_back_eval(2.0, 1.0, 1.0 - 1e-6, unit).value;
    const double at = h_back_eval(2.0, 1.0, 1.0, unit).value;
    const double above = h_back_eval(2.0, 1.0, 1.0 + 1e-6, unit).value;
    CHECK(std::abs(below - at) < 1e-5);
    CHECK(std::abs(above - at) < 1e-5);
}

TEST_CASE("limit chain: eta -> 0 and kappa -> 0 recover the absorbing term") {
    for (double t : {0.5, 1.0, 2.0, 4.0, 8.0})
        for (double frac : {0.0, 0.3, 0.6, 0.95}) {
            const double image = frac * t;
            const double abs = h_abs_eval(t, image, unit).value;
            CHECK(std::abs(h_rad_eval(t, image, 1e-4, unit).value - abs) <= 1e-3);
            CHECK(std::abs(h_back_eval(t, image, 1e-4, unit).value - abs) <= 1e-3);
        }
}

TEST_CASE("backreaction denominator is (c kappa - alpha)^2 at xi = 1 and non-negative") {
    for (double T : {0.5, 1.0, 3.0}) {
        const Medium m(1.3, T);
        for (double kct = 0.0; kct <= 4.0; kct += 0.125) {
            const double kappa = kct / (m.c() * T);
            const double ck = m.c() * kappa;
            CHECK(backreaction_denominator(1.0, kappa, m) ==
                  doctest::Approx((ck - m.alpha()) * (ck - m.alpha())).epsilon(1e-12).scale(1.0));
            CHECK(backreaction_denominator(-1.0, kappa, m) == doctest::Approx(ck * ck));
            for (double xi = -1.0; xi <= 1.0; xi += 1.0 / 64) CHECK(backreaction_denominator(xi, kappa, m) >= -1e-12);
        }
    }
}

TEST_CASE("eval_gf matches the closed form and gates the boundary term") {
    const Query q{0.5, 0.5, 2.0};
    CHECK(eval_gf(q, BoundaryRegime::absorbing(), unit).regular == doctest::Approx(0.086652).epsilon(1e-5));
    CHECK(eval_gf(q, BoundaryRegime::backreaction(0.0), unit).regular ==
          doctest::Approx(eval_gf(q, BoundaryRegime::absorbing(), unit).regular).epsilon(1e-10));
    CHECK_THROWS_AS(eval_gf(q, BoundaryRegime::backreaction(1.0, 0.5), unit), UnsupportedRegime);

    const Query far{3.0, 3.0, 1.0};
    const double free = eval_gf(far, BoundaryRegime::free_space(), unit).regular;
    for (auto bc : {BoundaryRegime::absorbing(), BoundaryRegime::reflecting(), BoundaryRegime::radiation(0.3),
                    BoundaryRegime::backreaction(2.0)})
        CHECK(eval_gf(far, bc, unit).regular == free);
}

TEST_CASE("property: total density stays non-negative") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> pos(0.0, 3.0), time(0.05, 6.0), unit_interval(0.0, 1.0);
    QuadSpec spec;
    for (int i = 0; i < 300; ++i) {
        const Query q{pos(rng), pos(rng), time(rng)};
        const BoundaryRegime bcs[] = {BoundaryRegime::absorbing(), BoundaryRegime::reflecting(),
                                      BoundaryRegime::radiation(unit_interval(rng)),
                                      BoundaryRegime::backreaction(4.0 * unit_interval(rng))};
        for (const auto& bc : bcs) {
            INFO(bc.name() << " x=" << q.x << " x0=" << q.x0 << " t=" << q.t);
            CHECK(eval_gf(q, bc, unit, spec).regular >= -spec.tol);
        }
    }
}

TEST_CASE("near-pole regimes stay on the fixed-tolerance path") {
    // beta -> 0 pushes the radiation pole onto xi = -1
    const Query q{0.5, 0.5, 2.0};
    const double free = eval_closed_gf(q, BoundaryRegime::free_space(), unit).regular;
    SeriesSpec long_series;
    long_series.n_max = 4000;
    for (double beta : {0.1, 0.02}) {
        const double series = eval_closed_gf(q, BoundaryRegime::radiation(beta), unit, long_series).regular;
        CHECK(h_rad_eval(2.0, 1.0, 1.0 - beta, unit).value == doctest::Approx(series - free).epsilon(1e-7));
    }
    // tiny kappa: smooth, first-order approach to the absorbing value
    const double abs = h_abs_eval(2.0, 1.0, unit).value;
    const double d3 = h_back_eval(2.0, 1.0, 1e-3, unit).value - abs;
    const double d6 = h_back_eval(2.0, 1.0, 1e-6, unit).value - abs;
    CHECK(std::abs(d6) < 1e-4);
    CHECK(std::abs(d6) < std::abs(d3));
    // c kappa just either side of alpha
    for (double k : {1.0 - 1e-9, 1.0 + 1e-9, 1.0 - 1e-3, 1.0 + 1e-3})
        CHECK(std::isfinite(h_back_eval(2.0, 1.0, k, unit).value));
}
