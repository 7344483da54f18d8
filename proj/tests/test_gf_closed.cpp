#include "doctest.h"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <random>
#include <vector>

#include "bessel_oracle.hpp"
#include "telegf/errors.hpp"
#include "telegf/gf_closed.hpp"

using namespace telegf;
using telegf::testing::bessel_i_oracle;

namespace {

const Medium unit(1.0, 1.0);

// Formula-level oracles built on the extended-precision Bessel series.
double f0_oracle(double t, double x, double c, double T) {
    const double u = std::sqrt(c * c * t * t - x * x) / (2 * c * T);
    const double ratio = u > 0 ? bessel_i_oracle(1, u) / u : 0.5;
    return (bessel_i_oracle(0, u) + t / (2 * T) * ratio) / (4 * c * T);
}

double f1_oracle(double t, double x, double c, double T) {
    const double u = std::sqrt(c * c * t * t - x * x) / (2 * c * T);
    const double r = (c * t - x) / (c * t + x);
    return (bessel_i_oracle(0, u) + 2 * std::sqrt(r) * bessel_i_oracle(1, u) +
            r * bessel_i_oracle(2, u)) /
           (8 * c * T);
}

double integrate(const std::vector<double>& breaks, auto&& f) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i + 1] <= breaks[i]) continue;
        total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            f, breaks[i], breaks[i + 1], 15, 1e-13);
    }
    return total;
}

}  // namespace

TEST_CASE("lightcone_u") {
    CHECK(lightcone_u(2, 1, unit) == doctest::Approx(0.8660254).epsilon(1e-7));
    CHECK(lightcone_u(2, 2, unit) == 0.0);
    CHECK(lightcone_u(2, 0, unit) == 1.0);
    CHECK_THROWS_AS(lightcone_u(1, 2, unit), DomainError);
}

TEST_CASE("f0_eval") {
    const GfValue inside = f0_eval(2, 1, unit);
    CHECK(inside.regular == doctest::Approx(0.436209).epsilon(1e-5));
    CHECK(inside.regular == doctest::Approx(f0_oracle(2, 1, 1, 1)).epsilon(1e-12));
    CHECK(inside.deltas.empty());

    const GfValue outside = f0_eval(1, 2, unit);
    CHECK(outside.regular == 0.0);
    CHECK(outside.deltas.empty());

    const GfValue cone = f0_eval(2, 2, unit);
    REQUIRE(cone.deltas.size() == 1);
    CHECK(cone.deltas[0].location == 2.0);
    CHECK(cone.deltas[0].weight == 0.5);
    // interior limit: [I_0(0) + t/(2T) * 1/2] / (4cT)
    CHECK(cone.regular == doctest::Approx((1.0 + 0.5) / 4.0));
}

TEST_CASE("f1_eval and gn_eval") {
    CHECK(f1_eval(2, 1, unit) == doctest::Approx(0.222261).epsilon(1e-5));
    CHECK(f1_eval(2, 1, unit) == doctest::Approx(f1_oracle(2, 1, 1, 1)).epsilon(1e-12));
    CHECK(f1_eval(1, 2, unit) == 0.0);
    CHECK(f1_eval(2, 0, unit) == doctest::Approx(0.316516).epsilon(1e-5));

    CHECK(gn_eval(0, 2, 1, unit) == doctest::Approx(1.196474).epsilon(1e-6));
    CHECK(gn_eval(1, 2, 1, unit) == doctest::Approx(0.274181).epsilon(1e-5));
    CHECK(gn_eval(1, 2, 1, unit) ==
          doctest::Approx(std::sqrt(1.0 / 3.0) * bessel_i_oracle(1, std::sqrt(0.75))).epsilon(1e-12));
    CHECK(gn_eval(5, 1, 2, unit) == 0.0);
}

TEST_CASE("cn_coeff") {
    CHECK(cn_coeff(0, 0.3) == 1.0);
    CHECK(cn_coeff(1, 0.5) == 3.5);
    CHECK(cn_coeff(2, 0.5) == doctest::Approx(1.5 * 2.5 + 1.0));
    CHECK(cn_coeff(3, 0.5) == doctest::Approx(3.375));
    CHECK(cn_coeff(5, 0.5) == doctest::Approx(3.375 * 0.25));
    CHECK_THROWS_AS(cn_coeff(2, 1.5), DomainError);
    CHECK_THROWS_AS(cn_coeff(2, -0.1), DomainError);
}

TEST_CASE("damped kernels match the undamped ones") {
    for (double t : {0.5, 2.0, 7.0}) {
        for (double x : {0.0, 0.3 * t, 0.9 * t}) {
            const double e = std::exp(-t / 2);
            CHECK(f0_regular_damped(t, x, unit) == doctest::Approx(e * f0_eval(t, x, unit).regular).epsilon(1e-13));
            CHECK(f1_damped(t, x, unit) == doctest::Approx(e * f1_eval(t, x, unit)).epsilon(1e-13));
        }
    }
}

TEST_CASE("eval_closed_gf anchors") {
    const Query q{0.5, 0.5, 2.0};
    const double e = std::exp(-1.0);
    const double f0_at_0 = f0_oracle(2, 0, 1, 1);
    CHECK(f0_at_0 == doctest::Approx(0.457806).epsilon(1e-6));

    const GfValue abs = eval_closed_gf(q, BoundaryRegime::absorbing(), unit);
    CHECK(abs.regular == doctest::Approx(0.086652).epsilon(1e-5));
    CHECK(abs.regular == doctest::Approx(e * (f0_at_0 - f1_oracle(2, 1, 1, 1))).epsilon(1e-12));

    const GfValue ref = eval_closed_gf(q, BoundaryRegime::reflecting(), unit);
    CHECK(ref.regular == doctest::Approx(0.328890).epsilon(1e-5));
    CHECK(ref.regular == doctest::Approx(e * (f0_at_0 + f0_oracle(2, 1, 1, 1))).epsilon(1e-12));
    // reflected packet at ct - x0 = 1.5
    bool image = false;
    for (auto d : ref.deltas) image |= (d.location == 1.5 && d.weight == doctest::Approx(0.5 * e));
    CHECK(image);

    CHECK_THROWS_AS(eval_closed_gf(q, BoundaryRegime::backreaction(1.0), unit), UnsupportedRegime);
    CHECK_THROWS_AS(eval_closed_gf({-0.1, 0.5, 1.0}, BoundaryRegime::absorbing(), unit), DomainError);
}

TEST_CASE("radiation endpoints coincide with absorbing and reflecting") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> pos(0.0, 3.0), time(0.0, 4.0);
    for (int i = 0; i < 100; ++i) {
        const Query q{pos(rng), pos(rng), time(rng)};
        const GfValue r1 = eval_closed_gf(q, BoundaryRegime::radiation(1.0), unit);
        const GfValue a = eval_closed_gf(q, BoundaryRegime::absorbing(), unit);
        CHECK(r1.regular == doctest::Approx(a.regular).epsilon(1e-14));
        CHECK(r1.delta_mass() == doctest::Approx(a.delta_mass()));
        const GfValue r0 = eval_closed_gf(q, BoundaryRegime::radiation(0.0), unit);
        const GfValue f = eval_closed_gf(q, BoundaryRegime::reflecting(), unit);
        CHECK(r0.regular == doctest::Approx(f.regular).epsilon(1e-14));
        CHECK(r0.delta_mass() == doctest::Approx(f.delta_mass()));
    }
}

TEST_CASE("property: source symmetry x <-> x0") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pos(0.0, 3.0), time(0.0, 5.0), beta(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double x = pos(rng), x0 = pos(rng), t = time(rng);
        for (auto bc : {BoundaryRegime::free_space(), BoundaryRegime::absorbing(),
                        BoundaryRegime::reflecting(), BoundaryRegime::radiation(beta(rng))}) {
            const double a = eval_closed_gf({x, x0, t}, bc, unit).regular;
            const double b = eval_closed_gf({x0, x, t}, bc, unit).regular;
            CHECK(a == doctest::Approx(b).epsilon(1e-13));
        }
    }
}

TEST_CASE("property: support is the union of the light cones") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> pos(0.0, 6.0), time(0.0, 3.0);
    for (int i = 0; i < 500; ++i) {
        const double x = pos(rng), x0 = pos(rng), t = time(rng);
        if (std::abs(x - x0) > t && x + x0 > t) {
            for (auto bc : {BoundaryRegime::free_space(), BoundaryRegime::absorbing(),
                            BoundaryRegime::reflecting(), BoundaryRegime::radiation(0.4)})
                CHECK(eval_closed_gf({x, x0, t}, bc, unit).regular == 0.0);
        }
    }
}

TEST_CASE("normalization: free and reflecting carry unit mass") {
    for (double t : {0.3, 1.0, 2.5, 6.0}) {
        const double x0 = 1.0;
        const GfValue probe_free = eval_closed_gf({x0, x0, t}, BoundaryRegime::free_space(), unit);
        const double free_mass =
            integrate({x0 - t, x0, x0 + t}, [&](double x) {
                return eval_closed_gf({x, x0, t}, BoundaryRegime::free_space(), unit).regular;
            }) +
            probe_free.delta_mass();
        CHECK(free_mass == doctest::Approx(1.0).epsilon(1e-6));

        std::vector<double> br{std::max(0.0, x0 - t), x0, x0 + t};
        if (t > x0) br.insert(br.begin() + 1, t - x0);
        std::sort(br.begin(), br.end());
        const GfValue probe_ref = eval_closed_gf({x0, x0, t}, BoundaryRegime::reflecting(), unit);
        const double ref_mass = integrate(br, [&](double x) {
                                    return eval_closed_gf({x, x0, t}, BoundaryRegime::reflecting(), unit).regular;
                                }) +
                                probe_ref.delta_mass();
        CHECK(ref_mass == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("second moment of the free GF") {
    const double t = 2.0, x0 = 0.0;
    const double regular = integrate({-t, 0.0, t}, [&](double x) {
        return x * x * eval_closed_gf({x, x0, t}, BoundaryRegime::free_space(), unit).regular;
    });
    const double ballistic = std::exp(-t / 2) * t * t;  // two half-weights at +-ct
    const double expected = 2.0 * (t - (1.0 - std::exp(-t)));
    CHECK(expected == doctest::Approx(2.270670).epsilon(1e-6));
    CHECK(regular + ballistic == doctest::Approx(expected).epsilon(1e-4));
}

TEST_CASE("diffusion limit: c = 100, T = 1e-4") {
    const Medium m(100.0, 1e-4);
    const double D = m.diffusion(), t = 1.0, x0 = 5.0;
    const double width = 3.0 * std::sqrt(2.0 * D * t);
    for (double dx = -width; dx <= width; dx += width / 20) {
        const double gauss = std::exp(-dx * dx / (4 * D * t)) / std::sqrt(4 * M_PI * D * t);
        const double p = eval_closed_gf({x0 + dx, x0, t}, BoundaryRegime::free_space(), m).regular;
        CHECK(std::abs(p - gauss) < 0.02 * gauss);
    }
}

TEST_CASE("wave limit: ballistic weight tends to one as T grows") {
    double prev = 0.0;
    for (double T : {1.0, 10.0, 100.0, 1e4}) {
        const GfValue v = eval_closed_gf({0.0, 0.0, 1.0}, BoundaryRegime::free_space(), Medium(1.0, T));
        CHECK(v.delta_mass() == doctest::Approx(std::exp(-0.5 / T)));
        CHECK(v.delta_mass() > prev);
        prev = v.delta_mass();
    }
    CHECK(prev > 0.9999);
}

TEST_CASE("radiation series: doubling n_max stays within the reported tail bound") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> pos(0.0, 2.0), time(0.0, 6.0), beta(0.05, 0.95);
    for (int i = 0; i < 100; ++i) {
        const Query q{pos(rng), pos(rng), time(rng)};
        const auto bc = BoundaryRegime::radiation(beta(rng));
        for (int n : {4, 16, 64}) {
            const GfValue lo = eval_closed_gf(q, bc, unit, {n, 1.0});
            const GfValue hi = eval_closed_gf(q, bc, unit, {2 * n, 1.0});
            CHECK(std::abs(hi.regular - lo.regular) <= lo.error_estimate * (1 + 1e-12) + 1e-15);
        }
    }
    // slow convergence near beta = 0 and x + x0 = 0 triggers the warning
    const GfValue slow = eval_closed_gf({0.0, 0.0, 3.0}, BoundaryRegime::radiation(0.01), unit, {8, 1e-12});
    CHECK(slow.accuracy_warning);
}
