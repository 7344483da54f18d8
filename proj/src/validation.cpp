#include "telegf/validation.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <utility>

#include "json.hpp"
#include "telegf/gf_bromwich.hpp"
#include "telegf/gf_closed.hpp"
#include "telegf/laplace_domain.hpp"
#include "telegf/observables.hpp"
#include "telegf/profile.hpp"
#include "telegf/rw_oracle.hpp"
#include "telegf/specfun.hpp"

namespace telegf {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

QuadSpec quad_for(const ValidationOptions& o) {
    QuadSpec q;
    if (o.paper_literal) q.formula = CutFormula::paper_literal;
    return q;
}

CheckResult named(std::string id, std::string title) {
    CheckResult r;
    r.id = std::move(id);
    r.title = std::move(title);
    return r;
}

CheckResult finish(CheckResult r) {
    r.passed = r.comparison == Comparison::at_most ? r.measured <= r.tolerance : r.measured >= r.tolerance;
    return r;
}

// 1. cut quadrature of the I_0 integral identity
CheckResult bessel_identity(const ValidationOptions&) {
    CheckResult r = named("bessel_identity", "cut quadrature reproduces I_0 over the 27-point grid");
    r.tolerance = 1e-8;
    auto zero = [](const CutNode&) { return 0.0; };
    for (double a : {0.5, 1.0, 2.0})
        for (double t : {1.0, 2.0, 4.0})
            for (double k : {0.0, 0.5, t / 2}) {
                auto w = [&](const CutNode& n) { return std::exp(-0.5 * a * t * n.xi) * std::cos(0.5 * a * k * n.root); };
                const double quad = cut_integral(w, zero, {}).value / kPi;
                const double want = specfun::bessel_i(0, 0.5 * a * std::sqrt(t * t - k * k));
                r.measured = std::max(r.measured, std::abs(quad - want));
            }
    r.detail = "max abs error";
    return finish(r);
}

// 2. h_abs against -e^{-t/2T} f1, sign calibrated on a single point
CheckResult closed_vs_bromwich(const ValidationOptions& o) {
    CheckResult r = named("closed_vs_bromwich", "absorbing boundary term: cut integral equals -e^{-t/2T} f1");
    r.tolerance = 1.0;  // measured is the worst ratio error / max(1e-8, 1e-6 |f1|)
    const Medium unit(1.0, 1.0);
    const double raw = h_abs_eval(2.0, 1.0, unit).value / kCutSign;
    const double calibrated = std::copysign(1.0, -f1_damped(2.0, 1.0, unit) / raw);
    if (calibrated != kCutSign) {
        r.measured = HUGE_VAL;
        r.detail = "calibration point disagrees with the compiled sign";
        return finish(r);
    }
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> cs(0.3, 3.0), Ts(0.2, 5.0), frac(0.0, 1.0), ts(0.05, 8.0);
    const int n = o.quick ? 49 : 199;
    for (int i = 0; i < n; ++i) {
        const Medium m(cs(rng), Ts(rng));
        const double t = ts(rng);
        const double image = frac(rng) * m.c() * t;
        const double want = -f1_damped(t, image, m);
        const double got = h_abs_eval(t, image, m).value;
        r.measured = std::max(r.measured, std::abs(got - want) / std::max(1e-8, 1e-6 * std::abs(want)));
    }
    r.detail = "error / max(1e-8, 1e-6 |f1|) at " + std::to_string(n) + " out-of-sample points, sign " + fmt("%+.0f", kCutSign);
    return finish(r);
}

// 3. radiation series against free + cut integral, and the image Dirac weight
CheckResult radiation_consistency(const ValidationOptions& o) {
    CheckResult r = named("radiation_consistency", "radiation series equals p_free + h_rad with matching image front");
    r.tolerance = 1e-5;
    const Medium unit(1.0, 1.0);
    SeriesSpec series;
    series.n_max = 64;
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> pos(0.0, 2.0), ts(0.2, 5.0);
    const int n = o.quick ? 15 : 50;
    for (double beta : {0.25, 0.5, 0.75}) {
        const auto bc = BoundaryRegime::radiation(beta);
        for (int i = 0; i < n; ++i) {
            const Query q{pos(rng), pos(rng), ts(rng)};
            const GfValue s = eval_closed_gf(q, bc, unit, series);
            const double free = eval_closed_gf(q, BoundaryRegime::free_space(), unit).regular;
            const double cut = h_rad_eval(q.t, q.x + q.x0, 1.0 - beta, unit).value;
            r.measured = std::max(r.measured, std::abs(s.regular - (free + cut)));
            const auto fronts = ballistic_deltas(q.x0, q.t, bc, unit);
            r.measured = std::max(r.measured, std::abs(s.delta_mass() - GfValue{0, fronts}.delta_mass()));
        }
    }
    r.detail = std::to_string(3 * n) + " points, n_max = 64";
    return finish(r);
}

// 4. eta -> 0 and kappa -> 0 recover the absorbing term
CheckResult limit_recovery(const ValidationOptions& o) {
    CheckResult r = named("limit_recovery", "h_rad at eta = 1e-4 and h_back at kappa c T = 1e-4 approach h_abs");
    r.tolerance = 1e-3;
    const Medium unit(1.0, 1.0);
    for (double t : {0.5, 1.0, 2.0, 4.0, 8.0})
        for (double frac : {0.0, 0.3, 0.6, 0.95}) {
            const double image = frac * t;
            const double abs = h_abs_eval(t, image, unit).value;
            r.measured = std::max(r.measured, std::abs(h_rad_eval(t, image, 1e-4, unit).value - abs));
            r.measured = std::max(r.measured, std::abs(h_back_eval(t, image, 1e-4, unit, quad_for(o)).value - abs));
        }
    r.detail = "20-point grid";
    return finish(r);
}

// 5. time-domain routes against numerical Laplace inversion
CheckResult laplace_agreement(const ValidationOptions& o) {
    CheckResult r = named("laplace_agreement", "closed and cut-integral routes agree with numerical Laplace inversion");
    r.tolerance = 1e-4;
    const std::vector<Medium> media{Medium(1.0, 1.0), Medium(1.0, 0.5)};
    std::vector<BoundaryRegime> regimes{BoundaryRegime::absorbing(), BoundaryRegime::reflecting(),
                                        BoundaryRegime::radiation(0.5)};
    const int n = o.quick ? 10 : 30;
    InversionSpec inv;
    inv.tol = 1e-6;

    // off-cone sample points, per medium
    auto sample = [&](const Medium& m, unsigned seed) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> pos(0.0, 2.0), ts(0.3, 6.0);
        const double guard = 2.0 * exclusion_radius(m, inv) * m.c();
        std::vector<Query> pts;
        while (int(pts.size()) < n) {
            const Query q{pos(rng), pos(rng), ts(rng)};
            const double ct = m.c() * q.t;
            if (std::abs(ct - std::abs(q.x - q.x0)) < guard || std::abs(ct - (q.x + q.x0)) < guard) continue;
            pts.push_back(q);
        }
        return pts;
    };

    int literal_failures = 0;
    for (const Medium& m : media) {
        const auto pts = sample(m, m.T() == 1.0 ? 11u : 12u);
        std::vector<BoundaryRegime> all = regimes;
        for (double kct : {0.5, 1.0, 2.0}) all.push_back(BoundaryRegime::backreaction(kct / (m.c() * m.T())));
        for (const auto& bc : all) {
            for (const Query& q : pts) {
                const double oracle = invert_gf(q, bc, m, inv).value;
                const double cut = eval_gf(q, bc, m, quad_for(o)).regular;
                r.measured = std::max(r.measured, std::abs(cut - oracle));
                if (bc.kind != Boundary::backreaction)
                    r.measured = std::max(r.measured, std::abs(eval_closed_gf(q, bc, m).regular - oracle));
                else if (!o.paper_literal) {
                    QuadSpec literal;
                    literal.formula = CutFormula::paper_literal;
                    if (std::abs(eval_gf(q, bc, m, literal).regular - oracle) > r.tolerance) ++literal_failures;
                }
            }
        }
    }
    r.detail = std::to_string(n) + " points per regime and medium (T = 1, 0.5)";
    if (!o.paper_literal) {
        r.detail += "; printed Pi variant fails at " + std::to_string(literal_failures) + " backreaction points";
        // the discriminating half: the printed variant has to be caught
        if (literal_failures == 0) {
            r.detail += " (expected > 0)";
            CheckResult failed = finish(r);
            failed.passed = false;
            return failed;
        }
    }
    return finish(r);
}

// 6. mollified analytic profiles against the finite-volume oracle
CheckResult pde_agreement(const ValidationOptions& o) {
    CheckResult r = named("pde_agreement", "mollified analytic profiles match the finite-volume oracle in L1");
    r.tolerance = 1.0;  // measured is the worst L1 / per-regime limit
    const Medium unit(1.0, 1.0);
    const double x0 = 0.5, t = 2.0, dx = 2e-3, smoothing = 0.02;
    struct Case {
        BoundaryRegime bc;
        double limit;
    };
    const std::vector<Case> cases{{BoundaryRegime::free_space(), 1e-2},
                                  {BoundaryRegime::absorbing(), 1e-2},
                                  {BoundaryRegime::reflecting(), 1e-2},
                                  {BoundaryRegime::radiation(0.5), 1e-2},
                                  {BoundaryRegime::backreaction(1.0), 2e-2}};
    RouteSpec spec;
    spec.quad = quad_for(o);
    std::string detail;
    for (const auto& c : cases) {
        const auto sol = solve(c.bc, unit, x0, make_grid(unit, x0, dx, t));
        const auto ana = cell_density(tabulate(Route::bromwich, c.bc, unit, x0, t, sol.x, spec), dx);
        const double l1 = l1_distance(mollify(ana, dx, smoothing), density_at(sol, sol.aPlus.size() - 1, smoothing), dx);
        r.measured = std::max(r.measured, l1 / c.limit);
        detail += (detail.empty() ? "" : ", ") + c.bc.name() + fmt(" %.2e", l1);
    }
    r.detail = "L1 / limit (1e-2, backreaction 2e-2) at dx = 2e-3, t = 2: " + detail;
    return finish(r);
}

// 7. mass, support and monotone survival
CheckResult conservation_support(const ValidationOptions&) {
    CheckResult r = named("conservation_support", "unit mass, support inside the light cones, survival nonincreasing");
    r.tolerance = 1e-6;
    const Medium unit(1.0, 1.0);
    const double x0 = 0.5;
    for (const auto& bc : {BoundaryRegime::free_space(), BoundaryRegime::reflecting()})
        for (double t : {0.25, 1.0, 2.0, 4.0})
            r.measured = std::max(r.measured, std::abs(survival(t, x0, bc, unit).S - 1.0));

    int support_violations = 0;
    for (const auto& bc : {BoundaryRegime::free_space(), BoundaryRegime::absorbing(), BoundaryRegime::reflecting(),
                           BoundaryRegime::radiation(0.5), BoundaryRegime::backreaction(1.0)})
        for (double t : {0.2, 1.0, 3.0}) {
            std::vector<double> outside{x0 + t + 1e-9, x0 + t + 0.5, 2.0 * (x0 + t)};
            if (!bc.has_wall()) outside.push_back(x0 - t - 0.25);
            if (bc.has_wall() && x0 > t) outside.push_back(0.5 * (x0 - t));
            for (double x : outside) {
                if (bc.has_wall() && x < 0.0) continue;
                if (eval_gf({x, x0, t}, bc, unit).regular != 0.0) ++support_violations;
                if (bc.kind != Boundary::backreaction && eval_closed_gf({x, x0, t}, bc, unit).regular != 0.0)
                    ++support_violations;
            }
        }
    int monotone_violations = 0;
    double prev = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double s = survival(0.05 * k, x0, BoundaryRegime::absorbing(), unit).S;
        if (s > prev + 1e-12) ++monotone_violations;
        prev = s;
    }
    r.detail = "max |mass - 1|; support violations " + std::to_string(support_violations) +
               ", survival increases " + std::to_string(monotone_violations);
    CheckResult out = finish(r);
    out.passed = out.passed && support_violations == 0 && monotone_violations == 0;
    return out;
}

// 8. diffusion limit
CheckResult diffusion_limit(const ValidationOptions&) {
    CheckResult r = named("diffusion_limit", "free GF approaches the Gaussian at c = 100, T = 1e-4");
    r.tolerance = 0.02;
    const Medium m(100.0, 1e-4);
    const double D = m.diffusion(), t = 1.0, x0 = 0.0;
    const double width = 3.0 * std::sqrt(2.0 * D * t);
    for (int i = -60; i <= 60; ++i) {
        const double dx = width * i / 60.0;
        const double gauss = std::exp(-dx * dx / (4 * D * t)) / std::sqrt(4 * kPi * D * t);
        const double p = eval_closed_gf({x0 + dx, x0, t}, BoundaryRegime::free_space(), m).regular;
        r.measured = std::max(r.measured, std::abs(p - gauss) / gauss);
    }
    r.detail = "max relative error within 3 sqrt(2Dt)";
    return finish(r);
}

// 9. finite-difference residual of the telegrapher's equation
CheckResult telegrapher_residual(const ValidationOptions& o) {
    CheckResult r = named("telegrapher_residual", "finite-difference residual decays at second order");
    r.tolerance = 1.8;
    r.comparison = Comparison::at_least;
    const Medium m(1.0, 1.0);
    const double x0 = 0.5, t = 2.0;
    QuadSpec quad = quad_for(o);
    quad.tol = 1e-13;
    double worst = HUGE_VAL;
    std::string detail;
    for (const auto& bc : {BoundaryRegime::free_space(), BoundaryRegime::absorbing(), BoundaryRegime::reflecting(),
                           BoundaryRegime::radiation(0.5), BoundaryRegime::backreaction(1.0)}) {
        auto p = [&](double x, double tt) { return eval_gf({x, x0, tt}, bc, m, quad).regular; };
        auto residual = [&](double h) {
            double worst_res = 0.0;
            for (double x : {0.8, 2.0}) {
                const double k = h / m.c();
                const double c0 = p(x, t);
                const double ptt = (p(x, t + k) - 2 * c0 + p(x, t - k)) / (k * k);
                const double pt = (p(x, t + k) - p(x, t - k)) / (2 * k);
                const double pxx = (p(x + h, t) - 2 * c0 + p(x - h, t)) / (h * h);
                worst_res = std::max(worst_res, std::abs(ptt + m.alpha() * pt - m.c() * m.c() * pxx));
            }
            return worst_res;
        };
        const double r1 = residual(0.08), r2 = residual(0.04), r3 = residual(0.02);
        const double order = std::min(std::log2(r1 / r2), std::log2(r2 / r3));
        worst = std::min(worst, order);
        detail += (detail.empty() ? "" : ", ") + bc.name() + fmt(" %.2f", order);
    }
    r.measured = worst;
    r.detail = "observed order, h = 0.08 / 0.04 / 0.02: " + detail;
    return finish(r);
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidationOptions& options) {
    using Check = std::function<CheckResult(const ValidationOptions&)>;
    const std::vector<Check> checks{bessel_identity,   closed_vs_bromwich,   radiation_consistency,
                                    limit_recovery,    laplace_agreement,    pde_agreement,
                                    conservation_support, diffusion_limit,   telegrapher_residual};
    std::vector<CheckResult> out;
    for (const auto& check : checks) {
        const auto start = std::chrono::steady_clock::now();
        CheckResult r;
        try {
            r = check(options);
        } catch (const std::exception& e) {
            r.passed = false;
            r.measured = HUGE_VAL;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out.push_back(r);
    }
    return out;
}

std::string validation_report_json(const std::vector<CheckResult>& checks, const ValidationOptions& options) {
    nlohmann::ordered_json report;
    bool all = true;
    report["quick"] = options.quick;
    report["paper_literal"] = options.paper_literal;
    auto list = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        all = all && c.passed;
        nlohmann::ordered_json j;
        j["check_id"] = c.id;
        j["status"] = c.passed ? "pass" : "fail";
        // JSON has no infinity; a check that could not produce a number reports null
        if (std::isfinite(c.measured))
            j["measured"] = c.measured;
        else
            j["measured"] = nullptr;
        j["tolerance"] = c.tolerance;
        j["comparison"] = c.comparison == Comparison::at_most ? "<=" : ">=";
        j["title"] = c.title;
        j["detail"] = c.detail;
        list.push_back(j);
    }
    report["checks"] = list;
    report["passed"] = all;
    return report.dump(2) + "\n";
}

}  // namespace telegf
