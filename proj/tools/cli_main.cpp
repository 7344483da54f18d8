// telegf: profiles, survival curves and the validation suite from the command line.
//
// Exit codes: 0 ok, 1 validation failure, 2 configuration error, 3 accuracy error.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "telegf/errors.hpp"
#include "telegf/observables.hpp"
#include "telegf/parallel.hpp"
#include "telegf/profile.hpp"
#include "telegf/rw_oracle.hpp"
#include "telegf/validation.hpp"

namespace {

using namespace telegf;
using json = nlohmann::ordered_json;

constexpr int kOk = 0, kValidationFailed = 1, kConfigError = 2, kAccuracyError = 3;

struct RunConfig {
    double c = 1.0, T = 1.0;
    std::string bc = "free";
    double beta = 0.5, kappa = 1.0;
    double x0 = 0.5;
    std::vector<double> times{1.0};
    double xmin = 0.0, xmax = 4.0;
    int nx = 401;
    std::string method = "closed";
    std::string format = "csv";
    std::string out;
    bool paper_literal = false;
    bool quick = false;
    // overrides
    int quad_nodes = 256;
    double quad_tol = 1e-10;
    int series_nmax = 64;
    std::string inv_method = "euler";
    int inv_terms = 32;
    double inv_margin = 11.5;
    double inv_tol = 1e-6;
    double oracle_dx = 2e-3;
};

void add_common(CLI::App* app, RunConfig& cfg, bool grid) {
    app->add_option("--c", cfg.c, "propagation speed")->capture_default_str();
    app->add_option("--T", cfg.T, "relaxation time")->capture_default_str();
    app->add_option("--bc", cfg.bc, "free | absorbing | reflecting | radiation | backreaction")->capture_default_str();
    app->add_option("--beta", cfg.beta, "absorption probability (radiation)")->capture_default_str();
    app->add_option("--kappa", cfg.kappa, "desorption coefficient (backreaction)")->capture_default_str();
    app->add_option("--x0", cfg.x0, "release point")->capture_default_str();
    app->add_option("--t,--times", cfg.times, "observation time(s)")->delimiter(',');
    if (grid) {
        app->add_option("--xmin", cfg.xmin)->capture_default_str();
        app->add_option("--xmax", cfg.xmax)->capture_default_str();
        app->add_option("--nx", cfg.nx, "number of grid points")->capture_default_str();
    }
    app->add_option("--method", cfg.method, "closed | bromwich | laplace | oracle | all")->capture_default_str();
    app->add_option("--format", cfg.format, "csv | json")->capture_default_str();
    app->add_option("--out", cfg.out, "output file (default stdout)");
    app->add_flag("--paper-literal", cfg.paper_literal, "printed backreaction Pi term, no residue");
    app->add_option("--quad-nodes", cfg.quad_nodes)->capture_default_str();
    app->add_option("--quad-tol", cfg.quad_tol)->capture_default_str();
    app->add_option("--series-nmax", cfg.series_nmax)->capture_default_str();
    app->add_option("--inv-method", cfg.inv_method, "euler | talbot")->capture_default_str();
    app->add_option("--inv-terms", cfg.inv_terms)->capture_default_str();
    app->add_option("--inv-margin", cfg.inv_margin)->capture_default_str();
    app->add_option("--inv-tol", cfg.inv_tol)->capture_default_str();
    app->add_option("--oracle-dx", cfg.oracle_dx, "finite-volume cell size")->capture_default_str();
}

BoundaryRegime make_bc(const RunConfig& cfg) {
    BoundaryRegime bc;
    switch (parse_boundary(cfg.bc)) {
        case Boundary::free: bc = BoundaryRegime::free_space(); break;
        case Boundary::absorbing: bc = BoundaryRegime::absorbing(); break;
        case Boundary::reflecting: bc = BoundaryRegime::reflecting(); break;
        case Boundary::radiation: bc = BoundaryRegime::radiation(cfg.beta); break;
        case Boundary::backreaction: bc = BoundaryRegime::backreaction(cfg.kappa); break;
    }
    bc.validate();
    return bc;
}

RouteSpec make_spec(const RunConfig& cfg) {
    RouteSpec s;
    s.quad.n_nodes = cfg.quad_nodes;
    s.quad.tol = cfg.quad_tol;
    if (cfg.paper_literal) s.quad.formula = CutFormula::paper_literal;
    s.series.n_max = cfg.series_nmax;
    if (cfg.inv_method == "euler")
        s.inversion.method = InversionMethod::euler;
    else if (cfg.inv_method == "talbot")
        s.inversion.method = InversionMethod::talbot;
    else
        throw ConfigError("unknown inversion method '" + cfg.inv_method + "'");
    s.inversion.n_terms = cfg.inv_terms;
    s.inversion.margin = cfg.inv_margin;
    s.inversion.tol = cfg.inv_tol;
    if (cfg.quad_nodes < 8 || !(cfg.quad_tol > 0.0)) throw ConfigError("--quad-nodes >= 8 and --quad-tol > 0 required");
    if (cfg.series_nmax < 1) throw ConfigError("--series-nmax must be positive");
    if (cfg.inv_terms < 16 || !(cfg.inv_margin > 0.0) || !(cfg.inv_tol > 0.0))
        throw ConfigError("--inv-terms >= 16, --inv-margin > 0 and --inv-tol > 0 required");
    return s;
}

void check_common(const RunConfig& cfg, const BoundaryRegime& bc) {
    if (cfg.format != "csv" && cfg.format != "json") throw ConfigError("--format must be csv or json");
    if (cfg.times.empty()) throw ConfigError("at least one time is required");
    for (double t : cfg.times)
        if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError("times must be finite and >= 0");
    if (!std::isfinite(cfg.x0) || (bc.has_wall() && cfg.x0 < 0.0)) throw ConfigError("x0 must be >= 0 with a wall");
    if (!(cfg.oracle_dx > 0.0)) throw ConfigError("--oracle-dx must be positive");
}

// methods selected by --method, in column order
std::vector<std::string> methods_for(const RunConfig& cfg, const BoundaryRegime& bc) {
    const std::vector<std::string> known{"closed", "bromwich", "laplace", "oracle"};
    if (cfg.method == "all") {
        std::vector<std::string> out;
        for (const auto& m : known)
            if (!(m == "closed" && bc.kind == Boundary::backreaction)) out.push_back(m);
        return out;
    }
    if (std::find(known.begin(), known.end(), cfg.method) == known.end())
        throw ConfigError("unknown method '" + cfg.method + "'");
    if (cfg.method == "closed" && bc.kind == Boundary::backreaction)
        throw ConfigError("backreaction has no closed form; use bromwich, laplace or oracle");
    return {cfg.method};
}

std::string num(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json num_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file '" + cfg.out + "'");
    f << text;
}

// finite-volume density interpolated at x
std::vector<double> oracle_profile(const BoundaryRegime& bc, const Medium& m, double x0, double t,
                                   const std::vector<double>& xs, double dx) {
    std::vector<double> out(xs.size(), 0.0);
    if (t == 0.0) return out;
    const SolveResult r = solve(bc, m, x0, make_grid(m, x0, dx, t));
    const std::vector<double> p = density_at(r, r.aPlus.size() - 1);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = (xs[i] - r.x.front()) / dx;
        if (f < 0.0 || f > double(p.size() - 1)) {
            out[i] = (bc.has_wall() && f < 0.0 && f >= -0.5) ? p.front() : 0.0;
            continue;
        }
        const std::size_t k = std::min(std::size_t(f), p.size() - 2);
        const double w = f - double(k);
        out[i] = (1.0 - w) * p[k] + w * p[k + 1];
    }
    // cells holding a Dirac packet are not a density
    for (const DeltaTerm& d : ballistic_deltas(x0, t, bc, m))
        for (std::size_t i = 0; i < xs.size(); ++i)
            if (std::abs(xs[i] - d.location) < 2.0 * dx) out[i] = std::numeric_limits<double>::quiet_NaN();
    return out;
}

int run_profile(const RunConfig& cfg) {
    const Medium medium(cfg.c, cfg.T);
    const BoundaryRegime bc = make_bc(cfg);
    const RouteSpec spec = make_spec(cfg);
    check_common(cfg, bc);
    if (cfg.nx < 2) throw ConfigError("--nx must be >= 2");
    if (!(cfg.xmin < cfg.xmax)) throw ConfigError("--xmin must be smaller than --xmax");
    if (bc.has_wall() && cfg.xmin < 0.0) throw ConfigError("--xmin must be >= 0 with a wall");
    const auto methods = methods_for(cfg, bc);

    std::vector<double> xs(cfg.nx);
    for (int i = 0; i < cfg.nx; ++i)
        xs[i] = i + 1 == cfg.nx ? cfg.xmax : cfg.xmin + (cfg.xmax - cfg.xmin) * i / (cfg.nx - 1);

    const bool compare = cfg.method == "all";
    std::ostringstream delta_lines, head, csv;
    head << "t,x";
    for (const auto& name : methods) head << "," << name;
    if (compare) head << ",max_discrepancy";
    head << "\n";
    json doc;
    doc["command"] = "profile";
    doc["bc"] = bc.name();
    doc["c"] = cfg.c;
    doc["T"] = cfg.T;
    doc["beta"] = bc.beta;
    doc["kappa"] = bc.kappa;
    doc["x0"] = cfg.x0;
    doc["paper_literal"] = cfg.paper_literal;
    doc["profiles"] = json::array();

    for (double t : cfg.times) {
        std::vector<std::vector<double>> cols;
        bool warned = false;
        for (const auto& name : methods) {
            if (name == "oracle") {
                cols.push_back(oracle_profile(bc, medium, cfg.x0, t, xs, cfg.oracle_dx));
                continue;
            }
            const Profile p = tabulate(parse_route(name), bc, medium, cfg.x0, t, xs, spec);
            warned |= p.accuracy_warning;
            cols.push_back(p.regular);
        }
        // analytic routes only; the oracle is a discretization, not a route
        std::vector<double> spread(xs.size(), 0.0);
        if (compare)
            for (std::size_t i = 0; i < xs.size(); ++i) {
                double lo = HUGE_VAL, hi = -HUGE_VAL;
                for (std::size_t k = 0; k < methods.size(); ++k) {
                    if (methods[k] == "oracle" || std::isnan(cols[k][i])) continue;
                    lo = std::min(lo, cols[k][i]);
                    hi = std::max(hi, cols[k][i]);
                }
                spread[i] = hi >= lo ? hi - lo : 0.0;
            }
        const auto deltas = ballistic_deltas(cfg.x0, t, bc, medium);
        if (warned) std::cerr << "warning: series truncation above tolerance at t = " << num(t) << "\n";

        if (cfg.format == "csv") {
            // Dirac terms are metadata, never folded into the rows
            for (const auto& d : deltas)
                delta_lines << "# delta t=" << num(t) << " location=" << num(d.location) << " weight=" << num(d.weight)
                             << "\n";
            for (std::size_t i = 0; i < xs.size(); ++i) {
                csv << num(t) << "," << num(xs[i]);
                for (const auto& col : cols) csv << "," << num(col[i]);
                if (compare) csv << "," << num(spread[i]);
                csv << "\n";
            }
        } else {
            json prof;
            prof["t"] = t;
            prof["x"] = xs;
            json columns;
            for (std::size_t k = 0; k < methods.size(); ++k) {
                json col = json::array();
                for (double v : cols[k]) col.push_back(num_json(v));
                columns[methods[k]] = col;
            }
            prof["regular"] = columns;
            if (compare) prof["max_discrepancy"] = spread;
            prof["deltas"] = json::array();
            for (const auto& d : deltas) prof["deltas"].push_back({{"location", d.location}, {"weight", d.weight}});
            doc["profiles"].push_back(prof);
        }
    }
    emit(cfg, cfg.format == "csv" ? delta_lines.str() + head.str() + csv.str() : doc.dump(2) + "\n");
    return kOk;
}

int run_survival(const RunConfig& cfg) {
    const Medium medium(cfg.c, cfg.T);
    const BoundaryRegime bc = make_bc(cfg);
    ObservableSpec spec;
    spec.route = make_spec(cfg);
    check_common(cfg, bc);
    if (cfg.method != "closed" && cfg.method != "bromwich" && cfg.method != "oracle" && cfg.method != "all")
        throw ConfigError("survival supports --method closed | bromwich | oracle | all");
    const bool with_oracle = cfg.method == "oracle" || cfg.method == "all";

    std::vector<double> oracle;
    if (with_oracle) {
        const double t_max = *std::max_element(cfg.times.begin(), cfg.times.end());
        const SolverGrid grid = make_grid(medium, cfg.x0, cfg.oracle_dx, std::max(t_max, cfg.oracle_dx / cfg.c));
        const SolveResult r = solve(bc, medium, cfg.x0, grid);
        for (double t : cfg.times) {
            const double f = std::min(t / grid.dt, double(r.times.size() - 1));
            const std::size_t k = std::min(std::size_t(f), r.times.size() - 2);
            const double w = f - double(k);
            const auto mass = [&](std::size_t j) { return r.survival[j]; };
            oracle.push_back((1.0 - w) * mass(k) + w * mass(k + 1));
        }
    }

    std::ostringstream csv;
    json doc;
    doc["command"] = "survival";
    doc["bc"] = bc.name();
    doc["c"] = cfg.c;
    doc["T"] = cfg.T;
    doc["beta"] = bc.beta;
    doc["kappa"] = bc.kappa;
    doc["x0"] = cfg.x0;
    doc["paper_literal"] = cfg.paper_literal;
    doc["rows"] = json::array();
    csv << "t,S_analytic,S_error";
    if (with_oracle) csv << ",S_oracle,abs_diff";
    csv << "\n";
    for (std::size_t i = 0; i < cfg.times.size(); ++i) {
        const double t = cfg.times[i];
        const SurvivalResult s = survival(t, cfg.x0, bc, medium, SurvivalMethod::spatial, spec);
        csv << num(t) << "," << num(s.S) << "," << num(s.error);
        json row{{"t", t}, {"S_analytic", s.S}, {"S_error", s.error}};
        if (with_oracle) {
            csv << "," << num(oracle[i]) << "," << num(std::abs(s.S - oracle[i]));
            row["S_oracle"] = oracle[i];
            row["abs_diff"] = std::abs(s.S - oracle[i]);
        }
        csv << "\n";
        doc["rows"].push_back(row);
    }
    emit(cfg, cfg.format == "csv" ? csv.str() : doc.dump(2) + "\n");
    return kOk;
}

int run_validate(const RunConfig& cfg) {
    ValidationOptions options;
    options.quick = cfg.quick;
    options.paper_literal = cfg.paper_literal;
    const auto checks = run_validation(options);
    bool all = true;
    for (const auto& c : checks) {
        std::fprintf(stderr, "%-4s %-22s %.3e (%.1fs)\n", c.passed ? "PASS" : "FAIL", c.id.c_str(), c.measured,
                     c.seconds);
        all = all && c.passed;
    }
    emit(cfg, validation_report_json(checks, options));
    return all ? kOk : kValidationFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Green's functions of the one-dimensional telegrapher's equation"};
    app.require_subcommand(1);
    RunConfig cfg;
    auto* profile = app.add_subcommand("profile", "regular density on a spatial grid");
    add_common(profile, cfg, true);
    auto* surv = app.add_subcommand("survival", "survival probability at the given times");
    add_common(surv, cfg, false);
    auto* validate = app.add_subcommand("validate", "run the acceptance checks, JSON report");
    validate->add_flag("--quick", cfg.quick, "fewer sample points");
    validate->add_flag("--paper-literal", cfg.paper_literal, "printed backreaction Pi term, no residue");
    validate->add_option("--out", cfg.out, "report file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }
    configure_threads();

    try {
        if (*profile) return run_profile(cfg);
        if (*surv) return run_survival(cfg);
        return run_validate(cfg);
    } catch (const AccuracyError& e) {
        std::cerr << "accuracy error: " << e.what() << "\n";
        return kAccuracyError;
    } catch (const ConsistencyError& e) {
        std::cerr << "accuracy error: " << e.what() << "\n";
        return kAccuracyError;
    } catch (const std::invalid_argument& e) {  // ConfigError, UnsupportedRegime
        std::cerr << "configuration error: " << e.what() << "\n";
        return kConfigError;
    } catch (const DomainError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kAccuracyError;
    }
}
