#pragma once

#include <string>
#include <vector>

namespace telegf {

struct ValidationOptions {
    bool quick = false;          // fewer sample points, same tolerances
    bool paper_literal = false;  // printed Pi term, no residue, in every backreaction evaluation
};

enum class Comparison { at_most, at_least };

struct CheckResult {
    std::string id;
    std::string title;
    bool passed = false;
    double measured = 0.0;
    double tolerance = 0.0;
    Comparison comparison = Comparison::at_most;
    std::string detail;
    double seconds = 0.0;
};

/// Runs the acceptance checks in order. Tolerances are fixed in the
/// implementation; sample points come from fixed seeds.
std::vector<CheckResult> run_validation(const ValidationOptions& options = {});

/// Machine-readable report, stable for identical options (timings omitted).
std::string validation_report_json(const std::vector<CheckResult>& checks, const ValidationOptions& options);

}  // namespace telegf
