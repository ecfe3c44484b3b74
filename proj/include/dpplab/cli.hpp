#pragma once

#include "dpplab/measures.hpp"
#include "dpplab/recurrence.hpp"

#include <json.hpp>

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace dpplab {

enum ExitCode : int { kExitOk = 0, kExitValidation = 2, kExitNumerical = 3 };

/// Executes one experiment described by a JSON object. Artifacts go to the
/// file named by "output" or to `out` when absent; diagnostics go to `err`.
/// Commands: traces, zeros, gap-sweep, variance-sweep, kva, mop-zeros,
/// free-conv, curve, sample. Unknown keys are rejected.
int run(const nlohmann::json& config, std::ostream& out, std::ostream& err);

/// Parses `text` as JSON and runs it; malformed JSON is a validation error.
int run_text(const std::string& text, std::ostream& out, std::ostream& err);

/// Recurrence scheme from {"name": ..., "alpha", "beta", "a", "q", "path"} or
/// {"ensemble": ..., "params": {...}}. MOP schemes get a greedy path long enough
/// for indices up to `max_index`.
RecurrenceScheme scheme_from_json(const nlohmann::json& spec, long max_index);

/// Moments of {"type": "semicircle" | "mp" | "arcsine" | "atoms" | "moments", ...}.
MomentSequence measure_from_json(const nlohmann::json& spec, int L);

/// Least-squares slope of log y against log x, skipping nonpositive y. NaN with fewer than 2 points.
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace dpplab
