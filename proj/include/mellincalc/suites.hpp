#pragma once

#include <string>
#include <vector>

#include "mellincalc/config.hpp"
#include "mellincalc/report.hpp"

namespace mellincalc {

// Executes the named check suite in a fixed order and writes reports.json
// plus per-check CSV/JSON artifacts under config.output_dir.
// Suites: mellin, norms, maximal, square, decomposition, all.
std::vector<VerificationReport> run_suite(const RunConfig& config, const std::string& suite);

bool all_pass(const std::vector<VerificationReport>& reports);

}  // namespace mellincalc
