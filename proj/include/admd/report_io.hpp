#pragma once

#include "admd/benchmark.hpp"
#include "admd/solver.hpp"

#include <nlohmann/json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace admd {

enum class OutputFormat { Text, Json, Csv };

std::optional<OutputFormat> parse_output_format(std::string_view s);

/// JSON object with exactly the SolverReport fields. Wall time is in seconds
/// rounded to milliseconds; absent optionals are null.
nlohmann::json report_to_json(const SolverReport& report);

void write_report(std::ostream& out, const SolverReport& report, OutputFormat format);

/// One (example, regime, policy) run of a benchmark.
struct BenchCell {
  int example = 0;
  Regime regime = Regime::LipschitzObjective;
  Policy policy = Policy::AggregateMax;
  std::int64_t cap = kDefaultIterationCap;
  std::optional<SolverReport> report;
  std::optional<VerificationResult> verification;
  std::string error;  ///< set when the run threw
};

inline const char* kBenchCsvHeader =
    "example,regime,policy,iterations,productive,time_s,objective_gap,max_violation,stop_reason";

void write_bench(std::ostream& out, const std::vector<BenchCell>& cells, OutputFormat format);

/// "N" for completed runs, ">cap" when the cap was hit.
std::string iterations_cell(const BenchCell& cell);

}  // namespace admd
