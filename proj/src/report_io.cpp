#include "admd/report_io.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

namespace admd {

using nlohmann::json;

namespace {

double round_millis(double seconds) { return std::round(seconds * 1000.0) / 1000.0; }

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

json vector_json(const Eigen::VectorXd& v) { return json(std::vector<double>(v.begin(), v.end())); }

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

std::string general(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

std::optional<double> objective_gap(const BenchCell& cell) {
  if (!cell.report) return std::nullopt;
  return cell.report->output_objective - build_example(cell.example).instance.known_optimum()->value;
}

std::string verdict(const BenchCell& cell) {
  if (!cell.error.empty()) return "error";
  if (!cell.verification) return "-";
  if (!cell.verification->criterion_met) return "n/a";
  return cell.verification->all_passed() ? "pass" : "FAIL";
}

std::string reference_text(const BenchCell& cell) {
  ReferenceCell ref = reference_cell(cell.example, cell.regime, cell.policy);
  if (ref.iterations) return std::to_string(*ref.iterations);
  if (ref.exceeded) return ">" + std::to_string(*ref.exceeded);
  return "--";
}

void write_bench_text(std::ostream& out, const std::vector<BenchCell>& cells) {
  // Rows: example x regime. Columns: policies in order of first appearance.
  std::vector<Policy> policies;
  std::map<std::pair<int, Regime>, std::map<Policy, const BenchCell*>> rows;
  for (const auto& cell : cells) {
    if (std::find(policies.begin(), policies.end(), cell.policy) == policies.end()) {
      policies.push_back(cell.policy);
    }
    rows[{cell.example, cell.regime}][cell.policy] = &cell;
  }

  out << std::left << std::setw(8) << "example" << std::setw(13) << "regime";
  for (Policy p : policies) out << " | " << std::setw(40) << to_string(p);
  out << '\n';
  out << std::setw(21) << "";
  for (std::size_t i = 0; i < policies.size(); ++i) {
    out << " | " << std::setw(11) << "iterations" << std::setw(11) << "reference" << std::setw(10)
        << "time_s" << std::setw(8) << "check";
  }
  out << '\n';
  for (const auto& [key, by_policy] : rows) {
    out << std::setw(8) << key.first << std::setw(13) << to_string(key.second);
    for (Policy p : policies) {
      auto it = by_policy.find(p);
      if (it == by_policy.end()) {
        out << " | " << std::setw(40) << "";
        continue;
      }
      const BenchCell& cell = *it->second;
      std::string time = cell.report ? fixed(cell.report->wall_time.count(), 3) : "-";
      out << " | " << std::setw(11) << iterations_cell(cell) << std::setw(11)
          << reference_text(cell) << std::setw(10) << time << std::setw(8) << verdict(cell);
    }
    out << '\n';
  }
  for (const auto& cell : cells) {
    if (!cell.error.empty()) {
      out << "example " << cell.example << " " << to_string(cell.regime) << " "
          << to_string(cell.policy) << ": " << cell.error << '\n';
    }
  }
}

void write_bench_csv(std::ostream& out, const std::vector<BenchCell>& cells) {
  out << kBenchCsvHeader << '\n';
  for (const auto& cell : cells) {
    out << cell.example << ',' << to_string(cell.regime) << ',' << to_string(cell.policy) << ',';
    if (cell.report) {
      const auto& r = *cell.report;
      out << iterations_cell(cell) << ',' << r.productive_count << ','
          << fixed(r.wall_time.count(), 3) << ',' << general(*objective_gap(cell)) << ','
          << general(r.output_max_violation) << ',' << to_string(r.stop_reason);
    } else {
      out << ",,,,,error";
    }
    out << '\n';
  }
}

void write_bench_json(std::ostream& out, const std::vector<BenchCell>& cells) {
  json rows = json::array();
  for (const auto& cell : cells) {
    json row{{"example", cell.example},
             {"regime", to_string(cell.regime)},
             {"policy", to_string(cell.policy)},
             {"cap", cell.cap},
             {"reference", reference_text(cell)}};
    if (cell.report) {
      row["report"] = report_to_json(*cell.report);
      row["objective_gap"] = *objective_gap(cell);
    }
    if (cell.verification) {
      json checks = json::array();
      for (const auto& c : cell.verification->checks) {
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
      }
      row["verification"] = {{"criterion_met", cell.verification->criterion_met},
                             {"passed", cell.verification->all_passed()},
                             {"checks", std::move(checks)}};
    }
    if (!cell.error.empty()) row["error"] = cell.error;
    rows.push_back(std::move(row));
  }
  out << rows.dump(2) << '\n';
}

}  // namespace

std::optional<OutputFormat> parse_output_format(std::string_view s) {
  if (s == "text") return OutputFormat::Text;
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  return std::nullopt;
}

json report_to_json(const SolverReport& r) {
  json history = nullptr;
  if (r.history) {
    history = json::array();
    for (const auto& s : *r.history) {
      history.push_back({{"index", s.index},
                         {"kind", s.kind == StepKind::Productive ? "productive" : "nonproductive"},
                         {"step_size", s.step_size},
                         {"grad_dual_norm", s.grad_dual_norm},
                         {"constraint_index", optional_json(s.constraint_index)},
                         {"objective_value", optional_json(s.objective_value)},
                         {"iterate", vector_json(s.iterate)}});
    }
  }
  return json{{"regime", to_string(r.regime)},
              {"policy", to_string(r.policy)},
              {"epsilon", r.epsilon},
              {"total_steps", r.total_steps},
              {"productive_count", r.productive_count},
              {"nonproductive_count", r.nonproductive_count},
              {"output_point", vector_json(r.output_point)},
              {"output_objective", r.output_objective},
              {"output_max_violation", r.output_max_violation},
              {"constraint_residuals", r.constraint_residuals},
              {"stop_reason", to_string(r.stop_reason)},
              {"a_priori_bound", optional_json(r.a_priori_bound)},
              {"min_vf_gap", optional_json(r.min_vf_gap)},
              {"history", std::move(history)},
              {"wall_time", round_millis(r.wall_time.count())}};
}

void write_report(std::ostream& out, const SolverReport& r, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json:
      out << report_to_json(r).dump(2) << '\n';
      return;
    case OutputFormat::Csv:
      out << "regime,policy,epsilon,iterations,productive,nonproductive,time_s,objective,"
             "max_violation,stop_reason,a_priori_bound\n";
      out << to_string(r.regime) << ',' << to_string(r.policy) << ',' << general(r.epsilon) << ','
          << r.total_steps << ',' << r.productive_count << ',' << r.nonproductive_count << ','
          << fixed(r.wall_time.count(), 3) << ',' << general(r.output_objective) << ','
          << general(r.output_max_violation) << ',' << to_string(r.stop_reason) << ','
          << (r.a_priori_bound ? std::to_string(*r.a_priori_bound) : "") << '\n';
      return;
    case OutputFormat::Text:
      break;
  }
  out << "regime            " << to_string(r.regime) << '\n'
      << "policy            " << to_string(r.policy) << '\n'
      << "epsilon           " << general(r.epsilon) << '\n'
      << "stop reason       " << to_string(r.stop_reason) << '\n'
      << "iterations N      " << r.total_steps << '\n'
      << "productive |I|    " << r.productive_count << '\n'
      << "non-productive    " << r.nonproductive_count << '\n'
      << "a-priori bound    " << (r.a_priori_bound ? std::to_string(*r.a_priori_bound) : "n/a")
      << '\n'
      << "objective         " << general(r.output_objective) << '\n'
      << "max violation     " << general(r.output_max_violation) << '\n';
  if (r.min_vf_gap) out << "min v_f gap       " << general(*r.min_vf_gap) << '\n';
  out << "wall time         " << fixed(r.wall_time.count(), 3) << " s\n"
      << "output point      ";
  for (Eigen::Index i = 0; i < r.output_point.size(); ++i) {
    out << (i ? " " : "") << general(r.output_point[i]);
  }
  out << '\n' << "residuals g_m     ";
  for (std::size_t m = 0; m < r.constraint_residuals.size(); ++m) {
    out << (m ? " " : "") << general(r.constraint_residuals[m]);
  }
  out << '\n';
}

std::string iterations_cell(const BenchCell& cell) {
  if (!cell.report) return "error";
  if (cell.report->stop_reason == StopReason::IterationCap) return ">" + std::to_string(cell.cap);
  return std::to_string(cell.report->total_steps);
}

void write_bench(std::ostream& out, const std::vector<BenchCell>& cells, OutputFormat format) {
  switch (format) {
    case OutputFormat::Text: write_bench_text(out, cells); break;
    case OutputFormat::Csv: write_bench_csv(out, cells); break;
    case OutputFormat::Json: write_bench_json(out, cells); break;
  }
}

}  // namespace admd
