#include "admd/cli.hpp"

#include "admd/benchmark.hpp"
#include "admd/problem_io.hpp"
#include "admd/report_io.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

namespace admd::cli {
namespace {

struct Options {
  std::optional<int> example;
  std::string problem_file;
  std::string regime = "lipschitz";
  std::string policy = "first-violated";
  std::optional<double> epsilon;
  std::optional<double> theta0;
  std::int64_t max_iterations = kDefaultIterationCap;
  std::string format = "text";
  std::string output;
  bool history = false;
  std::string examples = "1,2,3,4,5,6";
  unsigned jobs = 0;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Job {
  ProblemInstance instance;
  ProxStructure prox;
  RunConfig config;
};

OutputFormat format_of(const Options& o) {
  auto f = parse_output_format(o.format);
  if (!f) throw UsageError("unknown format '" + o.format + "' (text, json, csv)");
  return *f;
}

Job make_job(const Options& o) {
  if (o.example.has_value() == !o.problem_file.empty()) {
    throw UsageError("exactly one of --example or --problem-file is required");
  }
  auto regime = parse_regime(o.regime);
  if (!regime) throw UsageError("unknown regime '" + o.regime + "' (lipschitz, nonstandard)");
  auto policy = parse_policy(o.policy);
  if (!policy) {
    throw UsageError("unknown policy '" + o.policy +
                     "' (aggregate-max, first-violated, max-violation, min-dual-norm)");
  }

  std::optional<Job> job;
  if (o.example) {
    if (*o.example < 1 || *o.example > kExampleCount) {
      throw UsageError("--example must be in 1..6");
    }
    PaperExample ex = build_example(*o.example);
    ProxStructure prox = ProxStructure::euclidean(ex.settings.x0, o.theta0.value_or(ex.settings.theta0));
    RunConfig config = ex.config(*regime, *policy);
    job.emplace(Job{std::move(ex.instance), std::move(prox), std::move(config)});
  } else {
    ProblemFile file = load_problem(o.problem_file);
    RunConfig config;
    config.epsilon = file.epsilon;
    config.regime = *regime;
    config.policy = *policy;
    if (*regime == Regime::NonstandardGrowth && file.instance.known_optimum()) {
      config.certificate_point = file.instance.known_optimum()->point;
    }
    ProxStructure prox = o.theta0 ? ProxStructure(file.prox.geometry(), file.prox.anchor(), *o.theta0)
                                  : file.prox;
    job.emplace(Job{std::move(file.instance), std::move(prox), std::move(config)});
  }
  if (o.epsilon) job->config.epsilon = *o.epsilon;
  job->config.max_iterations = o.max_iterations;
  job->config.record_history = o.history;
  job->config.validate();
  return std::move(*job);
}

std::vector<int> parse_example_set(const std::string& text) {
  std::vector<int> ids;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    std::size_t used = 0;
    int id = 0;
    try {
      id = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw UsageError("bad example id '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos || id < 1 || id > kExampleCount) {
      throw UsageError("bad example id '" + item + "' (expected 1..6)");
    }
    ids.push_back(id);
  }
  return ids;
}

template <class Fn>
void with_output(const Options& o, std::ostream& out, Fn&& write) {
  if (o.output.empty()) {
    write(out);
    return;
  }
  std::ofstream file(o.output);
  if (!file) throw UsageError("cannot write '" + o.output + "'");
  write(file);
}

int cmd_run(const Options& o, std::ostream& out) {
  OutputFormat format = format_of(o);
  Job job = make_job(o);
  SolverReport report = run(job.instance, job.prox, job.config);
  with_output(o, out, [&](std::ostream& os) { write_report(os, report, format); });
  bool ok = report.stop_reason == StopReason::CriterionMet ||
            report.stop_reason == StopReason::ZeroObjectiveGradient;
  return ok ? kExitSuccess : kExitNotConverged;
}

int cmd_verify(const Options& o, std::ostream& out) {
  OutputFormat format = format_of(o);
  Job job = make_job(o);
  SolverReport report = run(job.instance, job.prox, job.config);
  VerificationResult result = verify_report(report, job.instance, job.config.epsilon);
  with_output(o, out, [&](std::ostream& os) {
    if (format == OutputFormat::Json) {
      nlohmann::json checks = nlohmann::json::array();
      for (const auto& c : result.checks) {
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
      }
      os << nlohmann::json{{"report", report_to_json(report)},
                           {"criterion_met", result.criterion_met},
                           {"passed", result.all_passed()},
                           {"checks", std::move(checks)}}
                .dump(2)
         << '\n';
      return;
    }
    for (const auto& c : result.checks) {
      os << (c.passed ? "PASS  " : "FAIL  ") << c.name << "  (" << c.detail << ")\n";
    }
    os << (result.all_passed() ? "all checks passed" : "verification failed") << '\n';
  });
  return result.all_passed() ? kExitSuccess : kExitNotConverged;
}

int cmd_bench(const Options& o, std::ostream& out, std::ostream& err) {
  OutputFormat format = format_of(o);
  if (o.max_iterations < 1) throw UsageError("--max-iter must be >= 1");
  std::vector<BenchCell> cells;
  for (int id : parse_example_set(o.examples)) {
    for (Regime r : {Regime::LipschitzObjective, Regime::NonstandardGrowth}) {
      for (Policy p : {Policy::AggregateMax, Policy::FirstViolated}) {
        cells.push_back(BenchCell{id, r, p, o.max_iterations, std::nullopt, std::nullopt, {}});
      }
    }
  }

  auto run_cell = [&](BenchCell& cell) {
    try {
      PaperExample ex = build_example(cell.example);
      if (o.theta0) ex.settings.theta0 = *o.theta0;
      if (o.epsilon) ex.settings.epsilon = *o.epsilon;
      RunConfig config = ex.config(cell.regime, cell.policy);
      config.max_iterations = cell.cap;
      cell.report = run(ex.instance, ex.prox(), config);
      cell.verification = verify_example(*cell.report, ex);
    } catch (const std::exception& e) {
      cell.error = e.what();
    }
  };

  unsigned jobs = o.jobs ? o.jobs : std::max(1u, std::thread::hardware_concurrency());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) run_cell(cells[i]);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::min<std::size_t>(jobs, cells.size()); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& cell : cells) {
    if (!cell.error.empty()) {
      err << "example " << cell.example << " " << to_string(cell.regime) << " "
          << to_string(cell.policy) << ": " << cell.error << '\n';
    }
  }
  with_output(o, out, [&](std::ostream& os) { write_bench(os, cells, format); });
  return kExitSuccess;
}

void add_run_options(CLI::App& cmd, Options& o) {
  cmd.add_option("--example", o.example, "Built-in example id (1..6)");
  cmd.add_option("--problem-file", o.problem_file, "Problem-definition JSON file");
  cmd.add_option("--regime", o.regime, "lipschitz | nonstandard")->capture_default_str();
  cmd.add_option("--policy", o.policy,
                 "aggregate-max | first-violated | max-violation | min-dual-norm")
      ->capture_default_str();
  cmd.add_flag("--history", o.history, "Record per-step history");
}

void add_common_options(CLI::App& cmd, Options& o) {
  cmd.add_option("--epsilon", o.epsilon, "Target accuracy override");
  cmd.add_option("--theta0", o.theta0, "Theta_0 override");
  cmd.add_option("--max-iter", o.max_iterations, "Iteration cap")->capture_default_str();
  cmd.add_option("--format", o.format, "text | json | csv")->capture_default_str();
  cmd.add_option("--output", o.output, "Write the report to this file");
}

}  // namespace

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Adaptive mirror descent for convex problems with functional constraints", "admd"};
  app.require_subcommand(1);
  CLI::App* run_cmd = app.add_subcommand("run", "Solve one problem");
  CLI::App* verify_cmd = app.add_subcommand("verify", "Solve one problem and check its guarantees");
  CLI::App* bench_cmd = app.add_subcommand("bench", "Run the four algorithm configurations on examples");
  for (CLI::App* cmd : {run_cmd, verify_cmd}) {
    add_run_options(*cmd, o);
    add_common_options(*cmd, o);
  }
  add_common_options(*bench_cmd, o);
  bench_cmd->add_option("--examples", o.examples, "Comma-separated example ids")
      ->capture_default_str();
  bench_cmd->add_option("--jobs", o.jobs, "Parallel runs (default: hardware threads)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitSuccess : kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(o, out);
    if (verify_cmd->parsed()) return cmd_verify(o, out);
    return cmd_bench(o, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const ArgumentError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}

}  // namespace admd::cli
