#include "admd/solver.hpp"

#include <cmath>
#include <limits>

namespace admd {

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::LipschitzObjective: return "lipschitz";
    case Regime::NonstandardGrowth: return "nonstandard";
  }
  return "?";
}

std::string_view to_string(Policy p) {
  switch (p) {
    case Policy::AggregateMax: return "aggregate-max";
    case Policy::FirstViolated: return "first-violated";
    case Policy::MaxViolation: return "max-violation";
    case Policy::MinDualNormViolated: return "min-dual-norm";
  }
  return "?";
}

std::string_view to_string(StopReason s) {
  switch (s) {
    case StopReason::CriterionMet: return "criterion-met";
    case StopReason::ZeroObjectiveGradient: return "zero-objective-gradient";
    case StopReason::InfeasibleConstraint: return "infeasible-constraint";
    case StopReason::IterationCap: return "iteration-cap";
  }
  return "?";
}

std::optional<Regime> parse_regime(std::string_view s) {
  for (auto r : {Regime::LipschitzObjective, Regime::NonstandardGrowth}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

std::optional<Policy> parse_policy(std::string_view s) {
  for (auto p : {Policy::AggregateMax, Policy::FirstViolated, Policy::MaxViolation,
                 Policy::MinDualNormViolated}) {
    if (to_string(p) == s) return p;
  }
  return std::nullopt;
}

std::optional<StopReason> parse_stop_reason(std::string_view s) {
  for (auto r : {StopReason::CriterionMet, StopReason::ZeroObjectiveGradient,
                 StopReason::InfeasibleConstraint, StopReason::IterationCap}) {
    if (to_string(r) == s) return r;
  }
  return std::nullopt;
}

void RunConfig::validate() const {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ArgumentError("run config: epsilon must be finite and positive");
  }
  if (max_iterations < 1) throw ArgumentError("run config: max_iterations must be >= 1");
}

namespace {

using DualNormFn = double (*)(const DualVector&);

double l2(const DualVector& p) { return p.norm(); }
double linf(const DualVector& p) { return p.lpNorm<Eigen::Infinity>(); }

DualNormFn dual_norm_of(const ProxStructure& prox) { return prox.is_euclidean() ? &l2 : &linf; }

std::optional<ConstraintChoice> choose(const ProblemInstance& problem, const Point& x,
                                       double epsilon, Policy policy, DualNormFn dual_norm) {
  const auto& g = problem.constraints();
  switch (policy) {
    case Policy::AggregateMax:
    case Policy::MaxViolation: {
      Violation worst = max_violation(g, x);
      if (worst.value <= epsilon) return std::nullopt;
      return ConstraintChoice{worst.index, worst.value, g[worst.index - 1].subgradient(x)};
    }
    case Policy::FirstViolated: {
      for (std::size_t m = 0; m < g.size(); ++m) {
        double v = g[m].value(x);
        if (v > epsilon) return ConstraintChoice{m + 1, v, g[m].subgradient(x)};
      }
      return std::nullopt;
    }
    case Policy::MinDualNormViolated: {
      std::optional<ConstraintChoice> best;
      double best_norm = std::numeric_limits<double>::infinity();
      for (std::size_t m = 0; m < g.size(); ++m) {
        double v = g[m].value(x);
        if (!(v > epsilon)) continue;
        DualVector s = g[m].subgradient(x);
        double norm = dual_norm(s);
        if (!best || norm < best_norm) {
          best_norm = norm;
          best = ConstraintChoice{m + 1, v, std::move(s)};
        }
      }
      return best;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<ConstraintChoice> select_constraint(const ProblemInstance& problem, const Point& x,
                                                  double epsilon, Policy policy) {
  return choose(problem, x, epsilon, policy, &l2);
}

std::optional<ConstraintChoice> select_constraint(const ProblemInstance& problem, const Point& x,
                                                  double epsilon, Policy policy,
                                                  const ProxStructure& prox) {
  return choose(problem, x, epsilon, policy, dual_norm_of(prox));
}

SolverReport run(const ProblemInstance& problem, const ProxStructure& prox,
                 const RunConfig& config) {
  config.validate();
  require_dimension(prox.dimension(), problem.dimension(), "prox structure");
  if (config.certificate_point) {
    require_dimension(config.certificate_point->size(), problem.dimension(), "certificate point");
  }

  const auto started = std::chrono::steady_clock::now();
  const double eps = config.epsilon;
  const double theta_sq = prox.theta0() * prox.theta0();
  const bool lipschitz = config.regime == Regime::LipschitzObjective;
  const DualNormFn dual_norm = dual_norm_of(prox);

  SolverReport report;
  report.regime = config.regime;
  report.policy = config.policy;
  report.epsilon = eps;
  report.a_priori_bound = a_priori_bound(problem, prox.theta0(), eps, config.regime);
  if (config.record_history) report.history.emplace();

  Point x = prox.anchor();
  // Running sum of 1/M_j^2: over all steps (Lipschitz regime) or over
  // non-productive steps only (nonstandard regime).
  double inverse_square_sum = 0.0;
  Point weighted_sum = Point::Zero(x.size());
  double weight_total = 0.0;
  Point best_point;
  double best_objective = std::numeric_limits<double>::infinity();
  std::optional<Point> terminal_point;

  auto criterion_met = [&] {
    if (report.productive_count == 0) return false;
    if (lipschitz) return inverse_square_sum >= 2.0 * theta_sq / (eps * eps);
    return theta_sq <= 0.5 * eps * eps *
                           (static_cast<double>(report.productive_count) + inverse_square_sum);
  };

  report.stop_reason = StopReason::IterationCap;
  while (report.total_steps < config.max_iterations) {
    const std::int64_t k = report.total_steps;
    std::optional<ConstraintChoice> violated =
        choose(problem, x, eps, config.policy, dual_norm);

    StepRecord record;
    record.index = k;
    DualVector direction;
    if (!violated) {
      const Functional& f = problem.objective();
      double value = f.value(x);
      direction = f.subgradient(x);
      double norm = dual_norm(direction);
      if (norm == 0.0) {
        report.stop_reason = StopReason::ZeroObjectiveGradient;
        terminal_point = x;
        break;
      }
      record.kind = StepKind::Productive;
      record.grad_dual_norm = norm;
      record.objective_value = value;
      if (lipschitz) {
        record.step_size = eps / (norm * norm);
        inverse_square_sum += 1.0 / (norm * norm);
        weighted_sum += record.step_size * x;
        weight_total += record.step_size;
      } else {
        record.step_size = eps / norm;
        if (value < best_objective) {
          best_objective = value;
          best_point = x;
        }
      }
      if (config.certificate_point) {
        double gap = direction.dot(x - *config.certificate_point) / norm;
        report.min_vf_gap = report.min_vf_gap ? std::min(*report.min_vf_gap, gap) : gap;
      }
      ++report.productive_count;
    } else {
      direction = std::move(violated->subgradient);
      double norm = dual_norm(direction);
      if (norm == 0.0) {
        report.stop_reason = StopReason::InfeasibleConstraint;
        terminal_point = x;
        break;
      }
      record.kind = StepKind::NonProductive;
      record.grad_dual_norm = norm;
      record.constraint_index = violated->index;
      record.step_size = eps / (norm * norm);
      inverse_square_sum += 1.0 / (norm * norm);
      ++report.nonproductive_count;
    }

    Point next = prox.mirror_step(x, record.step_size * direction);
    if (report.history) {
      record.iterate = std::move(x);
      report.history->push_back(std::move(record));
    }
    x = std::move(next);
    ++report.total_steps;

    if (criterion_met()) {
      report.stop_reason = StopReason::CriterionMet;
      break;
    }
  }

  if (terminal_point) {
    report.output_point = std::move(*terminal_point);
  } else if (report.productive_count == 0) {
    report.output_point = x;
  } else if (lipschitz) {
    report.output_point = weighted_sum / weight_total;
  } else {
    report.output_point = best_point;
  }

  report.output_objective = problem.objective().value(report.output_point);
  report.constraint_residuals.reserve(problem.constraint_count());
  for (const auto& g : problem.constraints()) {
    report.constraint_residuals.push_back(g.value(report.output_point));
  }
  report.output_max_violation = max_violation(problem.constraints(), report.output_point).value;
  report.wall_time = std::chrono::steady_clock::now() - started;
  return report;
}

double vf_gap(const Point& x, const Point& y, const Functional& objective,
              const ProxStructure& structure) {
  require_dimension(y.size(), x.size(), "vf_gap");
  DualVector g = objective.subgradient(x);
  double norm = structure.dual_norm(g);
  if (norm == 0.0) return 0.0;
  return g.dot(x - y) / norm;
}

std::int64_t iteration_bound(std::optional<double> objective_lipschitz,
                             double constraint_lipschitz, double theta0, double epsilon,
                             Regime regime) {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  if (!positive(constraint_lipschitz) || !positive(theta0) || !positive(epsilon)) {
    throw ArgumentError("iteration_bound: constants must be finite and positive");
  }
  double scale = 0.0;
  if (regime == Regime::LipschitzObjective) {
    if (!objective_lipschitz || !positive(*objective_lipschitz)) {
      throw ArgumentError("iteration_bound: objective Lipschitz constant required");
    }
    scale = std::max(*objective_lipschitz * *objective_lipschitz,
                     constraint_lipschitz * constraint_lipschitz);
  } else {
    scale = std::max(1.0, constraint_lipschitz * constraint_lipschitz);
  }
  // Decimal inputs are inexact in binary; a quotient within 1e-9 (relative)
  // of an integer is taken as that integer before the ceiling.
  long double n = 2.0L * scale * theta0 * theta0 /
                  (static_cast<long double>(epsilon) * epsilon);
  long double rounded = std::nearbyint(n);
  if (std::abs(n - rounded) <= 1e-9L * rounded) n = rounded;
  return static_cast<std::int64_t>(std::ceil(n));
}

double corollary_bound(double grad_norm_at_opt, double gradient_lipschitz, double epsilon) {
  if (!(grad_norm_at_opt >= 0.0) || !std::isfinite(grad_norm_at_opt) ||
      !(gradient_lipschitz > 0.0) || !std::isfinite(gradient_lipschitz) || !(epsilon > 0.0) ||
      !std::isfinite(epsilon)) {
    throw ArgumentError("corollary_bound: need grad norm >= 0, L > 0, eps > 0");
  }
  return epsilon * grad_norm_at_opt + 0.5 * gradient_lipschitz * epsilon * epsilon;
}

std::optional<std::int64_t> a_priori_bound(const ProblemInstance& problem, double theta0,
                                           double epsilon, Regime regime) {
  double mg = 0.0;
  for (const auto& g : problem.constraints()) {
    if (!g.lipschitz_value()) return std::nullopt;
    mg = std::max(mg, *g.lipschitz_value());
  }
  auto mf = problem.objective().lipschitz_value();
  if (regime == Regime::LipschitzObjective && !mf) return std::nullopt;
  return iteration_bound(mf, mg, theta0, epsilon, regime);
}

}  // namespace admd
