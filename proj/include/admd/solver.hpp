#pragma once

#include "admd/functional.hpp"
#include "admd/prox_geometry.hpp"

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace admd {

/// Step-size and stopping rule.
///
/// LipschitzObjective: h = eps / |grad|_*^2 on every step, stop once
/// sum 1/M_j^2 >= 2 Theta_0^2 / eps^2; output is the step-weighted average of
/// productive iterates.
///
/// NonstandardGrowth: h = eps / |grad f|_* on productive steps and
/// eps / |grad g|_*^2 on non-productive ones, stop once
/// Theta_0^2 <= eps^2/2 (|I| + sum_{k not in I} 1/M_k^2); output is the
/// productive iterate with the smallest objective value.
enum class Regime { LipschitzObjective, NonstandardGrowth };

/// Which violated constraint drives a non-productive step.
enum class Policy {
  AggregateMax,         ///< subgradient of g = max_m g_m (lowest attaining index)
  FirstViolated,        ///< lowest m with g_m(x) > eps
  MaxViolation,         ///< same choice as AggregateMax, named per constraint
  MinDualNormViolated,  ///< violated m with the smallest subgradient dual norm
};

enum class StopReason { CriterionMet, ZeroObjectiveGradient, InfeasibleConstraint, IterationCap };

std::string_view to_string(Regime r);
std::string_view to_string(Policy p);
std::string_view to_string(StopReason s);
std::optional<Regime> parse_regime(std::string_view s);
std::optional<Policy> parse_policy(std::string_view s);
std::optional<StopReason> parse_stop_reason(std::string_view s);

inline constexpr std::int64_t kDefaultIterationCap = 10'000'000;

struct RunConfig {
  double epsilon = 0.05;
  Regime regime = Regime::LipschitzObjective;
  Policy policy = Policy::FirstViolated;
  std::int64_t max_iterations = kDefaultIterationCap;
  bool record_history = false;
  /// When set, the run tracks min over productive k of v_f(x^k, point), the
  /// certificate of the nonstandard-growth regime, without storing history.
  std::optional<Point> certificate_point;

  void validate() const;
};

enum class StepKind { Productive, NonProductive };

struct StepRecord {
  std::int64_t index = 0;
  StepKind kind = StepKind::Productive;
  double step_size = 0.0;
  double grad_dual_norm = 0.0;
  std::optional<std::size_t> constraint_index;  ///< 1-based, non-productive only
  std::optional<double> objective_value;        ///< productive only
  Point iterate;                                ///< x^k, the point the step started from
};

struct SolverReport {
  Regime regime = Regime::LipschitzObjective;
  Policy policy = Policy::FirstViolated;
  double epsilon = 0.0;

  std::int64_t total_steps = 0;
  std::int64_t productive_count = 0;
  std::int64_t nonproductive_count = 0;

  Point output_point;
  double output_objective = 0.0;
  double output_max_violation = 0.0;
  /// g_m(output_point), m = 1..M.
  std::vector<double> constraint_residuals;

  StopReason stop_reason = StopReason::IterationCap;
  std::optional<std::int64_t> a_priori_bound;
  std::optional<double> min_vf_gap;
  std::optional<std::vector<StepRecord>> history;
  std::chrono::duration<double> wall_time{0.0};
};

struct ConstraintChoice {
  std::size_t index = 1;  ///< 1-based
  double value = 0.0;
  DualVector subgradient;
};

/// Constraint for a non-productive step at x, or nullopt when
/// max_m g_m(x) <= eps (the step is productive).
std::optional<ConstraintChoice> select_constraint(const ProblemInstance& problem, const Point& x,
                                                  double epsilon, Policy policy);
/// Same, measuring subgradients in the dual norm of `prox` (matters only for
/// MinDualNormViolated; the overload above uses l2).
std::optional<ConstraintChoice> select_constraint(const ProblemInstance& problem, const Point& x,
                                                  double epsilon, Policy policy,
                                                  const ProxStructure& prox);

/// Runs the adaptive mirror descent from x^0 = prox.anchor().
SolverReport run(const ProblemInstance& problem, const ProxStructure& prox,
                 const RunConfig& config);

/// v_f(x, y) = <grad f(x) / |grad f(x)|_*, x - y>, or 0 when grad f(x) = 0.
double vf_gap(const Point& x, const Point& y, const Functional& objective,
              const ProxStructure& structure);

/// ceil(2 max{M_f^2, M_g^2} Theta_0^2 / eps^2) for LipschitzObjective (M_f
/// required), ceil(2 max{1, M_g^2} Theta_0^2 / eps^2) for NonstandardGrowth.
std::int64_t iteration_bound(std::optional<double> objective_lipschitz,
                             double constraint_lipschitz, double theta0, double epsilon,
                             Regime regime);

/// eps * |grad f(x_*)|_* + L eps^2 / 2.
double corollary_bound(double grad_norm_at_opt, double gradient_lipschitz, double epsilon);

/// The a-priori bound from the declared Lipschitz metadata of the problem,
/// or nullopt when a required constant is missing.
std::optional<std::int64_t> a_priori_bound(const ProblemInstance& problem, double theta0,
                                           double epsilon, Regime regime);

}  // namespace admd
