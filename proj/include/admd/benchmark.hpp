#pragma once

#include "admd/solver.hpp"

#include <set>
#include <string>
#include <vector>

namespace admd {

inline constexpr int kExampleCount = 6;
inline constexpr int kExampleDimension = 10;

struct ExampleSettings {
  Point x0;
  double theta0 = 3.0;
  double epsilon = 0.05;
};

/// One of the six ten-variable test problems sharing the same ten affine
/// constraints. Examples 1-3 have simple objectives, 4-6 are max-type.
struct PaperExample {
  int id = 0;
  std::string description;
  ProblemInstance instance;
  ExampleSettings settings;
  /// Regimes with a reported reference result; the others are still runnable.
  std::set<Regime> applicable_regimes;
  /// L of the objective gradient (max over pieces) when the objective is
  /// smooth or piecewise smooth with Lipschitz gradients.
  std::optional<double> gradient_lipschitz;

  /// Euclidean prox anchored at x0 with the example's Theta_0.
  ProxStructure prox() const;
  RunConfig config(Regime regime, Policy policy) const;
};

/// Coefficients of constraint m (1-based): 1 in column 1, then
/// 100(m-1) + 10j for columns j = 2..10.
DualVector example_constraint_row(int m);

PaperExample build_example(int id);

/// Reference iteration counts (algorithms 1..4 as regime x policy) from the
/// published comparison tables; nullopt for cells reported as not run, and
/// `exceeded` set for cells reported only as above a cap.
struct ReferenceCell {
  std::optional<std::int64_t> iterations;
  std::optional<std::int64_t> exceeded;
  std::optional<double> seconds;
};
ReferenceCell reference_cell(int id, Regime regime, Policy policy);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerificationResult {
  bool criterion_met = false;
  std::vector<Check> checks;

  bool all_passed() const;
};

/// Theorem-style checks for a report produced on `example`: objective gap and
/// constraint residuals at the output point, the v_f certificate (nonstandard
/// regime, when the report tracked it) and the a-priori iteration bound.
/// A report that did not meet its stopping criterion gets a single failing
/// "criterion met" check and nothing else.
VerificationResult verify_example(const SolverReport& report, const PaperExample& example);

/// Same checks for an arbitrary problem; gap checks need a known optimum.
VerificationResult verify_report(const SolverReport& report, const ProblemInstance& problem,
                                 double epsilon);

struct GridSpec {
  Point lower;
  Point upper;
  double spacing = 1e-3;
};

struct GridOptimum {
  Point point;
  double value = 0.0;
};

/// Exhaustive search over the grid points of a box that satisfy every
/// constraint (max violation <= 0). Limited to dimension <= 3.
GridOptimum brute_force_optimum(const ProblemInstance& instance, const GridSpec& grid);

}  // namespace admd
