#include "admd/benchmark.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace admd {
namespace {

constexpr double kCheckSlack = 1e-9;

DualVector sparse_row(std::initializer_list<std::pair<int, double>> entries) {
  DualVector a = DualVector::Zero(kExampleDimension);
  for (auto [column, value] : entries) a[column - 1] = value;
  return a;
}

std::vector<Functional> example_constraints() {
  std::vector<Functional> rows;
  for (int m = 1; m <= 10; ++m) {
    DualVector a = example_constraint_row(m);
    double norm = a.norm();
    rows.emplace_back(Affine{std::move(a), 0.0}, norm);
  }
  return rows;
}

// sqrt(0.1 (sum x_i^2 + sum x_i x_{i+1}))
Functional example1_objective() {
  Matrix q = Matrix::Identity(kExampleDimension, kExampleDimension);
  for (int i = 0; i + 1 < kExampleDimension; ++i) q(i, i + 1) = q(i + 1, i) = 0.5;
  const double scale = 0.1;
  double lipschitz = std::sqrt(scale * spectral_bound(q));
  return Functional(SqrtQuadratic{std::move(q), scale}, lipschitz);
}

// sum x_i^2 - x1 x2 + x3 - x8 + x9 x10
Functional example2_objective() {
  Matrix a = 2.0 * Matrix::Identity(kExampleDimension, kExampleDimension);
  a(0, 1) = a(1, 0) = -1.0;
  a(8, 9) = a(9, 8) = 1.0;
  DualVector b = sparse_row({{3, -1.0}, {8, 1.0}});
  double lg = spectral_bound(a);
  return Functional(Quadratic{std::move(a), std::move(b), 0.0}, std::nullopt, lg);
}

// sum 5^i x_i^2
Functional example3_objective() {
  Matrix a = Matrix::Zero(kExampleDimension, kExampleDimension);
  for (int i = 1; i <= kExampleDimension; ++i) a(i - 1, i - 1) = 2.0 * std::pow(5.0, i);
  double lg = spectral_bound(a);
  return Functional(Quadratic{std::move(a), DualVector::Zero(kExampleDimension), 0.0},
                    std::nullopt, lg);
}

// max{0.1|x1+x2+x3|+1, 0.01|x4+2x5+x6|+2, 0.001|x7+3x8+4x9+10x10|+5}
Functional example4_objective() {
  std::vector<Functional> pieces;
  double lipschitz = 0.0;
  auto add = [&](DualVector a, double shift, double scale) {
    lipschitz = std::max(lipschitz, scale * a.norm());
    pieces.emplace_back(AbsAffinePlus{std::move(a), shift, scale});
  };
  add(sparse_row({{1, 1}, {2, 1}, {3, 1}}), 1.0, 0.1);
  add(sparse_row({{4, 1}, {5, 2}, {6, 1}}), 2.0, 0.01);
  add(sparse_row({{7, 1}, {8, 3}, {9, 4}, {10, 10}}), 5.0, 0.001);
  return Functional(MaxOf{std::move(pieces)}, lipschitz);
}

// max{x1^2, 10x2^2, 50x3^2, ..., 10000x10^2}
Functional example5_objective() {
  const double weights[kExampleDimension] = {1, 10, 50, 100, 200, 400, 800, 1000, 5000, 10000};
  std::vector<Functional> pieces;
  double lg = 0.0;
  for (int i = 0; i < kExampleDimension; ++i) {
    Matrix a = Matrix::Zero(kExampleDimension, kExampleDimension);
    a(i, i) = 2.0 * weights[i];
    lg = std::max(lg, 2.0 * weights[i]);
    pieces.emplace_back(Quadratic{std::move(a), DualVector::Zero(kExampleDimension), 0.0},
                        std::nullopt, 2.0 * weights[i]);
  }
  return Functional(MaxOf{std::move(pieces)}, std::nullopt, lg);
}

// max{x1+2x2+3x3, x3+4x4+6x5, x4+3x5+6x6+7x7, 5x7+8x8+9x9, x1+10x10}
Functional example6_objective() {
  std::vector<Functional> pieces;
  double lipschitz = 0.0;
  for (DualVector a : {sparse_row({{1, 1}, {2, 2}, {3, 3}}), sparse_row({{3, 1}, {4, 4}, {5, 6}}),
                       sparse_row({{4, 1}, {5, 3}, {6, 6}, {7, 7}}),
                       sparse_row({{7, 5}, {8, 8}, {9, 9}}), sparse_row({{1, 1}, {10, 10}})}) {
    lipschitz = std::max(lipschitz, a.norm());
    pieces.emplace_back(Affine{std::move(a), 0.0});
  }
  return Functional(MaxOf{std::move(pieces)}, lipschitz);
}

const char* kDescriptions[kExampleCount] = {
    "sqrt(0.1(sum x_i^2 + sum x_i x_{i+1}))",
    "sum x_i^2 - x1 x2 + x3 - x8 + x9 x10",
    "sum 5^i x_i^2",
    "max{0.1|x1+x2+x3|+1, 0.01|x4+2x5+x6|+2, 0.001|x7+3x8+4x9+10x10|+5}",
    "max{x1^2, 10x2^2, 50x3^2, 100x4^2, 200x5^2, 400x6^2, 800x7^2, 1000x8^2, 5000x9^2, "
    "10000x10^2}",
    "max{x1+2x2+3x3, x3+4x4+6x5, x4+3x5+6x6+7x7, 5x7+8x8+9x9, x1+10x10}",
};

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

Check bounded(std::string name, double value, double bound) {
  bool ok = value <= bound;
  return {std::move(name), ok, format_value(value) + (ok ? " <= " : " > ") + format_value(bound)};
}

}  // namespace

DualVector example_constraint_row(int m) {
  if (m < 1 || m > 10) throw ArgumentError("constraint row must be in 1..10");
  DualVector a(kExampleDimension);
  a[0] = 1.0;
  for (int j = 2; j <= kExampleDimension; ++j) a[j - 1] = 100.0 * (m - 1) + 10.0 * j;
  return a;
}

ProxStructure PaperExample::prox() const {
  return ProxStructure::euclidean(settings.x0, settings.theta0);
}

RunConfig PaperExample::config(Regime regime, Policy policy) const {
  RunConfig c;
  c.epsilon = settings.epsilon;
  c.regime = regime;
  c.policy = policy;
  if (regime == Regime::NonstandardGrowth && instance.known_optimum()) {
    c.certificate_point = instance.known_optimum()->point;
  }
  return c;
}

PaperExample build_example(int id) {
  Functional objective = [&] {
    switch (id) {
      case 1: return example1_objective();
      case 2: return example2_objective();
      case 3: return example3_objective();
      case 4: return example4_objective();
      case 5: return example5_objective();
      case 6: return example6_objective();
      default: throw ArgumentError("example id must be in 1..6, got " + std::to_string(id));
    }
  }();
  Point origin = Point::Zero(kExampleDimension);
  double f0 = objective.value(origin);
  std::optional<double> lg = objective.lipschitz_gradient();
  ProblemInstance instance(std::move(objective), example_constraints(),
                           KnownOptimum{origin, f0});

  std::set<Regime> regimes{Regime::LipschitzObjective};
  if (id != 1 && id != 4) regimes.insert(Regime::NonstandardGrowth);

  return PaperExample{id,
                      kDescriptions[id - 1],
                      std::move(instance),
                      ExampleSettings{Point::Ones(kExampleDimension), 3.0, 0.05},
                      std::move(regimes),
                      lg};
}

ReferenceCell reference_cell(int id, Regime regime, Policy policy) {
  if (id < 1 || id > kExampleCount) throw ArgumentError("example id must be in 1..6");
  if (policy != Policy::AggregateMax && policy != Policy::FirstViolated) return {};
  const bool modified = policy == Policy::FirstViolated;
  struct Row {
    ReferenceCell aggregate, first;
  };
  auto done = [](std::int64_t n, double s) { return ReferenceCell{n, std::nullopt, s}; };
  auto over = [](std::int64_t cap) { return ReferenceCell{std::nullopt, cap, std::nullopt}; };
  static const Row lipschitz[kExampleCount] = {
      {done(730'829, 133), done(261'800, 40)},  {done(1'638'946, 262), done(453'580, 30)},
      {over(10'000'000), over(10'000'000)},     {done(172'821, 24), done(17'255, 1)},
      {over(1'000'000), over(1'000'000)},       {over(1'000'000), over(1'000'000)},
  };
  static const Row nonstandard[kExampleCount] = {
      {{}, {}},
      {done(1'584'616, 300), done(1'434'006, 156)},
      {done(184'706, 124), done(89'940, 110)},
      {{}, {}},
      {done(182'993, 106), done(66'095, 79)},
      {done(180'020, 101), done(24'454, 78)},
  };
  const Row& row = (regime == Regime::LipschitzObjective ? lipschitz : nonstandard)[id - 1];
  return modified ? row.first : row.aggregate;
}

bool VerificationResult::all_passed() const {
  if (!criterion_met) return false;
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

VerificationResult verify_report(const SolverReport& report, const ProblemInstance& problem,
                                 double epsilon) {
  if (report.output_point.size() != problem.dimension() ||
      report.constraint_residuals.size() != problem.constraint_count()) {
    throw ArgumentError("verify: report was not produced on this problem");
  }
  if (report.epsilon != epsilon) throw ArgumentError("verify: report epsilon differs");

  VerificationResult result;
  result.criterion_met = report.stop_reason == StopReason::CriterionMet ||
                         report.stop_reason == StopReason::ZeroObjectiveGradient;
  if (!result.criterion_met) {
    result.checks.push_back({"criterion met", false,
                             "stopped with " + std::string(to_string(report.stop_reason))});
    return result;
  }
  result.checks.push_back({"criterion met", true, std::string(to_string(report.stop_reason))});

  const double tol = epsilon + kCheckSlack;
  const auto& known = problem.known_optimum();
  if (report.regime == Regime::LipschitzObjective && known) {
    result.checks.push_back(bounded("objective gap", report.output_objective - known->value, tol));
  }
  for (std::size_t m = 0; m < report.constraint_residuals.size(); ++m) {
    result.checks.push_back(
        bounded("constraint " + std::to_string(m + 1), report.constraint_residuals[m], tol));
  }

  if (report.regime == Regime::NonstandardGrowth && known &&
      report.stop_reason == StopReason::CriterionMet) {
    std::optional<double> certificate = report.min_vf_gap;
    if (report.history) {
      // History carries the iterates; recompute from them with the l2 norm
      // used by the examples.
      std::optional<double> from_history;
      for (const auto& step : *report.history) {
        if (step.kind != StepKind::Productive) continue;
        DualVector g = problem.objective().subgradient(step.iterate);
        double norm = g.norm();
        double gap = norm == 0.0 ? 0.0 : g.dot(step.iterate - known->point) / norm;
        from_history = from_history ? std::min(*from_history, gap) : gap;
      }
      if (from_history) certificate = from_history;
    }
    if (certificate) result.checks.push_back(bounded("v_f certificate", *certificate, tol));
    if (auto lg = problem.objective().lipschitz_gradient()) {
      double grad_norm = problem.objective().subgradient(known->point).norm();
      result.checks.push_back(bounded("corollary gap", report.output_objective - known->value,
                                      corollary_bound(grad_norm, *lg, epsilon) + kCheckSlack));
    }
  }

  if (report.a_priori_bound) {
    result.checks.push_back(bounded("iteration bound", static_cast<double>(report.total_steps),
                                    static_cast<double>(*report.a_priori_bound)));
  }
  return result;
}

VerificationResult verify_example(const SolverReport& report, const PaperExample& example) {
  return verify_report(report, example.instance, example.settings.epsilon);
}

GridOptimum brute_force_optimum(const ProblemInstance& instance, const GridSpec& grid) {
  const Eigen::Index n = instance.dimension();
  if (n > 3) throw ArgumentError("brute_force_optimum: dimension must be <= 3");
  require_dimension(grid.lower.size(), n, "grid lower corner");
  require_dimension(grid.upper.size(), n, "grid upper corner");
  if (!(grid.spacing > 0.0)) throw ArgumentError("brute_force_optimum: spacing must be positive");

  std::vector<std::int64_t> counts(static_cast<std::size_t>(n));
  double total = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double span = grid.upper[i] - grid.lower[i];
    if (!(span >= 0.0)) throw ArgumentError("brute_force_optimum: empty box");
    counts[i] = static_cast<std::int64_t>(std::floor(span / grid.spacing + 1e-9)) + 1;
    total *= static_cast<double>(counts[i]);
  }
  if (total > 2e8) throw ArgumentError("brute_force_optimum: grid too large");

  GridOptimum best{Point(), std::numeric_limits<double>::infinity()};
  std::vector<std::int64_t> index(static_cast<std::size_t>(n), 0);
  Point x(n);
  while (true) {
    for (Eigen::Index i = 0; i < n; ++i) {
      x[i] = grid.lower[i] + static_cast<double>(index[i]) * grid.spacing;
    }
    if (max_violation(instance.constraints(), x).value <= 0.0) {
      double v = instance.objective().value(x);
      if (v < best.value) best = {x, v};
    }
    Eigen::Index d = 0;
    while (d < n && ++index[d] == counts[d]) index[d++] = 0;
    if (d == n) break;
  }
  if (best.point.size() == 0) throw DomainError("brute_force_optimum: no feasible grid point");
  return best;
}

}  // namespace admd
