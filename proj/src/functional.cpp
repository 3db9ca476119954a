#include "admd/functional.hpp"

#include <cmath>
#include <random>

namespace admd {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Eigen::Index kind_dimension(const Functional::Kind& kind) {
  return std::visit(
      overloaded{[](const Affine& f) {
                   if (!f.a.allFinite() || !std::isfinite(f.b)) {
                     throw ArgumentError("affine: non-finite parameter");
                   }
                   return f.a.size();
                 },
                 [](const Quadratic& f) {
                   if (f.A.rows() != f.A.cols()) throw ArgumentError("quadratic: A must be square");
                   require_dimension(f.b.size(), f.A.rows(), "quadratic b");
                   if (!f.A.allFinite() || !f.b.allFinite() || !std::isfinite(f.alpha)) {
                     throw ArgumentError("quadratic: non-finite parameter");
                   }
                   if (!f.A.isApprox(f.A.transpose(), 1e-12)) {
                     throw ArgumentError("quadratic: A must be symmetric");
                   }
                   return f.A.rows();
                 },
                 [](const SqrtQuadratic& f) {
                   if (f.Q.rows() != f.Q.cols()) throw ArgumentError("sqrt-quadratic: Q must be square");
                   if (!f.Q.allFinite() || !(f.scale > 0.0) || !std::isfinite(f.scale)) {
                     throw ArgumentError("sqrt-quadratic: bad parameters");
                   }
                   if (!f.Q.isApprox(f.Q.transpose(), 1e-12)) {
                     throw ArgumentError("sqrt-quadratic: Q must be symmetric");
                   }
                   return f.Q.rows();
                 },
                 [](const AbsAffinePlus& f) {
                   if (!f.a.allFinite() || !std::isfinite(f.shift) || !(f.scale >= 0.0)) {
                     throw ArgumentError("abs-affine: bad parameters");
                   }
                   return f.a.size();
                 },
                 [](const MaxOf& f) {
                   if (f.children.empty()) throw ArgumentError("max: needs at least one child");
                   Eigen::Index n = f.children.front().dimension();
                   for (const auto& child : f.children) {
                     require_dimension(child.dimension(), n, "max child");
                   }
                   return n;
                 }},
      kind);
}

void check_point(const Point& x, Eigen::Index n) {
  require_dimension(x.size(), n, "functional argument");
  if (!all_finite(x)) throw ArgumentError("functional argument: non-finite coordinate");
}

double finite_or_throw(double v) {
  if (!std::isfinite(v)) throw EvaluationError("oracle returned a non-finite value");
  return v;
}

// Index of the lowest child attaining the maximum value.
std::size_t argmax_child(const MaxOf& f, const Point& x, double* best_value) {
  std::size_t best = 0;
  double best_v = f.children[0].value(x);
  for (std::size_t i = 1; i < f.children.size(); ++i) {
    double v = f.children[i].value(x);
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  if (best_value) *best_value = best_v;
  return best;
}

}  // namespace

Functional::Functional(Kind kind, std::optional<double> lipschitz_value,
                       std::optional<double> lipschitz_gradient)
    : kind_(std::move(kind)),
      lipschitz_value_(lipschitz_value),
      lipschitz_gradient_(lipschitz_gradient) {
  dimension_ = kind_dimension(kind_);
  if (dimension_ < 1) throw ArgumentError("functional: dimension must be >= 1");
  if (lipschitz_value_ && !(*lipschitz_value_ > 0.0)) {
    throw ArgumentError("functional: Lipschitz constant must be positive");
  }
  if (lipschitz_gradient_ && !(*lipschitz_gradient_ > 0.0)) {
    throw ArgumentError("functional: gradient Lipschitz constant must be positive");
  }
}

Functional Functional::with_lipschitz(std::optional<double> value,
                                      std::optional<double> gradient) const {
  return Functional(kind_, value, gradient);
}

double Functional::value(const Point& x) const {
  check_point(x, dimension_);
  double v = std::visit(
      overloaded{[&](const Affine& f) { return f.a.dot(x) + f.b; },
                 [&](const Quadratic& f) { return 0.5 * x.dot(f.A * x) - f.b.dot(x) + f.alpha; },
                 [&](const SqrtQuadratic& f) {
                   double form = f.scale * x.dot(f.Q * x);
                   return form > 0.0 ? std::sqrt(form) : 0.0;
                 },
                 [&](const AbsAffinePlus& f) { return f.scale * std::abs(f.a.dot(x)) + f.shift; },
                 [&](const MaxOf& f) {
                   double best = 0.0;
                   argmax_child(f, x, &best);
                   return best;
                 }},
      kind_);
  return finite_or_throw(v);
}

DualVector Functional::subgradient(const Point& x) const {
  check_point(x, dimension_);
  DualVector g = std::visit(
      overloaded{[&](const Affine& f) -> DualVector { return f.a; },
                 [&](const Quadratic& f) -> DualVector { return f.A * x - f.b; },
                 [&](const SqrtQuadratic& f) -> DualVector {
                   DualVector qx = f.Q * x;
                   double form = f.scale * x.dot(qx);
                   if (!(form > 0.0)) return DualVector::Zero(x.size());
                   return (f.scale / std::sqrt(form)) * qx;
                 },
                 [&](const AbsAffinePlus& f) -> DualVector {
                   double inner = f.a.dot(x);
                   if (inner == 0.0) return DualVector::Zero(x.size());
                   return (inner > 0.0 ? f.scale : -f.scale) * f.a;
                 },
                 [&](const MaxOf& f) -> DualVector {
                   return f.children[argmax_child(f, x, nullptr)].subgradient(x);
                 }},
      kind_);
  if (!all_finite(g)) throw EvaluationError("oracle returned a non-finite subgradient");
  return g;
}

Evaluation Functional::evaluate(const Point& x) const { return {value(x), subgradient(x)}; }

Evaluation evaluate(const Functional& oracle, const Point& x) { return oracle.evaluate(x); }

ProblemInstance::ProblemInstance(Functional objective, std::vector<Functional> constraints,
                                 std::optional<KnownOptimum> known_optimum)
    : objective_(std::move(objective)),
      constraints_(std::move(constraints)),
      known_optimum_(std::move(known_optimum)) {
  if (constraints_.empty()) throw ArgumentError("problem: at least one constraint is required");
  for (const auto& g : constraints_) require_dimension(g.dimension(), dimension(), "constraint");
  if (known_optimum_) {
    require_dimension(known_optimum_->point.size(), dimension(), "known optimum");
    if (max_violation(constraints_, known_optimum_->point).value > 0.0) {
      throw ArgumentError("problem: known optimum violates a constraint");
    }
  }
}

Violation max_violation(const std::vector<Functional>& constraints, const Point& x) {
  if (constraints.empty()) throw ArgumentError("max_violation: empty constraint list");
  Violation out{constraints[0].value(x), 1};
  for (std::size_t m = 1; m < constraints.size(); ++m) {
    double v = constraints[m].value(x);
    if (v > out.value) out = {v, m + 1};
  }
  return out;
}

double estimate_lipschitz(const Functional& oracle, const Region& region, int samples,
                          std::uint64_t seed, bool dual_norm_is_linf) {
  if (samples < 2) throw ArgumentError("estimate_lipschitz: samples must be >= 2");
  require_dimension(region.center.size(), oracle.dimension(), "estimate_lipschitz region");
  if (!(region.radius >= 0.0)) throw ArgumentError("estimate_lipschitz: negative radius");
  auto dual = [&](const DualVector& g) {
    return dual_norm_is_linf ? g.lpNorm<Eigen::Infinity>() : g.norm();
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unit;
  const auto n = static_cast<double>(oracle.dimension());

  double best = dual(oracle.subgradient(region.center));
  for (int s = 1; s < samples; ++s) {
    Eigen::VectorXd dir(oracle.dimension());
    for (auto& c : dir) c = normal(rng);
    double len = dir.norm();
    if (len == 0.0) continue;
    double r = region.radius * std::pow(unit(rng), 1.0 / n);
    Point x = region.center + dir * (r / len);
    best = std::max(best, dual(oracle.subgradient(x)));
  }
  return best;
}

double spectral_bound(const Matrix& symmetric) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(symmetric, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

}  // namespace admd
