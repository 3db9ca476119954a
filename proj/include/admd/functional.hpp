#pragma once

#include "admd/types.hpp"

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

namespace admd {

class Functional;

/// <a, x> + b
struct Affine {
  DualVector a;
  double b = 0.0;
};

/// 1/2 <A x, x> - <b, x> + alpha with A symmetric positive semi-definite.
struct Quadratic {
  Matrix A;
  DualVector b;
  double alpha = 0.0;
};

/// sqrt(scale * <Q x, x>) with Q positive semi-definite. The subgradient
/// at the singular point (form equal to zero) is taken as 0.
struct SqrtQuadratic {
  Matrix Q;
  double scale = 1.0;
};

/// scale * |<a, x>| + shift. The subgradient at <a, x> = 0 is taken as 0.
struct AbsAffinePlus {
  DualVector a;
  double shift = 0.0;
  double scale = 1.0;
};

/// Pointwise maximum of the children; ties resolve to the lowest index.
struct MaxOf {
  std::vector<Functional> children;
};

struct Evaluation {
  double value = 0.0;
  DualVector subgradient;
};

/// Convex functional with a first-order (value + one subgradient) oracle.
///
/// Lipschitz metadata is optional and only used for a-priori iteration
/// bounds. `lipschitz_value` is the constant with respect to the primal norm
/// of the geometry the functional is used with; `lipschitz_gradient` is L in
/// |grad f(x) - grad f(y)|_* <= L |x - y| (for MaxOf: max over children).
class Functional {
 public:
  using Kind = std::variant<Affine, Quadratic, SqrtQuadratic, AbsAffinePlus, MaxOf>;

  explicit Functional(Kind kind, std::optional<double> lipschitz_value = std::nullopt,
                      std::optional<double> lipschitz_gradient = std::nullopt);

  const Kind& kind() const { return kind_; }
  Eigen::Index dimension() const { return dimension_; }
  std::optional<double> lipschitz_value() const { return lipschitz_value_; }
  std::optional<double> lipschitz_gradient() const { return lipschitz_gradient_; }

  Functional with_lipschitz(std::optional<double> value,
                            std::optional<double> gradient = std::nullopt) const;

  double value(const Point& x) const;
  DualVector subgradient(const Point& x) const;
  Evaluation evaluate(const Point& x) const;

 private:
  Kind kind_;
  Eigen::Index dimension_ = 0;
  std::optional<double> lipschitz_value_;
  std::optional<double> lipschitz_gradient_;
};

/// Free-function form of Functional::evaluate.
Evaluation evaluate(const Functional& oracle, const Point& x);

struct KnownOptimum {
  Point point;
  double value = 0.0;
};

/// f(x) -> min subject to g_m(x) <= 0, m = 1..M.
class ProblemInstance {
 public:
  ProblemInstance(Functional objective, std::vector<Functional> constraints,
                  std::optional<KnownOptimum> known_optimum = std::nullopt);

  const Functional& objective() const { return objective_; }
  const std::vector<Functional>& constraints() const { return constraints_; }
  std::size_t constraint_count() const { return constraints_.size(); }
  Eigen::Index dimension() const { return objective_.dimension(); }
  const std::optional<KnownOptimum>& known_optimum() const { return known_optimum_; }

 private:
  Functional objective_;
  std::vector<Functional> constraints_;
  std::optional<KnownOptimum> known_optimum_;
};

struct Violation {
  double value = 0.0;
  std::size_t index = 1;  ///< 1-based constraint index
};

/// max_m g_m(x) and the lowest attaining (1-based) index.
Violation max_violation(const std::vector<Functional>& constraints, const Point& x);

struct Region {
  Point center;
  double radius = 1.0;
};

/// Largest subgradient dual norm seen on `samples` points drawn uniformly
/// from the Euclidean ball `region` (the center is always included). This is
/// a lower bound on the true Lipschitz constant.
///
/// `dual_norm_is_linf` selects the l-infinity dual norm (simplex geometry).
double estimate_lipschitz(const Functional& oracle, const Region& region, int samples,
                          std::uint64_t seed = 0x5eed, bool dual_norm_is_linf = false);

/// Largest eigenvalue of a symmetric matrix; the gradient Lipschitz constant of
/// a Quadratic in the Euclidean geometry.
double spectral_bound(const Matrix& symmetric);

}  // namespace admd
