#pragma once

#include "admd/types.hpp"

#include <variant>

namespace admd {

// Supported feasible sets. Each has a closed-form mirror step.

/// X = E, d(x) = 1/2 |x - anchor|_2^2.
struct EuclideanUnconstrained {};

/// X = {x : |x - center|_2 <= radius}, d(x) = 1/2 |x - anchor|_2^2.
struct EuclideanBall {
  Point center;
  double radius = 1.0;
};

/// X = probability simplex, d(x) = sum x_i ln(x_i / anchor_i), primal norm l1.
struct EntropySimplex {};

using Geometry = std::variant<EuclideanUnconstrained, EuclideanBall, EntropySimplex>;

/// Prox structure of a problem: feasible-set geometry, the prox-function
/// minimizer x^0 (the anchor) and the radius bound Theta_0 with
/// d(x_*) <= Theta_0^2.
///
/// Immutable after construction; all member functions are pure.
class ProxStructure {
 public:
  /// Feasibility of values produced by projections is checked to this slack.
  static constexpr double kFeasibilityTolerance = 1e-12;

  ProxStructure(Geometry geometry, Point anchor, double theta0);

  static ProxStructure euclidean(Point anchor, double theta0);
  static ProxStructure ball(Point center, double radius, Point anchor, double theta0);
  /// Simplex with the uniform distribution as anchor.
  static ProxStructure simplex(Eigen::Index dimension, double theta0);

  const Geometry& geometry() const { return geometry_; }
  const Point& anchor() const { return anchor_; }
  double theta0() const { return theta0_; }
  Eigen::Index dimension() const { return anchor_.size(); }

  bool is_euclidean() const { return !std::holds_alternative<EntropySimplex>(geometry_); }

  /// Norm of the primal space: l2 for the Euclidean geometries, l1 on the simplex.
  double primal_norm(const Point& x) const;
  /// Dual norm: l2 for the Euclidean geometries, l-infinity on the simplex.
  double dual_norm(const DualVector& p) const;

  /// Prox function d(x); zero at the anchor.
  double prox(const Point& x) const;
  DualVector prox_gradient(const Point& x) const;

  /// V(x, y) = d(y) - d(x) - <grad d(x), y - x>. The first argument is the
  /// point where the gradient is taken.
  double bregman_divergence(const Point& x, const Point& y) const;

  /// Mirr_x(p) = argmin_{u in X} <p, u> + V(x, u), called with the already
  /// scaled direction h * p.
  Point mirror_step(const Point& x, const DualVector& scaled_direction) const;
  Point mirror_step(const Point& x, const DualVector& direction, double step) const;

  bool is_feasible(const Point& x, double tolerance = kFeasibilityTolerance) const;

 private:
  void check(const Eigen::VectorXd& v, const char* what) const;

  Geometry geometry_;
  Point anchor_;
  double theta0_;
};

}  // namespace admd
