#include "admd/prox_geometry.hpp"

#include <cmath>

namespace admd {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive_simplex_point(const Point& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) {
      throw DomainError("entropy prox: gradient point has a non-positive coordinate");
    }
  }
}

double x_log_x_over(double x, double y) { return x > 0.0 ? x * std::log(x / y) : 0.0; }

Point project_to_ball(Point u, const EuclideanBall& ball) {
  Eigen::VectorXd offset = u - ball.center;
  double norm = offset.norm();
  if (norm <= ball.radius) return u;
  u = ball.center + offset * (ball.radius / norm);
  norm = (u - ball.center).norm();
  if (norm > ball.radius + ProxStructure::kFeasibilityTolerance) {
    u = ball.center + (u - ball.center) * (ball.radius / norm);
  }
  return u;
}

Point entropic_update(const Point& x, const DualVector& scaled_direction) {
  // u_i ~ x_i exp(-p_i), evaluated in log space.
  Eigen::VectorXd logits = x.array().log() - scaled_direction.array();
  logits.array() -= logits.maxCoeff();
  Point u = logits.array().exp();
  u /= u.sum();
  double drift = std::abs(u.sum() - 1.0);
  if (drift > ProxStructure::kFeasibilityTolerance) u /= u.sum();
  return u;
}

}  // namespace

ProxStructure::ProxStructure(Geometry geometry, Point anchor, double theta0)
    : geometry_(std::move(geometry)), anchor_(std::move(anchor)), theta0_(theta0) {
  if (anchor_.size() < 1) throw ArgumentError("prox structure: dimension must be >= 1");
  if (!all_finite(anchor_)) throw ArgumentError("prox structure: anchor is not finite");
  if (!(theta0_ > 0.0) || !std::isfinite(theta0_)) {
    throw ArgumentError("prox structure: theta0 must be finite and positive");
  }
  if (auto* ball = std::get_if<EuclideanBall>(&geometry_)) {
    require_dimension(ball->center.size(), anchor_.size(), "ball center");
    if (!(ball->radius > 0.0) || !std::isfinite(ball->radius) || !all_finite(ball->center)) {
      throw ArgumentError("ball geometry: radius must be finite and positive");
    }
  }
  if (std::holds_alternative<EntropySimplex>(geometry_)) {
    require_positive_simplex_point(anchor_);
  }
  if (!is_feasible(anchor_)) throw ArgumentError("prox structure: anchor is not feasible");
}

ProxStructure ProxStructure::euclidean(Point anchor, double theta0) {
  return ProxStructure(EuclideanUnconstrained{}, std::move(anchor), theta0);
}

ProxStructure ProxStructure::ball(Point center, double radius, Point anchor, double theta0) {
  return ProxStructure(EuclideanBall{std::move(center), radius}, std::move(anchor), theta0);
}

ProxStructure ProxStructure::simplex(Eigen::Index dimension, double theta0) {
  if (dimension < 1) throw ArgumentError("simplex: dimension must be >= 1");
  return ProxStructure(EntropySimplex{},
                       Point::Constant(dimension, 1.0 / static_cast<double>(dimension)), theta0);
}

void ProxStructure::check(const Eigen::VectorXd& v, const char* what) const {
  require_dimension(v.size(), dimension(), what);
  if (!all_finite(v)) throw ArgumentError(std::string(what) + ": non-finite coordinate");
}

double ProxStructure::primal_norm(const Point& x) const {
  check(x, "primal_norm");
  return is_euclidean() ? x.norm() : x.lpNorm<1>();
}

double ProxStructure::dual_norm(const DualVector& p) const {
  check(p, "dual_norm");
  return is_euclidean() ? p.norm() : p.lpNorm<Eigen::Infinity>();
}

double ProxStructure::prox(const Point& x) const {
  check(x, "prox");
  if (is_euclidean()) return 0.5 * (x - anchor_).squaredNorm();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < 0.0) throw DomainError("entropy prox: negative coordinate");
    sum += x_log_x_over(x[i], anchor_[i]);
  }
  return sum;
}

DualVector ProxStructure::prox_gradient(const Point& x) const {
  check(x, "prox_gradient");
  if (is_euclidean()) return x - anchor_;
  require_positive_simplex_point(x);
  return (x.array() / anchor_.array()).log() + 1.0;
}

double ProxStructure::bregman_divergence(const Point& x, const Point& y) const {
  check(x, "bregman_divergence");
  check(y, "bregman_divergence");
  if (is_euclidean()) return 0.5 * (y - x).squaredNorm();
  require_positive_simplex_point(x);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y[i] < 0.0) throw DomainError("entropy prox: negative coordinate");
    sum += x_log_x_over(y[i], x[i]);
  }
  // KL between points that are normalized only up to rounding.
  sum += x.sum() - y.sum();
  return sum;
}

Point ProxStructure::mirror_step(const Point& x, const DualVector& scaled_direction) const {
  check(x, "mirror_step point");
  check(scaled_direction, "mirror_step direction");
  return std::visit(
      overloaded{
          [&](const EuclideanUnconstrained&) -> Point { return x - scaled_direction; },
          [&](const EuclideanBall& b) -> Point { return project_to_ball(x - scaled_direction, b); },
          [&](const EntropySimplex&) -> Point {
            require_positive_simplex_point(x);
            return entropic_update(x, scaled_direction);
          }},
      geometry_);
}

Point ProxStructure::mirror_step(const Point& x, const DualVector& direction, double step) const {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw ArgumentError("mirror_step: step size must be finite and positive");
  }
  return mirror_step(x, DualVector(step * direction));
}

bool ProxStructure::is_feasible(const Point& x, double tolerance) const {
  if (x.size() != dimension() || !all_finite(x)) return false;
  return std::visit(
      overloaded{[&](const EuclideanUnconstrained&) { return true; },
                 [&](const EuclideanBall& b) {
                   return (x - b.center).norm() <= b.radius + tolerance;
                 },
                 [&](const EntropySimplex&) {
                   return x.minCoeff() >= 0.0 && std::abs(x.sum() - 1.0) <= tolerance;
                 }},
      geometry_);
}

}  // namespace admd
