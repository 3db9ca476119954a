// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "admd/benchmark.hpp"
#include "admd/solver.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

using namespace admd;

namespace {

constexpr double kEps = 0.05;
constexpr double kSlack = 1e-9;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << " [fail: " << what << "]";
    }
  }
};

using Key = std::tuple<int, Regime, Policy, std::int64_t>;
std::map<Key, SolverReport> cache;

const SolverReport& solve(int id, Regime regime, Policy policy,
                          std::int64_t cap = kDefaultIterationCap) {
  Key key{id, regime, policy, cap};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  PaperExample ex = build_example(id);
  RunConfig config = ex.config(regime, policy);
  config.max_iterations = cap;
  return cache.emplace(key, run(ex.instance, ex.prox(), config)).first->second;
}

std::string name(int id, Regime r, Policy p) {
  return "ex" + std::to_string(id) + "/" + std::string(to_string(r)) + "/" + std::string(to_string(p));
}

bool within_factor(double a, double b, double factor) { return a <= factor * b && b <= factor * a; }

Point random_point(int n, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Point v(n);
  for (auto& c : v) c = u(rng);
  return v;
}

Matrix random_psd(int n, std::mt19937_64& rng) {
  Matrix h(n, n);
  for (Eigen::Index i = 0; i < h.size(); ++i) h.data()[i] = random_point(1, rng)[0];
  return h.transpose() * h;
}

void criterion1(Outcome& o) {
  // Minimum of Example 2 over its feasible set, from an external QP solve.
  const double example2_true_opt = -0.4808250838583;
  for (int id : {1, 2, 4}) {
    PaperExample ex = build_example(id);
    for (Policy p : {Policy::AggregateMax, Policy::FirstViolated}) {
      const SolverReport& r = solve(id, Regime::LipschitzObjective, p);
      std::string n = name(id, Regime::LipschitzObjective, p);
      o.require(r.stop_reason == StopReason::CriterionMet, n + " stopped with " +
                                                                std::string(to_string(r.stop_reason)));
      double f_star = id == 2 ? example2_true_opt : ex.instance.known_optimum()->value;
      double gap = r.output_objective - f_star;
      o.require(gap <= kEps + kSlack, n + " gap " + std::to_string(gap));
      o.require(r.output_max_violation <= kEps + kSlack,
                n + " violation " + std::to_string(r.output_max_violation));
      o.detail << " " << id << ":" << to_string(p) << " N=" << r.total_steps << " gap=" << gap
               << " g=" << r.output_max_violation << ";";
    }
  }
}

void criterion2(Outcome& o) {
  const std::map<int, double> min_speedup{{1, 2.0}, {2, 3.0}, {4, 5.0}};
  for (auto [id, speedup] : min_speedup) {
    const auto& agg = solve(id, Regime::LipschitzObjective, Policy::AggregateMax);
    const auto& first = solve(id, Regime::LipschitzObjective, Policy::FirstViolated);
    double ratio = static_cast<double>(agg.total_steps) / static_cast<double>(first.total_steps);
    o.detail << " ex" << id << " " << agg.total_steps << "->" << first.total_steps << " ("
             << ratio << "x);";
    o.require(ratio >= speedup, "ex" + std::to_string(id) + " speedup " + std::to_string(ratio));
    for (Policy p : {Policy::AggregateMax, Policy::FirstViolated}) {
      const auto& r = p == Policy::AggregateMax ? agg : first;
      auto ref = reference_cell(id, Regime::LipschitzObjective, p);
      o.require(r.stop_reason == StopReason::CriterionMet && ref.iterations &&
                    within_factor(static_cast<double>(r.total_steps),
                                  static_cast<double>(*ref.iterations), 3.0),
                name(id, Regime::LipschitzObjective, p) + " count off reference");
    }
  }
}

void criterion3(Outcome& o) {
  for (int id : {3, 5, 6}) {
    const auto& agg = solve(id, Regime::NonstandardGrowth, Policy::AggregateMax);
    const auto& first = solve(id, Regime::NonstandardGrowth, Policy::FirstViolated);
    auto ref_agg = reference_cell(id, Regime::NonstandardGrowth, Policy::AggregateMax);
    auto ref_first = reference_cell(id, Regime::NonstandardGrowth, Policy::FirstViolated);
    bool done = agg.stop_reason == StopReason::CriterionMet &&
                first.stop_reason == StopReason::CriterionMet;
    o.require(done, "ex" + std::to_string(id) + " did not complete");
    o.require(first.total_steps < agg.total_steps, "ex" + std::to_string(id) + " no reduction");
    double ratio = static_cast<double>(agg.total_steps) / static_cast<double>(first.total_steps);
    double paper = static_cast<double>(*ref_agg.iterations) / static_cast<double>(*ref_first.iterations);
    o.require(within_factor(ratio, paper, 3.0), "ex" + std::to_string(id) + " ratio " +
                                                    std::to_string(ratio) + " vs " +
                                                    std::to_string(paper));
    o.detail << " ex" << id << " " << agg.total_steps << "->" << first.total_steps << " (" << ratio
             << "x, reference " << paper << "x)";
    for (const SolverReport* r : {&agg, &first}) {
      o.require(r->min_vf_gap && *r->min_vf_gap <= kEps + kSlack,
                name(id, Regime::NonstandardGrowth, r->policy) + " certificate");
    }
    o.detail << " v_f=" << (first.min_vf_gap ? *first.min_vf_gap : NAN) << ";";
  }
}

void criterion4(Outcome& o) {
  const std::int64_t cap = 1'000'000;
  for (int id : {3, 5, 6}) {
    for (Policy p : {Policy::AggregateMax, Policy::FirstViolated}) {
      const auto& r = solve(id, Regime::LipschitzObjective, p, cap);
      bool capped = r.stop_reason == StopReason::IterationCap;
      o.require(capped, name(id, Regime::LipschitzObjective, p) + " stopped at " +
                            std::to_string(r.total_steps) + " with " +
                            std::string(to_string(r.stop_reason)));
      o.detail << " " << id << ":" << to_string(p) << " "
               << (capped ? ">" + std::to_string(cap) : std::to_string(r.total_steps)) << ";";
      const auto& nonstandard = solve(id, Regime::NonstandardGrowth, p);
      o.require(nonstandard.stop_reason == StopReason::CriterionMet,
                name(id, Regime::NonstandardGrowth, p) + " did not complete");
    }
  }
}

void criterion5(Outcome& o) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(2, 8);
  std::uniform_real_distribution<double> eps_dist(0.05, 0.3);
  int instances = 0;
  std::int64_t worst_slack = INT64_MAX;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = dim(rng);
    DualVector c = random_point(n, rng);
    double mf = c.norm();
    double mg = 0.0;
    std::vector<Functional> g;
    for (int m = 0; m < 4; ++m) {
      DualVector a = random_point(n, rng);
      mg = std::max(mg, a.norm());
      double norm = a.norm();
      g.emplace_back(Affine{std::move(a), -0.2}, norm);
    }
    ProblemInstance p(Functional(Affine{c, 0.0}, mf), std::move(g));
    const double theta0 = 1.0;
    auto prox = ProxStructure::ball(Point::Zero(n), std::sqrt(2.0), Point::Zero(n), theta0);
    const double eps = eps_dist(rng);
    for (Regime regime : {Regime::LipschitzObjective, Regime::NonstandardGrowth}) {
      RunConfig config;
      config.epsilon = eps;
      config.regime = regime;
      config.policy = trial % 2 ? Policy::FirstViolated : Policy::AggregateMax;
      SolverReport r = run(p, prox, config);
      double big = regime == Regime::LipschitzObjective ? std::max(mf * mf, mg * mg)
                                                        : std::max(1.0, mg * mg);
      auto bound = static_cast<std::int64_t>(std::ceil(2.0 * big * theta0 * theta0 / (eps * eps)));
      o.require(r.total_steps <= bound, "trial " + std::to_string(trial) + " N=" +
                                            std::to_string(r.total_steps) + " > " +
                                            std::to_string(bound));
      o.require(r.stop_reason == StopReason::CriterionMet, "trial " + std::to_string(trial) +
                                                                " did not complete");
      worst_slack = std::min(worst_slack, bound - r.total_steps);
    }
    ++instances;
  }
  o.detail << " " << instances << " instances x 2 regimes; min(bound - N) = " << worst_slack;
}

void criterion6(Outcome& o) {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> dim(1, 10);
  std::uniform_real_distribution<double> step(1e-3, 2.0);
  std::exponential_distribution<double> expo(1.0);
  std::normal_distribution<double> gauss;
  const char* names[] = {"euclidean", "ball", "simplex"};
  for (int geometry = 0; geometry < 3; ++geometry) {
    double worst = -INFINITY;
    for (int trial = 0; trial < 2000; ++trial) {
      const int n = dim(rng);
      auto sample = [&]() -> Point {
        if (geometry == 0) return random_point(n, rng, 3.0);
        if (geometry == 1) {
          Point d(n);
          for (auto& c : d) c = gauss(rng);
          double r = 2.0 * std::pow(std::uniform_real_distribution<double>(0, 1)(rng), 1.0 / n);
          return d * (r / d.norm());
        }
        Point v(n);
        for (auto& c : v) c = expo(rng) + 1e-12;
        return v / v.sum();
      };
      ProxStructure prox = geometry == 0   ? ProxStructure::euclidean(random_point(n, rng), 1.0)
                           : geometry == 1 ? ProxStructure::ball(Point::Zero(n), 2.0, Point::Zero(n), 1.0)
                                           : ProxStructure::simplex(n, 1.0);
      // f alternates between smooth, nonsmooth and max-type oracles.
      Functional f = trial % 3 == 0
                         ? Functional(Quadratic{random_psd(n, rng), random_point(n, rng), 0.0})
                     : trial % 3 == 1
                         ? Functional(SqrtQuadratic{random_psd(n, rng), 1.0})
                         : Functional(MaxOf{{Functional(AbsAffinePlus{random_point(n, rng), 0.5, 2.0}),
                                             Functional(Affine{random_point(n, rng), 0.1})}});
      Point x = sample();
      Point y = sample();
      double h = step(rng);
      DualVector grad = f.subgradient(y);
      Point z = prox.mirror_step(y, grad, h);
      double dual = prox.dual_norm(grad);
      double lhs = h * grad.dot(y - x);
      double rhs = 0.5 * h * h * dual * dual + prox.bregman_divergence(y, x) -
                   prox.bregman_divergence(z, x);
      worst = std::max(worst, lhs - rhs);
    }
    o.require(worst <= 1e-9, std::string(names[geometry]) + " violation " + std::to_string(worst));
    o.detail << " " << names[geometry] << ": 2000 tuples, max(lhs - rhs) = " << worst << ";";
  }
}

void criterion7(Outcome& o) {
  std::mt19937_64 rng(4242);
  const double eps = 0.1;
  const double spacing = 0.01;
  double worst_above = -INFINITY;
  for (int trial = 0; trial < 24; ++trial) {
    const int n = 1 + trial % 3;
    DualVector c = random_point(n, rng);
    std::vector<Functional> g;
    for (int m = 0; m < 2; ++m) g.emplace_back(Affine{random_point(n, rng), -0.3});
    ProblemInstance p(Functional(Affine{c, 0.0}), g);
    auto prox = ProxStructure::ball(Point::Zero(n), 1.0, Point::Zero(n), 1.0);
    RunConfig config;
    config.epsilon = eps;
    config.policy = trial % 2 ? Policy::FirstViolated : Policy::AggregateMax;
    SolverReport r = run(p, prox, config);

    // Oracle: the same problem with the unit ball written as a constraint.
    g.emplace_back(Quadratic{Matrix::Identity(n, n), DualVector::Zero(n), -0.5});
    ProblemInstance boxed(Functional(Affine{c, 0.0}), std::move(g));
    GridOptimum grid =
        brute_force_optimum(boxed, GridSpec{-Point::Ones(n), Point::Ones(n), spacing});
    double grid_error = c.norm() * spacing * std::sqrt(static_cast<double>(n));
    double diff = r.output_objective - grid.value;
    worst_above = std::max(worst_above, diff);
    o.require(r.stop_reason == StopReason::CriterionMet, "trial " + std::to_string(trial));
    o.require(std::abs(diff) <= eps + grid_error + kSlack,
              "trial " + std::to_string(trial) + " solver " + std::to_string(r.output_objective) +
                  " grid " + std::to_string(grid.value));
  }
  o.detail << " 24 instances (n=1..3), max(f_solver - f_grid) = " << worst_above;
}

void criterion8(Outcome& o) {
  for (int id = 1; id <= kExampleCount; ++id) {
    PaperExample ex = build_example(id);
    ProblemInstance collapsed(ex.instance.objective(), {Functional(MaxOf{ex.instance.constraints()})});
    for (Regime regime : {Regime::LipschitzObjective, Regime::NonstandardGrowth}) {
      RunConfig config = ex.config(regime, Policy::AggregateMax);
      config.max_iterations = 10'000;
      config.record_history = true;
      SolverReport many = run(ex.instance, ex.prox(), config);
      SolverReport one = run(collapsed, ex.prox(), config);
      bool same = many.history->size() == one.history->size();
      for (std::size_t k = 0; same && k < many.history->size(); ++k) {
        const auto& a = (*many.history)[k];
        const auto& b = (*one.history)[k];
        same = a.iterate == b.iterate && a.step_size == b.step_size && a.kind == b.kind;
      }
      same = same && many.output_point == one.output_point;
      o.require(same, name(id, regime, Policy::AggregateMax) + " trajectories differ");
    }
  }
  o.detail << " 6 examples x 2 regimes, 10^4 steps each";
}

void criterion9(Outcome& o) {
  RunConfig config;
  config.epsilon = 0.1;
  auto prox = ProxStructure::euclidean(Point::Zero(1), 1.0);
  ProblemInstance flat(Functional(AbsAffinePlus{Point::Ones(1), 0.0, 1.0}),
                       {Functional(Affine{Point::Ones(1), -10.0})});
  SolverReport a = run(flat, prox, config);
  o.require(a.stop_reason == StopReason::ZeroObjectiveGradient && a.output_point == Point::Zero(1),
            "zero objective subgradient gave " + std::string(to_string(a.stop_reason)));
  ProblemInstance stuck(Functional(Affine{Point::Ones(1), 0.0}),
                        {Functional(AbsAffinePlus{Point::Ones(1), 1.0, 1.0})});
  SolverReport b = run(stuck, prox, config);
  o.require(b.stop_reason == StopReason::InfeasibleConstraint,
            "zero constraint subgradient gave " + std::string(to_string(b.stop_reason)));
  o.detail << " " << to_string(a.stop_reason) << ", " << to_string(b.stop_reason);
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"guarantee on examples 1, 2, 4", criterion1},
      {"first-violated speedup", criterion2},
      {"nonstandard-growth comparison", criterion3},
      {"hard cases hit the cap", criterion4},
      {"a-priori iteration bound", criterion5},
      {"mirror-step inequality", criterion6},
      {"brute-force agreement", criterion7},
      {"aggregate-max equivalence", criterion8},
      {"degenerate cases", criterion9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.passed = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    failed += !o.passed;
    std::printf("criterion %zu %s: %s |%s\n", i + 1, o.passed ? "PASS" : "FAIL", criteria[i].first,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
