#include "admd/benchmark.hpp"
#include "admd/problem_io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "test_utils.hpp"

namespace admd {
namespace {

using nlohmann::json;
using test::vec;

const char* kDisk = R"({
  "dimension": 2,
  "objective": {"kind": "affine", "a": [1, 1], "b": 0, "lipschitz": 1.4142135623730951},
  "constraints": [
    {"kind": "affine", "a": [1, 0], "b": -1},
    {"kind": "affine", "a": [0, 1], "b": -1}
  ],
  "x0": [0, 0],
  "theta0": 1.5,
  "epsilon": 0.1,
  "geometry": {"kind": "ball", "center": [0, 0], "radius": 2},
  "known_optimum": {"x": [-1.4142135623730951, -1.4142135623730951], "value": -2.8284271247461903}
})";

TEST(ParseProblem, DiskFile) {
  ProblemFile p = parse_problem_text(kDisk);
  EXPECT_EQ(2, p.instance.dimension());
  EXPECT_EQ(2u, p.instance.constraint_count());
  EXPECT_EQ(0.1, p.epsilon);
  EXPECT_EQ(1.5, p.prox.theta0());
  EXPECT_EQ(vec({0, 0}), p.prox.anchor());
  ASSERT_TRUE(std::holds_alternative<EuclideanBall>(p.prox.geometry()));
  EXPECT_EQ(2.0, std::get<EuclideanBall>(p.prox.geometry()).radius);
  EXPECT_EQ(-3.0, p.instance.constraints()[0].value(vec({-2, 5})));
  ASSERT_TRUE(p.instance.known_optimum());
  EXPECT_DOUBLE_EQ(-2.8284271247461903, p.instance.known_optimum()->value);
  EXPECT_DOUBLE_EQ(std::sqrt(2.0), *p.instance.objective().lipschitz_value());
}

TEST(ParseProblem, DefaultsToEuclidean) {
  json doc = json::parse(kDisk);
  doc.erase("geometry");
  doc.erase("known_optimum");
  ProblemFile p = parse_problem(doc);
  EXPECT_TRUE(std::holds_alternative<EuclideanUnconstrained>(p.prox.geometry()));
  EXPECT_FALSE(p.instance.known_optimum());
}

TEST(ParseProblem, AllFunctionalKinds) {
  json doc = json::parse(kDisk);
  doc["objective"] = {
      {"kind", "max"},
      {"children",
       {{{"kind", "quadratic"}, {"A", {{2, 0}, {0, 2}}}, {"b", {1, 0}}, {"alpha", 0.5}},
        {{"kind", "sqrt_quadratic"}, {"Q", {{1, 0}, {0, 4}}}, {"scale", 0.25}},
        {{"kind", "abs_affine"}, {"a", {1, -1}}, {"shift", 2}, {"scale", 3}}}},
      {"lipschitz_gradient", 2.0}};
  ProblemFile p = parse_problem(doc);
  const Functional& f = p.instance.objective();
  // At (1, 1): 1 + 1 - 1 + 0.5 = 1.5; sqrt(0.25 * 5); 3 * 0 + 2 = 2.
  EXPECT_DOUBLE_EQ(2.0, f.value(vec({1, 1})));
  EXPECT_EQ(2.0, *f.lipschitz_gradient());
  EXPECT_EQ(3u, std::get<MaxOf>(f.kind()).children.size());
}

TEST(ParseProblem, Errors) {
  auto fails = [](const std::function<void(json&)>& edit) {
    json doc = json::parse(kDisk);
    edit(doc);
    EXPECT_THROW(parse_problem(doc), ParseError) << doc.dump();
  };
  fails([](json& d) { d.erase("objective"); });
  fails([](json& d) { d["dimension"] = 0; });
  fails([](json& d) { d["dimension"] = 2.5; });
  fails([](json& d) { d["constraints"] = json::array(); });
  fails([](json& d) { d["x0"] = {0, 0, 0}; });
  fails([](json& d) { d["epsilon"] = -1; });
  fails([](json& d) { d["theta0"] = "big"; });
  fails([](json& d) { d["objective"]["kind"] = "cubic"; });
  fails([](json& d) { d["objective"]["a"] = {1}; });
  fails([](json& d) { d["constraints"][0]["lipschitz"] = -2; });
  fails([](json& d) { d["geometry"]["kind"] = "torus"; });
  fails([](json& d) { d["geometry"]["radius"] = 0; });
  fails([](json& d) { d["x0"] = {5, 5}; });                         // outside the ball
  fails([](json& d) { d["known_optimum"]["x"] = {3, 3}; });         // infeasible
  fails([](json& d) { d["objective"] = {{"kind", "max"}, {"children", json::array()}}; });
  fails([](json& d) {
    d["objective"] = {{"kind", "quadratic"}, {"A", {{1, 2}, {0, 1}}}};  // not symmetric
  });
  EXPECT_THROW(parse_problem_text("{\"dimension\": 2,"), ParseError);
  EXPECT_THROW(parse_problem_text("[1, 2]"), ParseError);
  EXPECT_THROW(load_problem("/nonexistent/problem.json"), ParseError);
}

TEST(ParseProblem, LoadsFromFile) {
  auto path = std::filesystem::temp_directory_path() / "admd_io_disk.json";
  std::ofstream(path) << kDisk;
  ProblemFile p = load_problem(path);
  EXPECT_EQ(2, p.instance.dimension());
  std::filesystem::remove(path);
}

// Serializing then parsing any problem yields identical oracle values.
TEST(ProblemIoProperty, RoundTrip) {
  std::mt19937_64 rng(11);
  for (int id = 1; id <= kExampleCount; ++id) {
    PaperExample ex = build_example(id);
    ProblemFile back = parse_problem(problem_to_json(ex.instance, ex.prox(), 0.05));
    EXPECT_EQ(ex.prox().anchor(), back.prox.anchor());
    EXPECT_EQ(ex.prox().theta0(), back.prox.theta0());
    EXPECT_EQ(ex.instance.objective().lipschitz_value(), back.instance.objective().lipschitz_value());
    EXPECT_EQ(ex.instance.objective().lipschitz_gradient(),
              back.instance.objective().lipschitz_gradient());
    for (int trial = 0; trial < 20; ++trial) {
      Point x = test::random_point(10, rng, 3.0);
      EXPECT_EQ(ex.instance.objective().evaluate(x).value, back.instance.objective().evaluate(x).value);
      EXPECT_EQ(ex.instance.objective().subgradient(x), back.instance.objective().subgradient(x));
      for (std::size_t m = 0; m < 10; ++m) {
        EXPECT_EQ(ex.instance.constraints()[m].value(x), back.instance.constraints()[m].value(x));
      }
    }
  }
  auto simplex = ProxStructure::simplex(3, 0.7);
  ProblemInstance p(Functional(Affine{vec({1, 2, 3}), 0.0}), {Functional(Affine{vec({1, 0, 0}), -0.5})});
  ProblemFile back = parse_problem(problem_to_json(p, simplex, 0.05));
  EXPECT_TRUE(std::holds_alternative<EntropySimplex>(back.prox.geometry()));
  EXPECT_EQ(simplex.anchor(), back.prox.anchor());
}

TEST(ProblemIo, FunctionalJson) {
  Functional f(AbsAffinePlus{vec({1, -1}), 2.0, 0.5}, 0.7);
  json j = functional_to_json(f);
  EXPECT_EQ("abs_affine", j["kind"]);
  EXPECT_EQ(0.7, j["lipschitz"]);
  Functional g = functional_from_json(j, 2);
  EXPECT_EQ(f.value(vec({0, 4})), g.value(vec({0, 4})));
  EXPECT_THROW(functional_from_json(j, 3), ParseError);
}

}  // namespace
}  // namespace admd
