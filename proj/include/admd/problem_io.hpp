#pragma once

#include "admd/functional.hpp"
#include "admd/prox_geometry.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>

namespace admd {

/// Malformed or inconsistent problem-definition document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Contents of a problem-definition file.
///
/// The file is a JSON object:
///
///   {
///     "dimension": 2,
///     "objective": {"kind": "affine", "a": [1, 1], "b": 0},
///     "constraints": [{"kind": "affine", "a": [1, 0], "b": -1}, ...],
///     "x0": [0, 0],
///     "theta0": 2.0,
///     "epsilon": 0.1,
///     "geometry": {"kind": "ball", "center": [0, 0], "radius": 2},   (optional)
///     "known_optimum": {"x": [-1.41, -1.41], "value": -2.83}         (optional)
///   }
///
/// Functional kinds: affine {a, b}, quadratic {A, b, alpha},
/// sqrt_quadratic {Q, scale}, abs_affine {a, shift, scale},
/// max {children}. Any functional may carry "lipschitz" and
/// "lipschitz_gradient". Geometry kinds: euclidean (default), ball, simplex.
struct ProblemFile {
  ProblemInstance instance;
  ProxStructure prox;
  double epsilon;
};

ProblemFile parse_problem(const nlohmann::json& document);
ProblemFile parse_problem_text(const std::string& text);
ProblemFile load_problem(const std::filesystem::path& path);

nlohmann::json functional_to_json(const Functional& f);
Functional functional_from_json(const nlohmann::json& node, Eigen::Index dimension);

/// Inverse of parse_problem (up to number formatting).
nlohmann::json problem_to_json(const ProblemInstance& instance, const ProxStructure& prox,
                               double epsilon);

}  // namespace admd
