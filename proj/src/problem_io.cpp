#include "admd/problem_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace admd {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const json& field(const json& node, const char* name, const std::string& where) {
  auto it = node.find(name);
  if (it == node.end()) throw ParseError(where + ": missing field '" + name + "'");
  return *it;
}

double number(const json& node, const std::string& where) {
  if (!node.is_number()) throw ParseError(where + ": expected a number");
  double v = node.get<double>();
  if (!std::isfinite(v)) throw ParseError(where + ": non-finite number");
  return v;
}

double number_field(const json& node, const char* name, const std::string& where) {
  return number(field(node, name, where), where + "." + name);
}

double number_field_or(const json& node, const char* name, double fallback,
                       const std::string& where) {
  return node.contains(name) ? number_field(node, name, where) : fallback;
}

Eigen::VectorXd vector(const json& node, Eigen::Index dimension, const std::string& where) {
  if (!node.is_array()) throw ParseError(where + ": expected an array");
  if (static_cast<Eigen::Index>(node.size()) != dimension) {
    throw ParseError(where + ": expected " + std::to_string(dimension) + " entries, got " +
                     std::to_string(node.size()));
  }
  Eigen::VectorXd v(dimension);
  for (Eigen::Index i = 0; i < dimension; ++i) {
    v[i] = number(node[static_cast<std::size_t>(i)], where + "[" + std::to_string(i) + "]");
  }
  return v;
}

Matrix matrix(const json& node, Eigen::Index dimension, const std::string& where) {
  if (!node.is_array() || static_cast<Eigen::Index>(node.size()) != dimension) {
    throw ParseError(where + ": expected " + std::to_string(dimension) + " rows");
  }
  Matrix m(dimension, dimension);
  for (Eigen::Index r = 0; r < dimension; ++r) {
    m.row(r) = vector(node[static_cast<std::size_t>(r)], dimension,
                      where + "[" + std::to_string(r) + "]")
                   .transpose();
  }
  return m;
}

json to_json(const Eigen::VectorXd& v) { return json(std::vector<double>(v.begin(), v.end())); }

json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(to_json(Eigen::VectorXd(m.row(r))));
  return rows;
}

Functional parse_functional(const json& node, Eigen::Index n, const std::string& where) {
  if (!node.is_object()) throw ParseError(where + ": expected an object");
  const json& kind_node = field(node, "kind", where);
  if (!kind_node.is_string()) throw ParseError(where + ".kind: expected a string");
  const std::string kind = kind_node.get<std::string>();

  std::optional<double> lipschitz;
  std::optional<double> lipschitz_gradient;
  if (node.contains("lipschitz")) lipschitz = number_field(node, "lipschitz", where);
  if (node.contains("lipschitz_gradient")) {
    lipschitz_gradient = number_field(node, "lipschitz_gradient", where);
  }

  Functional::Kind parsed = [&]() -> Functional::Kind {
    if (kind == "affine") {
      return Affine{vector(field(node, "a", where), n, where + ".a"),
                    number_field_or(node, "b", 0.0, where)};
    }
    if (kind == "quadratic") {
      DualVector b = node.contains("b") ? vector(node["b"], n, where + ".b")
                                        : DualVector::Zero(n);
      return Quadratic{matrix(field(node, "A", where), n, where + ".A"), std::move(b),
                       number_field_or(node, "alpha", 0.0, where)};
    }
    if (kind == "sqrt_quadratic") {
      return SqrtQuadratic{matrix(field(node, "Q", where), n, where + ".Q"),
                           number_field_or(node, "scale", 1.0, where)};
    }
    if (kind == "abs_affine") {
      return AbsAffinePlus{vector(field(node, "a", where), n, where + ".a"),
                           number_field_or(node, "shift", 0.0, where),
                           number_field_or(node, "scale", 1.0, where)};
    }
    if (kind == "max") {
      const json& children = field(node, "children", where);
      if (!children.is_array() || children.empty()) {
        throw ParseError(where + ".children: expected a non-empty array");
      }
      MaxOf max;
      for (std::size_t i = 0; i < children.size(); ++i) {
        max.children.push_back(
            parse_functional(children[i], n, where + ".children[" + std::to_string(i) + "]"));
      }
      return max;
    }
    throw ParseError(where + ": unknown functional kind '" + kind + "'");
  }();

  try {
    return Functional(std::move(parsed), lipschitz, lipschitz_gradient);
  } catch (const ArgumentError& e) {
    throw ParseError(where + ": " + e.what());
  }
}

Geometry parse_geometry(const json& node, Eigen::Index n) {
  const std::string where = "geometry";
  if (!node.is_object()) throw ParseError(where + ": expected an object");
  const json& kind_node = field(node, "kind", where);
  if (!kind_node.is_string()) throw ParseError(where + ".kind: expected a string");
  const std::string kind = kind_node.get<std::string>();
  if (kind == "euclidean") return EuclideanUnconstrained{};
  if (kind == "ball") {
    return EuclideanBall{vector(field(node, "center", where), n, where + ".center"),
                         number_field(node, "radius", where)};
  }
  if (kind == "simplex") return EntropySimplex{};
  throw ParseError(where + ": unknown geometry '" + kind + "'");
}

}  // namespace

Functional functional_from_json(const json& node, Eigen::Index dimension) {
  return parse_functional(node, dimension, "functional");
}

ProblemFile parse_problem(const json& doc) {
  if (!doc.is_object()) throw ParseError("problem: expected a JSON object");
  const json& dim_node = field(doc, "dimension", "problem");
  if (!dim_node.is_number_integer() || dim_node.get<long long>() < 1) {
    throw ParseError("problem.dimension: expected an integer >= 1");
  }
  const auto n = static_cast<Eigen::Index>(dim_node.get<long long>());

  Functional objective = parse_functional(field(doc, "objective", "problem"), n, "objective");
  const json& constraints_node = field(doc, "constraints", "problem");
  if (!constraints_node.is_array() || constraints_node.empty()) {
    throw ParseError("problem.constraints: expected a non-empty array");
  }
  std::vector<Functional> constraints;
  for (std::size_t i = 0; i < constraints_node.size(); ++i) {
    constraints.push_back(
        parse_functional(constraints_node[i], n, "constraints[" + std::to_string(i) + "]"));
  }

  Point x0 = vector(field(doc, "x0", "problem"), n, "x0");
  double theta0 = number_field(doc, "theta0", "problem");
  double epsilon = number_field(doc, "epsilon", "problem");
  if (!(epsilon > 0.0)) throw ParseError("problem.epsilon: must be positive");
  Geometry geometry = doc.contains("geometry") ? parse_geometry(doc["geometry"], n)
                                               : Geometry{EuclideanUnconstrained{}};

  std::optional<KnownOptimum> known;
  if (doc.contains("known_optimum")) {
    const json& k = doc["known_optimum"];
    known = KnownOptimum{vector(field(k, "x", "known_optimum"), n, "known_optimum.x"),
                         number_field(k, "value", "known_optimum")};
  }

  try {
    ProblemInstance instance(std::move(objective), std::move(constraints), std::move(known));
    ProxStructure prox(std::move(geometry), std::move(x0), theta0);
    return ProblemFile{std::move(instance), std::move(prox), epsilon};
  } catch (const ArgumentError& e) {
    throw ParseError(std::string("problem: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("problem: ") + e.what());
  }
}

ProblemFile parse_problem_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("problem file is not valid JSON: ") + e.what());
  }
  return parse_problem(doc);
}

ProblemFile load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open problem file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_problem_text(buffer.str());
}

json functional_to_json(const Functional& f) {
  json node = std::visit(
      overloaded{
          [](const Affine& k) { return json{{"kind", "affine"}, {"a", to_json(k.a)}, {"b", k.b}}; },
          [](const Quadratic& k) {
            return json{{"kind", "quadratic"},
                        {"A", to_json(k.A)},
                        {"b", to_json(k.b)},
                        {"alpha", k.alpha}};
          },
          [](const SqrtQuadratic& k) {
            return json{{"kind", "sqrt_quadratic"}, {"Q", to_json(k.Q)}, {"scale", k.scale}};
          },
          [](const AbsAffinePlus& k) {
            return json{{"kind", "abs_affine"},
                        {"a", to_json(k.a)},
                        {"shift", k.shift},
                        {"scale", k.scale}};
          },
          [](const MaxOf& k) {
            json children = json::array();
            for (const auto& c : k.children) children.push_back(functional_to_json(c));
            return json{{"kind", "max"}, {"children", std::move(children)}};
          }},
      f.kind());
  if (f.lipschitz_value()) node["lipschitz"] = *f.lipschitz_value();
  if (f.lipschitz_gradient()) node["lipschitz_gradient"] = *f.lipschitz_gradient();
  return node;
}

json problem_to_json(const ProblemInstance& instance, const ProxStructure& prox, double epsilon) {
  json doc;
  doc["dimension"] = instance.dimension();
  doc["objective"] = functional_to_json(instance.objective());
  doc["constraints"] = json::array();
  for (const auto& g : instance.constraints()) doc["constraints"].push_back(functional_to_json(g));
  doc["x0"] = to_json(prox.anchor());
  doc["theta0"] = prox.theta0();
  doc["epsilon"] = epsilon;
  doc["geometry"] = std::visit(
      overloaded{[](const EuclideanUnconstrained&) { return json{{"kind", "euclidean"}}; },
                 [](const EuclideanBall& b) {
                   return json{{"kind", "ball"}, {"center", to_json(b.center)}, {"radius", b.radius}};
                 },
                 [](const EntropySimplex&) { return json{{"kind", "simplex"}}; }},
      prox.geometry());
  if (const auto& k = instance.known_optimum()) {
    doc["known_optimum"] = {{"x", to_json(k->point)}, {"value", k->value}};
  }
  return doc;
}

}  // namespace admd
