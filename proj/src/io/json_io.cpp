#include "loopfock/io/json_io.hpp"

#include <algorithm>

#include "loopfock/errors.hpp"

namespace loopfock {

namespace {

const Json& field(const Json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) {
    throw InvalidArgument(std::string(where) + ": missing field \"" + key + "\"");
  }
  return j.at(key);
}

int int_field(const Json& j, const char* key, const char* where) {
  const Json& v = field(j, key, where);
  if (!v.is_number_integer()) throw InvalidArgument(std::string(where) + ": \"" + key + "\" must be an integer");
  return v.get<int>();
}

Rational rational_of(const Json& v, const char* where) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const std::exception&) {
      throw InvalidArgument(std::string(where) + ": bad rational \"" + v.get<std::string>() + "\"");
    }
  }
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw InvalidArgument(std::string(where) + ": rational must be a \"p/q\" string or an integer");
}

const Json& array_of(const Json& v, const char* where) {
  if (!v.is_array()) throw InvalidArgument(std::string(where) + ": expected an array");
  return v;
}

}  // namespace

Json to_json(const LoopMatrix& g) {
  const int T = g.order();
  Json rows = Json::array();
  for (int r = 0; r < g.n(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < g.n(); ++c) {
      Json cell = Json::array();
      for (const auto& [e, q] : g(r, c).terms()) {
        if (e < T) cell.push_back(Json::array({e, to_string(q)}));
      }
      row.push_back(std::move(cell));
    }
    rows.push_back(std::move(row));
  }
  Json j;
  j["n"] = g.n();
  j["T"] = g.is_exact() ? Json(nullptr) : Json(T);
  j["entries"] = std::move(rows);
  return j;
}

LoopMatrix loop_matrix_from_json(const Json& j) {
  const char* where = "LoopMatrix";
  const int n = int_field(j, "n", where);
  if (n < 1) throw InvalidArgument("LoopMatrix: n must be positive");
  int T = TruncatedSeries::kExact;
  if (j.contains("T") && !j.at("T").is_null()) T = int_field(j, "T", where);
  const Json& rows = array_of(field(j, "entries", where), "LoopMatrix.entries");
  if (rows.size() != static_cast<std::size_t>(n)) throw InvalidArgument("LoopMatrix.entries: expected n rows");
  LoopMatrix g(n);
  for (int r = 0; r < n; ++r) {
    const Json& row = array_of(rows[static_cast<std::size_t>(r)], "LoopMatrix.entries row");
    if (row.size() != static_cast<std::size_t>(n)) throw InvalidArgument("LoopMatrix.entries: expected n columns");
    for (int c = 0; c < n; ++c) {
      std::map<int, Rational> terms;
      for (const Json& t : array_of(row[static_cast<std::size_t>(c)], "LoopMatrix.entries cell")) {
        if (!t.is_array() || t.size() != 2 || !t[0].is_number_integer()) {
          throw InvalidArgument("LoopMatrix.entries: terms are [exp, \"p/q\"]");
        }
        terms[t[0].get<int>()] += rational_of(t[1], "LoopMatrix.entries");
      }
      g(r, c) = TruncatedSeries(std::move(terms), T);
    }
  }
  return g;
}

Json to_json(const MeasuredElement& m) {
  Json basis = Json::array();
  for (const auto& v : m.mu.basis) {
    Json col = Json::array();
    for (const auto& q : v) col.push_back(to_string(q));
    basis.push_back(std::move(col));
  }
  Json j;
  j["l"] = m.l;
  j["g"] = to_json(m.g);
  j["basis"] = std::move(basis);
  j["scale"] = to_string(m.mu.scale);
  return j;
}

MeasuredElement measured_from_json(const Json& j) {
  const char* where = "MeasuredElement";
  MeasuredElement m;
  m.l = int_field(j, "l", where);
  m.g = loop_matrix_from_json(field(j, "g", where));
  for (const Json& col : array_of(field(j, "basis", where), "MeasuredElement.basis")) {
    NegVector v;
    for (const Json& q : array_of(col, "MeasuredElement.basis vector")) v.push_back(rational_of(q, "MeasuredElement.basis"));
    m.mu.basis.push_back(std::move(v));
  }
  m.mu.scale = rational_of(field(j, "scale", where), "MeasuredElement.scale");
  if (m.mu.scale <= 0) throw InvalidArgument("MeasuredElement.scale must be positive");
  return m;
}

Json to_json(const GaussPoly& f) {
  Json terms = Json::array();
  for (const auto& [mono, coef] : f.terms()) {
    Json slots = Json::array();
    for (auto key : mono) slots.push_back(Json::array({key_depth(key), key_coord(key)}));
    Json cs = Json::array();
    for (const auto& t : coef.terms()) cs.push_back(Json::array({to_string(t.q), t.alpha, t.beta}));
    terms.push_back(Json{{"mono", std::move(slots)}, {"coef", std::move(cs)}});
  }
  Json j;
  j["m"] = f.m();
  j["D"] = f.D();
  j["W"] = f.W();
  j["terms"] = std::move(terms);
  return j;
}

GaussPoly gauss_poly_from_json(const Json& j) {
  const char* where = "GaussPoly";
  GaussPoly f(int_field(j, "m", where), int_field(j, "D", where), int_field(j, "W", where));
  for (const Json& t : array_of(field(j, "terms", where), "GaussPoly.terms")) {
    Monomial mono;
    for (const Json& s : array_of(field(t, "mono", "GaussPoly.terms"), "GaussPoly.terms.mono")) {
      if (!s.is_array() || s.size() != 2 || !s[0].is_number_integer() || !s[1].is_number_integer()) {
        throw InvalidArgument("GaussPoly.terms.mono: slots are [depth, coord]");
      }
      const int depth = s[0].get<int>(), coord = s[1].get<int>();
      if (depth < 1 || depth > f.D() || coord < 1 || coord > f.m()) {
        throw InvalidArgument("GaussPoly.terms.mono: slot out of range");
      }
      mono.push_back(slot_key({depth, coord}));
    }
    std::sort(mono.begin(), mono.end());
    std::vector<Scalar::Term> cs;
    for (const Json& c : array_of(field(t, "coef", "GaussPoly.terms"), "GaussPoly.terms.coef")) {
      if (!c.is_array() || c.size() != 3 || !c[1].is_number_integer() || !c[2].is_number_integer()) {
        throw InvalidArgument("GaussPoly.terms.coef: terms are [\"p/q\", alpha, beta]");
      }
      cs.push_back({rational_of(c[0], "GaussPoly.terms.coef"), c[1].get<int>(), c[2].get<int>()});
    }
    f.add_term(mono, Scalar::from_terms(std::move(cs)));
  }
  return f;
}

Json to_json(const ActionConfig& cfg) {
  return Json{{"lambda", cfg.lambda},
              {"L", cfg.quad.half_width},
              {"nodes", cfg.quad.nodes},
              {"probes", cfg.probes},
              {"seed", cfg.seed}};
}

ActionConfig action_config_from_json(const Json& j, ActionConfig base) {
  if (!j.is_object()) throw InvalidArgument("config: expected an object");
  auto number = [&](const char* key) {
    if (!j.at(key).is_number()) throw InvalidArgument(std::string("config: \"") + key + "\" must be a number");
    return j.at(key).get<double>();
  };
  if (j.contains("lambda")) base.lambda = number("lambda");
  if (j.contains("L")) base.quad.half_width = number("L");
  if (j.contains("nodes")) base.quad.nodes = int_field(j, "nodes", "config");
  if (j.contains("probes")) base.probes = int_field(j, "probes", "config");
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw InvalidArgument("config: \"seed\" must be a nonnegative integer");
    base.seed = j.at("seed").get<std::uint64_t>();
  }
  base.validate();
  return base;
}

}  // namespace loopfock
