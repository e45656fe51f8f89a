#include "loopfock/suites/suites.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <random>
#include <set>

#include "loopfock/action/loop_action.hpp"
#include "loopfock/dvr/random_loop.hpp"
#include "loopfock/dvr/smith.hpp"
#include "loopfock/errors.hpp"
#include "loopfock/functionals/highest_weight.hpp"
#include "loopfock/functionals/whittaker.hpp"
#include "loopfock/hecke/circle.hpp"
#include "loopfock/hecke/padic.hpp"
#include "loopfock/semigroup/measured.hpp"

namespace loopfock {

ReportFormat parse_format(const std::string& s) {
  if (s == "json") return ReportFormat::json;
  if (s == "csv") return ReportFormat::csv;
  if (s == "text") return ReportFormat::text;
  throw ConfigError("format", "expected json, csv or text, got \"" + s + "\"");
}

std::string to_string(ReportFormat f) {
  switch (f) {
    case ReportFormat::json:
      return "json";
    case ReportFormat::csv:
      return "csv";
    case ReportFormat::text:
      return "text";
  }
  return "text";
}

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> names{"levels",   "brackets", "copies", "eigen",      "chevalley",
                                              "highest_weight", "semigroup", "snf", "kfixed", "intertwine",
                                              "whittaker", "hecke"};
  return names;
}

bool is_exact_suite(const std::string& name) {
  return name != "kfixed" && name != "intertwine" && name != "whittaker";
}

void SuiteConfig::validate() const {
  if (suites.empty()) throw ConfigError("suite", "empty suite list");
  for (const auto& s : suites) {
    if (s == "all") continue;
    const auto& k = known_suites();
    if (std::find(k.begin(), k.end(), s) == k.end()) throw ConfigError("suite", "unknown suite \"" + s + "\"");
  }
  if (n < 2 || n > 4) throw ConfigError("n", "must be in 2..4");
  if (depth < 1 || depth > 40) throw ConfigError("depth", "must be in 1..40");
  if (window < 1) throw ConfigError("window", "must be at least 1");
  if (window > depth) throw ConfigError("window", "must not exceed depth");
  if (!(lambda > 0) || !std::isfinite(lambda)) throw ConfigError("lambda", "must be a positive number");
  if (quad.nodes < 8) throw ConfigError("nodes", "must be at least 8");
  if (!(quad.half_width >= 4) || !std::isfinite(quad.half_width)) throw ConfigError("half_width", "must be at least 4");
  if (probes < 1) throw ConfigError("probes", "must be at least 1");
}

namespace {

template <class T>
T typed(const Json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    throw ConfigError(key, "wrong type");
  }
}

}  // namespace

SuiteConfig config_from_json(const Json& j, SuiteConfig base) {
  if (!j.is_object()) throw ConfigError("<root>", "expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "suites" || key == "suite") {
      base.suites.clear();
      if (value.is_string()) {
        base.suites.push_back(value.get<std::string>());
      } else if (value.is_array()) {
        for (const auto& s : value) {
          if (!s.is_string()) throw ConfigError(key, "entries must be strings");
          base.suites.push_back(s.get<std::string>());
        }
      } else {
        throw ConfigError(key, "expected a string or an array of strings");
      }
    } else if (key == "n") {
      base.n = typed<int>(j, key);
    } else if (key == "model") {
      const auto m = typed<std::string>(j, key);
      if (m != "vector" && m != "matrix") throw ConfigError(key, "expected vector or matrix");
      base.kind = m == "vector" ? ModelKind::vector : ModelKind::matrix;
    } else if (key == "depth" || key == "D") {
      base.depth = typed<int>(j, key);
    } else if (key == "window" || key == "W") {
      base.window = typed<int>(j, key);
    } else if (key == "lambda") {
      base.lambda = typed<double>(j, key);
    } else if (key == "nodes") {
      base.quad.nodes = typed<int>(j, key);
    } else if (key == "half_width" || key == "L") {
      base.quad.half_width = typed<double>(j, key);
    } else if (key == "probes") {
      base.probes = typed<int>(j, key);
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) throw ConfigError(key, "must be a nonnegative integer");
      base.seed = value.get<std::uint64_t>();
    } else if (key == "out") {
      base.out = typed<std::string>(j, key);
    } else if (key == "format") {
      base.format = parse_format(typed<std::string>(j, key));
    } else {
      throw ConfigError(key, "unknown key");
    }
  }
  return base;
}

Json to_json(const SuiteConfig& cfg) {
  return Json{{"suites", cfg.suites},        {"n", cfg.n},
              {"model", to_string(cfg.kind)}, {"depth", cfg.depth},
              {"window", cfg.window},         {"lambda", cfg.lambda},
              {"nodes", cfg.quad.nodes},      {"half_width", cfg.quad.half_width},
              {"probes", cfg.probes},         {"seed", cfg.seed}};
}

std::size_t Report::passed() const {
  return static_cast<std::size_t>(std::count_if(cases.begin(), cases.end(), [](const CaseRecord& c) { return c.pass; }));
}

namespace {

using Cases = std::vector<CaseRecord>;

int word_cost(const std::vector<Generator>& word) {
  int c = 0;
  for (const auto& g : word) c += window_cost(g);
  return c;
}

Json word_json(const std::vector<Generator>& word) {
  Json j = Json::array();
  for (const auto& g : word) j.push_back(g.to_string());
  return j;
}

std::vector<Copy> copies_of(const FockModel& model) {
  if (model.kind == ModelKind::vector) return {Copy::single};
  return {Copy::left, Copy::right};
}

CaseRecord exact_case(const std::string& suite, std::string id, std::size_t terms, std::optional<bool> stable, bool ok,
                      Json params) {
  CaseRecord c;
  c.suite = suite;
  c.id = std::move(id);
  c.exact = true;
  c.residual = static_cast<double>(terms);
  c.tolerance = 0.0;
  c.stable_at_d_plus_2 = stable;
  c.pass = ok && terms == 0 && stable.value_or(true);
  c.params = std::move(params);
  return c;
}

CaseRecord numeric_case(const std::string& suite, std::string id, double residual, double tol, Json params) {
  CaseRecord c;
  c.suite = suite;
  c.id = std::move(id);
  c.exact = false;
  c.residual = residual;
  c.tolerance = tol;
  c.pass = std::isfinite(residual) && residual <= tol;
  c.params = std::move(params);
  return c;
}

Cases run_levels(const SuiteConfig& cfg) {
  Cases out;
  const FockModel model = cfg.model();
  const Rational expected = model.kind == ModelKind::vector ? 1 : model.n;
  for (Copy copy : copies_of(model)) {
    for (int u = 1; u <= model.n; ++u) {
      for (int v = 1; v <= model.n; ++v) {
        if (u == v) continue;
        for (int m = 1; m <= 2; ++m) {
          const Scalar kappa = measure_level(model, u, v, m, model.vacuum(cfg.depth), copy);
          const Scalar again = measure_level(model, u, v, m, model.vacuum(cfg.depth + 2), copy);
          const bool ok = kappa == Scalar(expected);
          out.push_back(exact_case("levels", "u=" + std::to_string(u) + " v=" + std::to_string(v) + " m=" +
                                                 std::to_string(m) + " copy=" + to_string(copy),
                                   ok ? 0 : 1, again == kappa, ok,
                                   Json{{"n", model.n},
                                        {"model", to_string(model.kind)},
                                        {"D", cfg.depth},
                                        {"copy", to_string(copy)},
                                        {"kappa", kappa.to_string()},
                                        {"expected", to_string(expected)}}));
        }
      }
    }
  }
  return out;
}

// All unordered pairs at n = 2, otherwise a seeded sample of 200 distinct pairs.
std::vector<std::pair<std::size_t, std::size_t>> bracket_pairs(std::size_t count, int n, std::mt19937_64& rng) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i; j < count; ++j) pairs.emplace_back(i, j);
  }
  if (n == 2 || pairs.size() <= 200) return pairs;
  std::shuffle(pairs.begin(), pairs.end(), rng);
  pairs.resize(200);
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

Cases run_brackets(const SuiteConfig& cfg) {
  Cases out;
  const FockModel model = cfg.model();
  const Rational level = model.kind == ModelKind::vector ? 1 : model.n;
  std::mt19937_64 rng(cfg.seed);
  for (Copy copy : copies_of(model)) {
    const auto gens = sl_generators(model, 2, copy);
    std::vector<std::vector<Generator>> words{{}};
    while (words.size() < 3) {
      for (const auto& tv : generate_vectors(model, gens, 1, 2, 1, rng)) {
        if (!tv.word.empty()) words.push_back(tv.word);
      }
    }
    for (const auto& [i, j] : bracket_pairs(gens.size(), model.n, rng)) {
      const Generator& a = gens[i];
      const Generator& b = gens[j];
      for (const auto& word : words) {
        const int D = std::max(cfg.depth, cfg.window + window_cost(a) + window_cost(b) + word_cost(word));
        const GaussPoly f = regenerate(model, word, D);
        const GaussPoly r = bracket_residual(model, a, b, f, level);
        const GaussPoly g = apply_word(model, {a, b}, f);
        const std::size_t eig = eigen_residual(model, g).window_term_count();
        const GaussPoly f2 = regenerate(model, word, D + 2);
        const bool stable = window_equal(r, bracket_residual(model, a, b, f2, level), r.W()) &&
                            window_equal(g, apply_word(model, {a, b}, f2), g.W());
        const std::size_t terms = r.window_term_count();
        out.push_back(exact_case("brackets", a.to_string() + " , " + b.to_string() + " @ " + word_json(word).dump(),
                                 terms + eig, stable, r.W() >= cfg.window,
                                 Json{{"a", a.to_string()},
                                      {"b", b.to_string()},
                                      {"word", word_json(word)},
                                      {"n", model.n},
                                      {"model", to_string(model.kind)},
                                      {"D", D},
                                      {"W_final", r.W()},
                                      {"residual_terms", terms},
                                      {"eigen_residual_terms", eig}}));
      }
    }
  }
  return out;
}

Cases run_copies(const SuiteConfig& cfg) {
  Cases out;
  const FockModel model = FockModel::matrix_model(cfg.n);
  for (Copy copy : {Copy::left, Copy::right}) {
    const Scalar kappa = measure_level(model, 1, 2, 1, model.vacuum(cfg.depth), copy);
    const Scalar again = measure_level(model, 1, 2, 1, model.vacuum(cfg.depth + 2), copy);
    const bool ok = kappa == Scalar(model.n);
    out.push_back(exact_case("copies", "level copy=" + to_string(copy), ok ? 0 : 1, again == kappa, ok,
                             Json{{"n", model.n},
                                  {"model", "matrix"},
                                  {"copy", to_string(copy)},
                                  {"kappa", kappa.to_string()},
                                  {"expected", model.n}}));
  }
  for (const auto& a : sl_generators(model, 1, Copy::left)) {
    for (const auto& b : sl_generators(model, 1, Copy::right)) {
      const int D = cfg.window + window_cost(a) + window_cost(b);
      const GaussPoly r = commuting_copies_residual(model, a, b, model.vacuum(D));
      const GaussPoly r2 = commuting_copies_residual(model, a, b, model.vacuum(D + 2));
      out.push_back(exact_case("copies", a.to_string() + " , " + b.to_string(), r.window_term_count(),
                               window_equal(r, r2, r.W()), r.W() >= cfg.window,
                               Json{{"a", a.to_string()},
                                    {"b", b.to_string()},
                                    {"n", model.n},
                                    {"model", "matrix"},
                                    {"D", D},
                                    {"W_final", r.W()}}));
    }
  }
  return out;
}

Cases run_eigen(const SuiteConfig& cfg) {
  Cases out;
  const FockModel model = cfg.model();
  const GaussPoly phi = model.vacuum(cfg.depth);
  {
    const GaussPoly r = eigen_residual(model, phi);
    const GaussPoly r2 = eigen_residual(model, model.vacuum(cfg.depth + 2));
    out.push_back(exact_case("eigen", "vacuum", r.window_term_count(), window_equal(r, r2, r.W()), true,
                             Json{{"n", model.n}, {"model", to_string(model.kind)}, {"D", cfg.depth}}));
  }
  std::mt19937_64 rng(cfg.seed + 1);
  const auto alphabet = sl_generators(model, 2, copies_of(model).front());
  for (const auto& tv : generate_vectors(model, alphabet, 20, 3, cfg.window, rng)) {
    const GaussPoly r = eigen_residual(model, tv.f);
    const int D = cfg.window + word_cost(tv.word);
    const GaussPoly f2 = regenerate(model, tv.word, D + 2);
    const bool stable = window_equal(tv.f, f2, tv.f.W()) && window_equal(r, eigen_residual(model, f2), r.W());
    out.push_back(exact_case("eigen", word_json(tv.word).dump(), r.window_term_count(), stable, true,
                             Json{{"n", model.n}, {"model", to_string(model.kind)}, {"D", D},
                                  {"word", word_json(tv.word)}}));
  }
  // x_{-1}^1 phi is not in the eigenspace; the case passes when the residual survives.
  const GaussPoly bad = eigen_residual(model, mul_var(phi, {1, 1}));
  CaseRecord c = exact_case("eigen", "negative control x_{-1}^1 phi", 0, std::nullopt, bad.window_term_count() > 0,
                            Json{{"n", model.n}, {"expect", "nonzero"},
                                 {"residual_terms", bad.window_term_count()}});
  out.push_back(c);
  return out;
}

Cases run_chevalley(const SuiteConfig& cfg) {
  Cases out;
  const FockModel model = cfg.model();
  for (Copy copy : copies_of(model)) {
    for (int u = 1; u <= model.n; ++u) {
      for (int v = 1; v <= model.n; ++v) {
        if (u == v) continue;
        for (int m = 0; m <= 3; ++m) {
          const auto r = chevalley_residual(model, u, v, m, cfg.depth, copy);
          const auto r2 = chevalley_residual(model, u, v, m, cfg.depth + 2, copy);
          const std::size_t terms = r.offdiag.window_term_count() + r.cartan.window_term_count();
          const bool stable = window_equal(r.offdiag, r2.offdiag, r.offdiag.W()) &&
                              window_equal(r.cartan, r2.cartan, r.cartan.W());
          out.push_back(exact_case("chevalley",
                                   "u=" + std::to_string(u) + " v=" + std::to_string(v) + " m=" + std::to_string(m) +
                                       " copy=" + to_string(copy),
                                   terms, stable, r.offdiag.W() >= cfg.window,
                                   Json{{"n", model.n}, {"model", to_string(model.kind)}, {"D", cfg.depth},
                                        {"copy", to_string(copy)}, {"W_final", r.offdiag.W()}}));
        }
      }
    }
  }
  return out;
}

Cases run_highest_weight(const SuiteConfig& cfg) {
  Cases out;
  const FockModel model = FockModel::vector_model(cfg.n);
  std::mt19937_64 rng(cfg.seed + 100 + static_cast<unsigned>(cfg.n));
  const auto gens = positive_and_cartan_generators(cfg.n, 2);
  for (const auto& tv : generate_vectors(model, sl_generators(model, 2, Copy::single), 100, 3, 1, rng)) {
    const int D = 1 + word_cost(tv.word);
    const GaussPoly f2 = regenerate(model, tv.word, D + 2);
    std::size_t bad = 0;
    bool stable = window_equal(tv.f, f2, tv.f.W());
    for (int k = 1; k <= cfg.n; ++k) {
      for (const auto& g : gens) {
        const Scalar r = highest_weight_residual(k, g, tv.f);
        bad += r.is_zero() ? 0 : 1;
        stable = stable && highest_weight_residual(k, g, f2) == r;
      }
    }
    out.push_back(exact_case("highest_weight", word_json(tv.word).dump(), bad, stable, true,
                             Json{{"n", cfg.n}, {"D", D}, {"word", word_json(tv.word)},
                                  {"checks", static_cast<std::size_t>(cfg.n) * gens.size()}}));
  }
  for (const auto& e : weight_table(gaussian(cfg.n, 3))) {
    const bool ok = e.measured == e.expected;
    out.push_back(exact_case("highest_weight", "weight k=" + std::to_string(e.k) + " j=" + std::to_string(e.j),
                             ok ? 0 : 1, std::nullopt, ok,
                             Json{{"n", cfg.n}, {"k", e.k}, {"j", e.j}, {"measured", to_string(e.measured)},
                                  {"expected", e.expected}}));
  }
  const Rational K = dual_level(cfg.n);
  out.push_back(exact_case("highest_weight", "<Lambda_k, K>", K == -1 ? 0 : 1, std::nullopt, K == -1,
                           Json{{"n", cfg.n}, {"measured", to_string(K)}, {"expected", -1}}));
  return out;
}

MeasuredElement random_measured(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> num(1, 7);
  const LoopMatrix g = sample::random_structured_matrix(rng, n, 2);
  HaarMeasure mu = unit_measure(g);
  mu.scale = Rational(num(rng)) / num(rng);
  return MeasuredElement{0, g, mu};
}

Cases run_semigroup(const SuiteConfig& cfg) {
  Cases out;
  std::mt19937_64 rng(cfg.seed + 200);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 2;
    const MeasuredElement a = random_measured(rng, n), b = random_measured(rng, n), c = random_measured(rng, n);
    const MeasuredElement ab_c = convolve(convolve(a, b), c);
    const MeasuredElement a_bc = convolve(a, convolve(b, c));
    const bool ok = same_pair(ab_c, a_bc) && ab_c.g.agrees_with(a.g * b.g * c.g) && ab_c.mu.scale > 0;
    out.push_back(exact_case("semigroup", "associativity #" + std::to_string(trial), ok ? 0 : 1, std::nullopt, ok,
                             Json{{"law", "associativity"}, {"n", n}}));
  }
  int index = 0;
  for (int c = 1; c <= 3; ++c) {
    for (int k = 0; k <= 2; ++k) {
      for (int n = 2; n <= 3; ++n) {
        const Rational got = commutation_scalar(LoopMatrix::scalar(n, TruncatedSeries(Rational(c))), k);
        const Rational want = pow_rational(c, k * n);
        out.push_back(exact_case("semigroup", "commutation #" + std::to_string(index++), got == want ? 0 : 1,
                                 std::nullopt, got == want,
                                 Json{{"law", "commutation"}, {"u", "scalar " + std::to_string(c)}, {"k", k},
                                      {"n", n}, {"measured", to_string(got)}, {"expected", to_string(want)}}));
      }
    }
  }
  while (index < 50) {
    const int n = 2 + index % 2;
    const int k = 1 + index % 3;
    LoopMatrix u(n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) u(r, c) = sample::random_poly(rng, 0, 2, TruncatedSeries::kExact);
    }
    RationalMatrix u0(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) u0[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = u(r, c).coeff(0);
    }
    const Rational d0 = determinant(u0);
    if (d0 == 0) continue;
    const Rational got = commutation_scalar(u, k);
    const Rational want = pow_rational(abs_value(d0), k);
    out.push_back(exact_case("semigroup", "commutation #" + std::to_string(index++), got == want ? 0 : 1,
                             std::nullopt, got == want,
                             Json{{"law", "commutation"}, {"u", u.to_string()}, {"k", k}, {"n", n},
                                  {"measured", to_string(got)}, {"expected", to_string(want)}}));
  }
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 2;
    MeasuredElement m = standard_element(sample::random_gl0_matrix(rng, n, 2), trial % 3 - 1);
    m.mu.scale *= Rational(trial % 4 + 1) / 2;
    const bool ok = is_identity_class(convolve(m, invert(m)));
    out.push_back(exact_case("semigroup", "inverse #" + std::to_string(trial), ok ? 0 : 1, std::nullopt, ok,
                             Json{{"law", "inverse"}, {"n", n}}));
  }
  return out;
}

Cases run_snf(const SuiteConfig& cfg) {
  Cases out;
  std::mt19937_64 rng(cfg.seed + 300);
  constexpr int kOrder = 12;
  int trial = 0;
  while (static_cast<int>(out.size()) < 200) {
    const int n = 2 + trial % 2;
    const LoopMatrix g = trial % 3 == 0 ? sample::random_semigroup_matrix(rng, n, 2, kOrder)
                                        : sample::random_structured_matrix(rng, n, 2, kOrder);
    ++trial;
    const ValDet vd = val_det(g);
    if (vd.N >= kOrder) continue;
    const SmithDecomposition d = smith_decompose(g);
    const bool rec = reconstruct(d).agrees_with(g, kOrder);
    const LatticeQuotient q = lattice_quotient(g, d);
    const bool dim_ok = q.dim == vd.N;
    Json k = Json::array();
    for (int e : d.k) k.push_back(e);
    out.push_back(exact_case("snf", "matrix #" + std::to_string(out.size()), (rec ? 0 : 1) + (dim_ok ? 0 : 1),
                             std::nullopt, true,
                             Json{{"n", n}, {"k", k}, {"val_det", vd.N}, {"dim", q.dim}, {"T", d.T}}));
  }
  return out;
}

ActionConfig action_config(const SuiteConfig& cfg) {
  ActionConfig a;
  a.lambda = cfg.lambda;
  a.quad = cfg.quad;
  a.probes = cfg.probes;
  a.seed = cfg.seed;
  return a;
}

TruncatedSeries T(const Rational& c, int e = 0) { return TruncatedSeries::monomial(c, e); }

LoopMatrix rotation(const Rational& c, const Rational& s, int shift) {
  return LoopMatrix(2, {T(c), T(s, shift), T(-s, -shift), T(c)});
}

Json quad_json(const SuiteConfig& cfg) {
  return Json{{"lambda", cfg.lambda}, {"nodes", cfg.quad.nodes}, {"half_width", cfg.quad.half_width},
              {"probes", cfg.probes}, {"seed", cfg.seed}};
}

Cases run_kfixed(const SuiteConfig& cfg) {
  Cases out;
  const ActionConfig acfg = action_config(cfg);
  const KFixedResult id = k_fixed_residual(LoopMatrix::identity(2), acfg);
  out.push_back(numeric_case("kfixed", "identity", id.residual, 1e-15, quad_json(cfg)));
  const KFixedResult rot = k_fixed_residual(rotation(Rational(3, 5), Rational(4, 5), 1), acfg);
  Json p = quad_json(cfg);
  p["dim"] = rot.dim;
  p["l"] = rot.l;
  p["scalar"] = rot.scalar;
  p["expected_scalar"] = rot.expected_scalar;
  out.push_back(numeric_case("kfixed", "loop rotation (3/5, 4/5)", rot.residual, 1e-8, p));
  out.push_back(numeric_case("kfixed", "loop rotation scalar", std::abs(rot.scalar - rot.expected_scalar), 1e-8, p));
  for (const auto& [c, s] : std::vector<std::pair<Rational, Rational>>{
           {Rational(3, 5), Rational(4, 5)}, {Rational(5, 13), Rational(12, 13)}, {Rational(8, 17), Rational(-15, 17)}}) {
    const KFixedResult r = k_fixed_residual(rotation(c, s, 0), acfg);
    Json q = quad_json(cfg);
    q["dim"] = r.dim;
    out.push_back(numeric_case("kfixed", "constant rotation (" + to_string(c) + ", " + to_string(s) + ")", r.residual,
                               1e-12, q));
  }
  return out;
}

Cases run_intertwine(const SuiteConfig& cfg) {
  Cases out;
  const ActionConfig acfg = action_config(cfg);
  GaussPoly f(2, 3, 3);
  f.add_term({}, Scalar(1));
  f.add_term(monomial_of({{1, 1}, {2, 2}}), Scalar(1));
  const MeasuredElement rot = standard_element(rotation(Rational(3, 5), Rational(4, 5), 0));
  const MeasuredElement diag = standard_element(LoopMatrix::diag_monomial({2, 0}), -1);
  struct PiC {
    double c;
    const MeasuredElement* m;
    const char* name;
    double tol;
  };
  for (const PiC& k : {PiC{1.0, &rot, "constant rotation", 1e-12}, PiC{2.0, &rot, "constant rotation", 1e-10},
                       PiC{1.0, &diag, "(t^-1 I, (diag(t^2, 1), mu_st))", 1e-12},
                       PiC{2.0, &diag, "(t^-1 I, (diag(t^2, 1), mu_st))", 1e-6},
                       PiC{-0.5, &diag, "(t^-1 I, (diag(t^2, 1), mu_st))", 1e-6}}) {
    Json p = quad_json(cfg);
    p["c"] = k.c;
    p["g"] = k.name;
    out.push_back(numeric_case("intertwine", "pi_c c=" + Json(k.c).dump() + " g=" + k.name,
                               pi_c_intertwine_residual(k.c, *k.m, f, acfg), k.tol, p));
  }
  struct Central {
    TruncatedSeries a;
    const char* a_name;
    const MeasuredElement* m;
    const char* name;
    double tol;
  };
  for (const Central& k : {Central{T(1), "1", &rot, "constant rotation", 1e-12},
                           Central{T(1, 1), "t", &rot, "constant rotation", 1e-8},
                           Central{T(1) + T(1, 1), "1 + t", &diag, "(t^-1 I, (diag(t^2, 1), mu_st))", 1e-6}}) {
    Json p = quad_json(cfg);
    p["a"] = k.a_name;
    p["g"] = k.name;
    out.push_back(numeric_case("intertwine", std::string("central a=") + k.a_name + " g=" + k.name,
                               central_G_commute_residual(k.a, *k.m, f, acfg), k.tol, p));
  }
  return out;
}

Json complex_json(std::complex<double> z) { return Json::array({z.real(), z.imag()}); }

CaseRecord whittaker_case(const std::string& functional, int n, const std::vector<double>& c,
                          const std::vector<Rational>& params, WhittakerSide side, const CovarianceResult& r,
                          int nodes, double tol) {
  Json up = Json::array();
  for (const auto& q : params) up.push_back(to_string(q));
  const std::string side_name = side == WhittakerSide::first ? "first" : "second";
  Json p{{"functional", functional},
         {"n", n},
         {"side", side_name},
         {"c", c},
         {"u_params", up},
         {"lhs", complex_json(r.lhs)},
         {"rhs", complex_json(r.rhs)},
         {"relerr", r.relerr},
         {"change_of_variable_relerr", r.change_of_variable_relerr},
         {"error_estimate", std::max(r.lhs_error_estimate, r.rhs_error_estimate)},
         {"nodes", nodes}};
  CaseRecord rec = numeric_case("whittaker", functional + " " + side_name + " " + up.dump() + " c=" + Json(c).dump(),
                                r.relerr, tol, p);
  rec.pass = rec.pass && !r.rhs_near_zero;
  return rec;
}

Cases run_whittaker(const SuiteConfig& cfg) {
  Cases out;
  WhittakerConfig w;
  w.lambda = cfg.lambda;
  w.quad = cfg.quad;
  const std::vector<std::vector<Rational>> param_sets{
      {Rational(1, 2), Rational(1, 4)}, {Rational(-1, 3), Rational(1, 5)}, {Rational(0), Rational(1, 2)}};
  if (cfg.n == 2) {
    const GaussPoly phi = gaussian(4, 2);
    w.c = {1.0, 0.5};
    for (auto side : {WhittakerSide::first, WhittakerSide::second}) {
      for (const auto& ps : param_sets) {
        const LoopMatrix u = side == WhittakerSide::first ? LoopMatrix(2, {T(1), T(ps[0]), T(ps[1], 1), T(1)})
                                                          : LoopMatrix(2, {T(1), T(ps[1], 1), T(ps[0]), T(1)});
        out.push_back(whittaker_case("psi", 2, w.c, ps, side, whittaker_covariance(u, w, phi, side), w.quad.nodes,
                                     2e-2));
      }
    }
    // Zero phase: closed form c_w^{-dim/2} and covariance at 1e-6.
    WhittakerConfig z = w;
    z.c = {0.0, 0.0};
    const double cw = std::pow(cfg.lambda, -0.5);
    const double want = std::pow(cw, -0.5 * loop_slice(2, WhittakerSide::first).dim());
    const WhittakerValue v = psi_loop(2, z, phi);
    Json p{{"functional", "psi"}, {"n", 2}, {"c", z.c}, {"value", complex_json(v.value)}, {"expected", want},
           {"nodes", w.quad.nodes}};
    out.push_back(numeric_case("whittaker", "psi zero phase closed form", std::abs(v.value - want) / want, 1e-6, p));
    const auto& ps = param_sets[0];
    out.push_back(whittaker_case("psi", 2, z.c, ps, WhittakerSide::first,
                                 whittaker_covariance(LoopMatrix(2, {T(1), T(ps[0]), T(ps[1], 1), T(1)}), z, phi,
                                                      WhittakerSide::first),
                                 w.quad.nodes, 1e-6));
  }
  // Finite GL_3 case at the reduced Gauss-Hermite budget.
  WhittakerConfig f = w;
  f.c = {1.0, 0.5};
  f.gauss_nodes = 6;
  const GaussPoly phi9 = gaussian(9, 1);
  const std::vector<Rational> fp{Rational(3, 10), Rational(-1, 5), Rational(1, 10)};
  const LoopMatrix u = LoopMatrix::from_rationals(3, {1, fp[0], fp[2], 0, 1, fp[1], 0, 0, 1});
  const LoopMatrix v = LoopMatrix::from_rationals(3, {1, 0, 0, fp[0], 1, 0, fp[2], fp[1], 1});
  out.push_back(whittaker_case("phi", 3, f.c, fp, WhittakerSide::first,
                               whittaker_covariance(u, f, phi9, WhittakerSide::first, true), f.quad.nodes, 5e-2));
  out.push_back(whittaker_case("phi", 3, f.c, fp, WhittakerSide::second,
                               whittaker_covariance(v, f, phi9, WhittakerSide::second, true), f.quad.nodes, 5e-2));
  return out;
}

IntMatrix random_padic_matrix(int p, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> w(-3, 3), e(0, 1);
  for (;;) {
    IntMatrix g(2);
    for (auto& x : g.a) {
      long u = w(rng);
      if (u % p == 0) u = 0;
      x = u * (e(rng) ? p : 1);
    }
    if (g.determinant() != 0) return g;
  }
}

Cases run_hecke(const SuiteConfig& cfg) {
  Cases out;
  FourierPoly f;
  for (long k = -24; k <= 24; ++k) f.add(k, {Rational(k) / 7 + 1, Rational(1) / (1 + std::labs(k))});
  for (long m = 1; m <= 6; ++m) {
    for (long n = 1; n <= 6; ++n) {
      const FourierPoly mn = circle_hecke(m * n, f);
      const bool ok = circle_hecke(m, circle_hecke(n, f)) == mn && circle_hecke(n, circle_hecke(m, f)) == mn;
      out.push_back(exact_case("hecke", "circle m=" + std::to_string(m) + " n=" + std::to_string(n), ok ? 0 : 1,
                               std::nullopt, ok, Json{{"model", "circle"}, {"m", m}, {"n", n}}));
    }
  }
  std::mt19937_64 rng(cfg.seed + 400);
  std::uniform_int_distribution<int> val(-5, 5);
  for (int p : {2, 3}) {
    const int depth = p == 2 ? 3 : 2;
    for (int trial = 0; trial < 50; ++trial) {
      const IntMatrix g1 = random_padic_matrix(p, rng), g2 = random_padic_matrix(p, rng);
      PAdicFunction h(p, 2, depth);
      for (std::size_t i = 0; i < h.size(); ++i) h[i] = Rational(val(rng)) / (1 + (val(rng) + 5) % 3);
      const bool ok = padic_hecke(g1, padic_hecke(g2, h)) == padic_hecke(g1 * g2, h);
      out.push_back(exact_case("hecke", "p-adic p=" + std::to_string(p) + " #" + std::to_string(trial), ok ? 0 : 1,
                               std::nullopt, ok,
                               Json{{"model", "p-adic"}, {"p", p}, {"M", depth}, {"g1", g1.to_string()},
                                    {"g2", g2.to_string()}}));
    }
  }
  for (int p : {2, 3}) {
    const auto delta = PAdicFunction::indicator_of_zero(p, 2, 2);
    const Rational q(p);
    const std::vector<std::pair<std::string, PAdicMatrix>> cases{
        {"diag(p, 1/p)", PAdicMatrix{2, {q, 0, 0, 1 / q}}},
        {"[[1/p, 2/p^2], [0, p]]", PAdicMatrix{2, {1 / q, 2 / (q * q), 0, q}}},
        {"[[1, 1], [0, p]]", PAdicMatrix{2, {1, 1, 0, q}}}};
    for (const auto& [name, g] : cases) {
      const auto r0 = padic_extend(1, g, delta);
      const bool ok = r0 == padic_extend(1, g, delta, 1) && r0 == padic_extend(1, g, delta, 2);
      out.push_back(exact_case("hecke", "extension p=" + std::to_string(p) + " g=" + name, ok ? 0 : 1, std::nullopt,
                               ok, Json{{"model", "p-adic extension"}, {"p", p}, {"g", name}, {"lambda", 1}}));
    }
    const PAdicMatrix inv{2, {1 / q, 0, 0, 1 / q}}, pI{2, {q, 0, 0, q}};
    const bool ok = padic_extend(1, inv, padic_extend(1, pI, delta)) == delta;
    out.push_back(exact_case("hecke", "extension p=" + std::to_string(p) + " (1/p)I (p)I = id", ok ? 0 : 1,
                             std::nullopt, ok, Json{{"model", "p-adic extension"}, {"p", p}}));
  }
  return out;
}

}  // namespace

Json compute_tables(const SuiteConfig& cfg) {
  Json tables;
  Json weights = Json::array();
  for (const auto& e : weight_table(gaussian(cfg.n, 3))) {
    weights.push_back(Json{{"k", e.k}, {"j", e.j}, {"measured", to_string(e.measured)}, {"expected", e.expected}});
  }
  tables["weights"] = weights;
  tables["dual_level"] = to_string(dual_level(cfg.n));
  Json levels = Json::array();
  Json cocycles = Json::array();
  const FockModel vec = FockModel::vector_model(cfg.n);
  const int D = std::max(cfg.depth, 8);
  for (int u = 1; u <= cfg.n; ++u) {
    for (int v = 1; v <= cfg.n; ++v) {
      if (u == v) continue;
      for (int m = 1; m <= 3; ++m) {
        const Scalar kappa = measure_level(vec, u, v, m, vec.vacuum(D));
        if (m <= 2) {
          levels.push_back(Json{{"model", "vector"}, {"copy", "single"}, {"u", u}, {"v", v}, {"m", m},
                                {"kappa", kappa.to_string()}});
        }
        cocycles.push_back(Json{{"u", u}, {"v", v}, {"m", m}, {"central_term", (kappa * Scalar(m)).to_string()}});
      }
    }
  }
  const FockModel mat = FockModel::matrix_model(cfg.n);
  for (Copy copy : {Copy::left, Copy::right}) {
    const Scalar kappa = measure_level(mat, 1, 2, 1, mat.vacuum(6), copy);
    levels.push_back(Json{{"model", "matrix"}, {"copy", to_string(copy)}, {"u", 1}, {"v", 2}, {"m", 1},
                          {"kappa", kappa.to_string()}});
  }
  tables["levels"] = levels;
  tables["cocycles"] = cocycles;
  return tables;
}

std::vector<CaseRecord> run_suite(const std::string& name, const SuiteConfig& cfg) {
  if (name == "levels") return run_levels(cfg);
  if (name == "brackets") return run_brackets(cfg);
  if (name == "copies") return run_copies(cfg);
  if (name == "eigen") return run_eigen(cfg);
  if (name == "chevalley") return run_chevalley(cfg);
  if (name == "highest_weight") return run_highest_weight(cfg);
  if (name == "semigroup") return run_semigroup(cfg);
  if (name == "snf") return run_snf(cfg);
  if (name == "kfixed") return run_kfixed(cfg);
  if (name == "intertwine") return run_intertwine(cfg);
  if (name == "whittaker") return run_whittaker(cfg);
  if (name == "hecke") return run_hecke(cfg);
  throw ConfigError("suite", "unknown suite \"" + name + "\"");
}

Report run(const SuiteConfig& cfg) {
  cfg.validate();
  Report report;
  report.config = cfg;
  std::vector<std::string> names;
  for (const auto& s : cfg.suites) {
    if (s == "all") {
      names.insert(names.end(), known_suites().begin(), known_suites().end());
    } else {
      names.push_back(s);
    }
  }
  std::set<std::string> seen;
  for (const auto& s : names) {
    if (!seen.insert(s).second) continue;
    auto cases = run_suite(s, cfg);
    report.cases.insert(report.cases.end(), std::make_move_iterator(cases.begin()), std::make_move_iterator(cases.end()));
  }
  report.tables = compute_tables(cfg);
  return report;
}

}  // namespace loopfock
