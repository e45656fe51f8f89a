#include "loopfock/affine/operators.hpp"

#include <numeric>

#include "loopfock/errors.hpp"

namespace loopfock {

namespace {

Copy expected_copy_check(const FockModel& model, Copy copy) {
  const bool ok = model.kind == ModelKind::vector ? copy == Copy::single : copy != Copy::single;
  if (!ok) throw InvalidArgument("copy " + to_string(copy) + " does not match the " + to_string(model.kind) + " model");
  return copy;
}

// Terms of sum_i x_{-i-mo}^{b} d/dx_{-i-do}^{a}, expanded over the matrix copies.
void push_field(const FockModel& model, Copy copy, int a, int b, int mul_offset, int der_offset, const Scalar& coeff,
                std::vector<VectorFieldTerm>& out) {
  switch (copy) {
    case Copy::single: out.push_back({b, mul_offset, a, der_offset, coeff}); break;
    case Copy::left:
      for (int s = 1; s <= model.n; ++s) {
        out.push_back({model.entry(b, s), mul_offset, model.entry(a, s), der_offset, coeff});
      }
      break;
    case Copy::right:
      for (int s = 1; s <= model.n; ++s) {
        out.push_back({model.entry(s, b), mul_offset, model.entry(s, a), der_offset, coeff});
      }
      break;
  }
}

}  // namespace

std::string to_string(ModelKind k) { return k == ModelKind::vector ? "vector" : "matrix"; }

int window_cost(const Generator& g) { return g.mode < 0 ? -2 * g.mode : 0; }

GaussPoly apply(const FockModel& model, const Generator& g, const GaussPoly& f) {
  validate(g, model.n);
  expected_copy_check(model, g.copy);
  if (f.m() != model.m()) throw InvalidArgument("GaussPoly coordinate count does not match the model");
  std::vector<VectorFieldTerm> field;
  const int j = g.mode >= 0 ? g.mode : -g.mode;
  const int mo = g.mode >= 0 ? j : 0;
  const int dof = g.mode >= 0 ? 0 : j;
  if (g.kind == GenKind::cartan) {
    push_field(model, g.copy, g.u, g.u, mo, dof, Scalar(-1), field);
    push_field(model, g.copy, g.v, g.v, mo, dof, Scalar(1), field);
  } else {
    push_field(model, g.copy, g.u, g.v, mo, dof, Scalar(-1), field);
  }
  if (g.mode >= 0) return apply_vector_field(f, field, f.D(), f.W());

  if (f.W() < 2 * j) {
    throw WindowExhausted("mode " + std::to_string(g.mode) + " needs window " + std::to_string(2 * j) +
                          ", have " + std::to_string(f.W()));
  }
  GaussPoly r = apply_vector_field(f, field, f.D(), f.W() - j);
  for (int k = 0; k < j; ++k) r = pi_t(r);
  return r.scaled(Scalar::monomial(1, 0, -model.m() * j));
}

GaussPoly apply(const FockModel& model, const LieElement& x, const GaussPoly& f) {
  for (int c = 0; c < 3; ++c) {
    if (x.kappa(static_cast<Copy>(c)) != 0) throw InvalidArgument("central part cannot be applied as an operator");
  }
  std::vector<std::pair<Generator, Rational>> gens;
  // Negative-mode diagonal coefficients per (copy, mode).
  std::map<std::pair<Copy, int>, std::vector<Rational>> diagonals;
  for (const auto& [k, c] : x.terms()) {
    if (k.mode < 0 && k.a == k.b) {
      auto& d = diagonals[{k.copy, k.mode}];
      d.resize(static_cast<std::size_t>(model.n));
      d[static_cast<std::size_t>(k.a - 1)] += c;
    } else if (k.mode < 0) {
      gens.emplace_back(Generator::offdiag(k.a, k.b, k.mode, k.copy), c);
    } else {
      gens.emplace_back(Generator::raw(k.a, k.b, k.mode, k.copy), c);
    }
  }
  for (const auto& [key, d] : diagonals) {
    if (std::accumulate(d.begin(), d.end(), Rational(0)) != 0) {
      throw InvalidArgument("diagonal part at negative mode is not traceless");
    }
    Rational partial = 0;
    for (int i = 1; i < model.n; ++i) {
      partial += d[static_cast<std::size_t>(i - 1)];
      if (partial != 0) gens.emplace_back(Generator::cartan(i, i + 1, key.second, key.first), partial);
    }
  }
  if (gens.empty()) return GaussPoly(f.m(), f.D(), f.W());
  GaussPoly acc = apply(model, gens.front().first, f).scaled(Scalar(gens.front().second));
  for (std::size_t i = 1; i < gens.size(); ++i) {
    acc = acc + apply(model, gens[i].first, f).scaled(Scalar(gens[i].second));
  }
  return acc;
}

GaussPoly apply_word(const FockModel& model, const std::vector<Generator>& word, const GaussPoly& f) {
  GaussPoly r = f;
  for (auto it = word.rbegin(); it != word.rend(); ++it) r = apply(model, *it, r);
  return r;
}

GaussPoly bracket_residual(const FockModel& model, const Generator& a, const Generator& b, const GaussPoly& f,
                           const Rational& level) {
  const GaussPoly ab = apply(model, a, apply(model, b, f));
  const GaussPoly ba = apply(model, b, apply(model, a, f));
  const LieElement br = lie_bracket(a, b);
  Rational central = 0;
  for (int c = 0; c < 3; ++c) central += br.kappa(static_cast<Copy>(c));
  const GaussPoly rhs = apply(model, br.without_central(), f) + f.scaled(Scalar(central * level));
  return ab - ba - rhs;
}

Scalar measure_level(const FockModel& model, int u, int v, int m, const GaussPoly& f, Copy copy) {
  if (m < 1) throw InvalidArgument("level measurement needs mode m >= 1");
  const Generator a = Generator::offdiag(v, u, m, copy);
  const Generator b = Generator::offdiag(u, v, -m, copy);
  const GaussPoly comm = apply(model, a, apply(model, b, f)) - apply(model, b, apply(model, a, f));
  const GaussPoly residual = comm - apply(model, lie_bracket(a, b).without_central(), f);
  const int w = residual.W();
  for (const auto& [mono, coef] : f.terms()) {
    if (monomial_depth(mono) > w) continue;
    const auto ratio = exact_quotient(residual.coefficient(mono), coef);
    if (!ratio) throw NotProportional("residual coefficient is not a Laurent multiple of f");
    if (!window_equal(residual, f.scaled(*ratio), w)) {
      throw NotProportional("residual is not a scalar multiple of f on window " + std::to_string(w));
    }
    return *exact_quotient(*ratio, Scalar(m));
  }
  throw NotProportional("f vanishes on the residual window");
}

ChevalleyResidual chevalley_residual(const FockModel& model, int u, int v, int m, int D, Copy copy) {
  const GaussPoly phi = model.vacuum(D);
  ChevalleyResidual r{apply(model, Generator::offdiag(u, v, m, copy), phi) -
                          apply(model, Generator::offdiag(v, u, -m, copy), phi),
                      GaussPoly(phi.m(), D, D)};
  if (m != 0) {
    r.cartan = apply(model, Generator::cartan(u, v, m, copy), phi) - apply(model, Generator::cartan(u, v, -m, copy), phi);
  }
  return r;
}

GaussPoly commuting_copies_residual(const FockModel& model, const Generator& a, const Generator& b,
                                    const GaussPoly& f) {
  return apply(model, a, apply(model, b, f)) - apply(model, b, apply(model, a, f));
}

GaussPoly eigen_residual(const FockModel& model, const GaussPoly& f) {
  return pi_t(f) - f.scaled(Scalar::monomial(1, 0, model.m()));
}

std::vector<Generator> sl_generators(const FockModel& model, int max_mode, Copy copy) {
  std::vector<Generator> gens;
  for (int mode = -max_mode; mode <= max_mode; ++mode) {
    for (int u = 1; u <= model.n; ++u) {
      for (int v = 1; v <= model.n; ++v) {
        if (u != v) gens.push_back(Generator::offdiag(u, v, mode, copy));
      }
    }
    for (int u = 1; u <= model.n; ++u) {
      for (int v = u + 1; v <= model.n; ++v) gens.push_back(Generator::cartan(u, v, mode, copy));
    }
  }
  return gens;
}

GaussPoly regenerate(const FockModel& model, const std::vector<Generator>& word, int D) {
  return apply_word(model, word, model.vacuum(D));
}

std::vector<TestVector> generate_vectors(const FockModel& model, const std::vector<Generator>& alphabet, int count,
                                         int max_len, int W_target, std::mt19937_64& rng, int extra_depth) {
  if (alphabet.empty()) throw InvalidArgument("empty generator alphabet");
  std::uniform_int_distribution<int> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::vector<TestVector> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::vector<Generator> word;
    const int l = len(rng);
    int cost = 0;
    for (int k = 0; k < l; ++k) {
      word.push_back(alphabet[pick(rng)]);
      cost += window_cost(word.back());
    }
    GaussPoly f = regenerate(model, word, W_target + cost + extra_depth);
    out.push_back({std::move(word), std::move(f)});
  }
  return out;
}

}  // namespace loopfock
