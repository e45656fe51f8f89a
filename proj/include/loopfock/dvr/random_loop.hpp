#pragma once

#include <random>

#include "loopfock/dvr/loop_matrix.hpp"

namespace loopfock::sample {

// Polynomial entries with small integer coefficients at exponents lo..hi.
inline TruncatedSeries random_poly(std::mt19937_64& rng, int lo, int hi, int order) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::map<int, Rational> terms;
  for (int e = lo; e <= hi; ++e) {
    const int c = coef(rng);
    if (c != 0) terms.emplace(e, c);
  }
  return TruncatedSeries(std::move(terms), order);
}

// Random element of M'_n(R): entry exponents 0..max_exp, det nonzero.
inline LoopMatrix random_semigroup_matrix(std::mt19937_64& rng, int n, int max_exp,
                                          int order = TruncatedSeries::kExact) {
  while (true) {
    LoopMatrix g(n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) g(r, c) = random_poly(rng, 0, max_exp, order);
    }
    const TruncatedSeries det = g.determinant();
    if (!det.is_zero_to_precision()) return g;
  }
}

// A diag(t^k) B with random polynomial A, B; gives nontrivial elementary
// divisors, truncated at the given order.
inline LoopMatrix random_structured_matrix(std::mt19937_64& rng, int n, int max_k,
                                           int order = TruncatedSeries::kExact) {
  std::uniform_int_distribution<int> power(0, max_k);
  while (true) {
    LoopMatrix a(n), b(n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        a(r, c) = random_poly(rng, 0, 1, TruncatedSeries::kExact);
        b(r, c) = random_poly(rng, 0, 1, TruncatedSeries::kExact);
      }
    }
    std::vector<int> k(static_cast<std::size_t>(n));
    for (auto& x : k) x = power(rng);
    const LoopMatrix g = (a * LoopMatrix::diag_monomial(k) * b).truncated(order);
    const TruncatedSeries det = g.determinant();
    if (!det.is_zero_to_precision() && det.valuation() < std::min(order, 10)) return g;
  }
}

// Random element of M'_n(R) whose det has leading coefficient +-1: products
// of elementary matrices with polynomial off-diagonal entries, signed
// permutations and diagonal t-powers.
inline LoopMatrix random_gl0_matrix(std::mt19937_64& rng, int n, int max_exp) {
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_int_distribution<int> power(0, max_exp);
  LoopMatrix g = LoopMatrix::identity(n);
  for (int step = 0; step < 3; ++step) {
    LoopMatrix e = LoopMatrix::identity(n);
    const int r = pick(rng), c = pick(rng);
    if (r != c) e(r, c) = random_poly(rng, 0, max_exp, TruncatedSeries::kExact);
    std::vector<int> k(static_cast<std::size_t>(n));
    for (auto& x : k) x = power(rng) / 2;
    LoopMatrix d = LoopMatrix::diag_monomial(k);
    if (pick(rng) == 0) d(0, 0) = -d(0, 0);
    g = g * e * d;
  }
  return g;
}

}  // namespace loopfock::sample
