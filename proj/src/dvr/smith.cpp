#include "loopfock/dvr/smith.hpp"

#include <algorithm>
#include <numeric>

#include "loopfock/errors.hpp"

namespace loopfock {

namespace {

struct Elimination {
  LoopMatrix h1, a, h2;
};

// One pass at fixed working order; entries are read as exact below it.
Elimination eliminate(const LoopMatrix& g, int working) {
  const int n = g.n();
  Elimination st{LoopMatrix::identity(n), LoopMatrix(n), LoopMatrix::identity(n)};
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      st.a(r, c) = TruncatedSeries(g(r, c).terms(), working);
    }
  }
  st.h1 = st.h1.truncated(working);
  st.h2 = st.h2.truncated(working);
  for (int s = 0; s < n; ++s) {
    int pr = -1, pc = -1, best = TruncatedSeries::kExact;
    int uncertain = TruncatedSeries::kExact;
    for (int r = s; r < n; ++r) {
      for (int c = s; c < n; ++c) {
        const TruncatedSeries& e = st.a(r, c);
        if (e.is_zero_to_precision()) {
          uncertain = std::min(uncertain, e.order());
          continue;
        }
        if (e.valuation() < best) {
          best = e.valuation();
          pr = r;
          pc = c;
        }
      }
    }
    if (pr < 0) throw InsufficientPrecision("no certified pivot in remaining block");
    if (uncertain <= best) throw InsufficientPrecision("pivot valuation cannot be certified");
    if (pr != s) {
      for (int c = 0; c < n; ++c) std::swap(st.a(pr, c), st.a(s, c));
      for (int r = 0; r < n; ++r) std::swap(st.h1(r, pr), st.h1(r, s));
    }
    if (pc != s) {
      for (int r = 0; r < n; ++r) std::swap(st.a(r, pc), st.a(r, s));
      for (int c = 0; c < n; ++c) std::swap(st.h2(pc, c), st.h2(s, c));
    }
    const TruncatedSeries pivot = st.a(s, s);
    const int v = pivot.valuation();
    // q = entry / pivot is a power series; invert the unit part only.
    const TruncatedSeries unit_inv = series_invert_tracked(pivot.shifted(-v), working);
    for (int r = s + 1; r < n; ++r) {
      if (st.a(r, s).is_zero_to_precision()) continue;
      const TruncatedSeries q = st.a(r, s).shifted(-v) * unit_inv;
      for (int c = s + 1; c < n; ++c) st.a(r, c) -= q * st.a(s, c);
      st.a(r, s) = TruncatedSeries::zero(st.a(r, s).order());
      for (int i = 0; i < n; ++i) st.h1(i, s) += q * st.h1(i, r);
    }
    for (int c = s + 1; c < n; ++c) {
      if (st.a(s, c).is_zero_to_precision()) continue;
      const TruncatedSeries q = st.a(s, c).shifted(-v) * unit_inv;
      st.a(s, c) = TruncatedSeries::zero(st.a(s, c).order());
      for (int j = 0; j < n; ++j) st.h2(s, j) += q * st.h2(c, j);
    }
  }
  return st;
}

}  // namespace

LoopMatrix reconstruct(const SmithDecomposition& d) {
  return d.h1 * LoopMatrix::diag_monomial(d.k) * d.h2;
}

SmithDecomposition smith_decompose(const LoopMatrix& g, int target_order) {
  if (!g.in_power_series()) throw InvalidArgument("Smith form needs entries in R[[t]]");
  const ValDet vd = val_det(g);
  int T = target_order;
  if (!g.is_exact()) {
    T = target_order < 0 ? g.order() : std::min(target_order, g.order());
    if (T <= vd.N) {
      throw InsufficientPrecision("order " + std::to_string(T) + " does not exceed val det " +
                                  std::to_string(vd.N));
    }
  } else if (T < 0) {
    int top = 0;
    for (int r = 0; r < g.n(); ++r) {
      for (int c = 0; c < g.n(); ++c) {
        if (!g(r, c).is_zero_to_precision()) top = std::max(top, g(r, c).max_exponent());
      }
    }
    T = std::max(vd.N, top) + 1;
  } else if (T <= vd.N) {
    throw InsufficientPrecision("requested order does not exceed val det");
  }
  const LoopMatrix target = g.truncated(T);
  int working = T + 2 * vd.N + 2;
  for (int attempt = 0; attempt < 8; ++attempt, working += T + vd.N + 2) {
    Elimination st;
    try {
      st = eliminate(g, working);
    } catch (const InsufficientPrecision&) {
      continue;
    }
    SmithDecomposition d;
    const int n = g.n();
    std::vector<int> order(static_cast<std::size_t>(n));
    d.k.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      const TruncatedSeries& dj = st.a(j, j);
      const int kj = dj.valuation();
      d.k[static_cast<std::size_t>(j)] = kj;
      // Absorb the unit part of the diagonal entry into h1.
      const TruncatedSeries unit = dj.shifted(-kj);
      for (int i = 0; i < n; ++i) st.h1(i, j) = st.h1(i, j) * unit;
    }
    d.h1 = st.h1.truncated(T);
    d.h2 = st.h2.truncated(T);
    d.T = T;
    const LoopMatrix back = reconstruct(d);
    if (back.order() >= T && back.agrees_with(target, T)) {
      if (!std::is_sorted(d.k.begin(), d.k.end())) {
        throw Error("internal: elementary divisors out of order");
      }
      return d;
    }
  }
  throw InsufficientPrecision("Smith reconstruction could not be certified to order " +
                              std::to_string(T));
}

LatticeQuotient lattice_quotient(const LoopMatrix& g) {
  return lattice_quotient(g, smith_decompose(g));
}

LatticeQuotient lattice_quotient(const LoopMatrix& g, const SmithDecomposition& d) {
  LatticeQuotient q;
  q.g = g;
  q.n = g.n();
  q.dim = std::accumulate(d.k.begin(), d.k.end(), 0);
  q.depth = d.k.empty() ? 0 : *std::max_element(d.k.begin(), d.k.end());
  if (q.depth == 0) return q;
  const LoopMatrix h2inv = inverse_over_laurent(d.h2, q.depth);
  const int n = q.n;
  for (int j = 0; j < n; ++j) {
    for (int i = 1; i <= d.k[static_cast<std::size_t>(j)]; ++i) {
      NegVector v(static_cast<std::size_t>(q.depth * n));
      for (int a = 0; a < n; ++a) {
        for (int dd = 1; dd <= i; ++dd) {
          v[static_cast<std::size_t>((dd - 1) * n + a)] = h2inv(a, j).coeff(i - dd);
        }
      }
      q.basis.push_back(std::move(v));
    }
  }
  return q;
}

}  // namespace loopfock
