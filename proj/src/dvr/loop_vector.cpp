#include "loopfock/dvr/loop_vector.hpp"

#include <algorithm>

#include "loopfock/errors.hpp"

namespace loopfock {

LoopVector unit_vector(int n, int a, int exponent, const Rational& c) {
  LoopVector v(static_cast<std::size_t>(n));
  v[static_cast<std::size_t>(a)] = TruncatedSeries::monomial(c, exponent);
  return v;
}

LoopVector mat_vec(const LoopMatrix& g, const LoopVector& x) {
  if (static_cast<int>(x.size()) != g.n()) throw InvalidArgument("vector length does not match matrix");
  LoopVector out(x.size());
  for (int r = 0; r < g.n(); ++r) {
    TruncatedSeries acc;
    for (int c = 0; c < g.n(); ++c) {
      const auto& xc = x[static_cast<std::size_t>(c)];
      if (xc.is_zero_to_precision() && xc.is_exact()) continue;
      acc += g(r, c) * xc;
    }
    out[static_cast<std::size_t>(r)] = acc;
  }
  return out;
}

LoopVector negative_projection(const LoopVector& x) {
  LoopVector out;
  out.reserve(x.size());
  for (const auto& s : x) {
    std::map<int, Rational> terms;
    for (const auto& [e, c] : s.terms()) {
      if (e < 0) terms.emplace(e, c);
    }
    // Negative powers are all known whenever the order is positive.
    if (s.order() < 0) throw InsufficientPrecision("negative part not determined");
    out.emplace_back(std::move(terms), TruncatedSeries::kExact);
  }
  return out;
}

Rational loop_inner_product(const LoopVector& u, const LoopVector& v) {
  if (u.size() != v.size()) throw InvalidArgument("inner product of vectors of different length");
  Rational acc;
  for (std::size_t a = 0; a < u.size(); ++a) {
    if (!u[a].is_exact() || !v[a].is_exact()) {
      throw InsufficientPrecision("inner product needs finite Laurent vectors");
    }
    for (const auto& [e, c] : u[a].terms()) {
      auto it = v[a].terms().find(e);
      if (it != v[a].terms().end()) acc += c * it->second;
    }
  }
  return acc;
}

NegVector to_neg_coords(const LoopVector& x, int n) {
  int depth = 0;
  for (const auto& s : x) {
    for (const auto& [e, c] : s.terms()) {
      if (e < 0) depth = std::max(depth, -e);
    }
  }
  NegVector out(static_cast<std::size_t>(depth * n));
  for (int a = 0; a < n; ++a) {
    for (const auto& [e, c] : x[static_cast<std::size_t>(a)].terms()) {
      if (e < 0) out[static_cast<std::size_t>((-e - 1) * n + a)] = c;
    }
  }
  return out;
}

LoopVector from_neg_coords(const NegVector& y, int n) {
  std::vector<std::map<int, Rational>> terms(static_cast<std::size_t>(n));
  for (std::size_t idx = 0; idx < y.size(); ++idx) {
    if (y[idx] == 0) continue;
    const int i = static_cast<int>(idx) / n + 1;
    const int a = static_cast<int>(idx) % n;
    terms[static_cast<std::size_t>(a)].emplace(-i, y[idx]);
  }
  LoopVector out;
  for (auto& t : terms) out.emplace_back(std::move(t), TruncatedSeries::kExact);
  return out;
}

int neg_depth(const NegVector& y, int n) {
  for (std::size_t idx = y.size(); idx-- > 0;) {
    if (y[idx] != 0) return static_cast<int>(idx) / n + 1;
  }
  return 0;
}

NegVector padded(const NegVector& y, std::size_t size) {
  NegVector out = y;
  if (out.size() < size) out.resize(size);
  return out;
}

Rational determinant(RationalMatrix a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  return det;
}

namespace {

// Row-reduces [B | y] and returns pivot columns; rows are coordinates.
struct Reduced {
  RationalMatrix rows;
  std::vector<std::size_t> pivots;
};

Reduced reduce(const std::vector<NegVector>& columns, std::size_t length, std::size_t extra_cols) {
  const std::size_t ncols = columns.size();
  Reduced red;
  red.rows.assign(length, std::vector<Rational>(ncols + extra_cols));
  for (std::size_t c = 0; c < ncols; ++c) {
    for (std::size_t r = 0; r < columns[c].size(); ++r) red.rows[r][c] = columns[c][r];
  }
  return red;
}

void eliminate(Reduced& red, std::size_t ncols) {
  std::size_t row = 0;
  for (std::size_t c = 0; c < ncols && row < red.rows.size(); ++c) {
    std::size_t p = row;
    while (p < red.rows.size() && red.rows[p][c] == 0) ++p;
    if (p == red.rows.size()) continue;
    std::swap(red.rows[p], red.rows[row]);
    const Rational inv = Rational(1) / red.rows[row][c];
    for (auto& x : red.rows[row]) x *= inv;
    for (std::size_t r = 0; r < red.rows.size(); ++r) {
      if (r == row || red.rows[r][c] == 0) continue;
      const Rational f = red.rows[r][c];
      for (std::size_t k = c; k < red.rows[r].size(); ++k) red.rows[r][k] -= f * red.rows[row][k];
    }
    red.pivots.push_back(c);
    ++row;
  }
}

}  // namespace

std::optional<std::vector<Rational>> solve_in_span(const std::vector<NegVector>& basis,
                                                   const NegVector& y) {
  std::size_t length = y.size();
  for (const auto& b : basis) length = std::max(length, b.size());
  Reduced red = reduce(basis, length, 1);
  for (std::size_t r = 0; r < y.size(); ++r) red.rows[r][basis.size()] = y[r];
  eliminate(red, basis.size());
  if (red.pivots.size() != basis.size()) throw InvalidArgument("basis vectors are linearly dependent");
  for (std::size_t r = red.pivots.size(); r < red.rows.size(); ++r) {
    if (red.rows[r][basis.size()] != 0) return std::nullopt;
  }
  std::vector<Rational> coords(basis.size());
  for (std::size_t r = 0; r < red.pivots.size(); ++r) coords[red.pivots[r]] = red.rows[r][basis.size()];
  return coords;
}

std::size_t rank_of(const std::vector<NegVector>& vectors) {
  std::size_t length = 0;
  for (const auto& b : vectors) length = std::max(length, b.size());
  Reduced red = reduce(vectors, length, 0);
  eliminate(red, vectors.size());
  return red.pivots.size();
}

}  // namespace loopfock
