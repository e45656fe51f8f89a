#pragma once

#include <optional>
#include <vector>

#include "loopfock/dvr/loop_matrix.hpp"

namespace loopfock {

// Column vector over Laurent series.
using LoopVector = std::vector<TruncatedSeries>;

// Element of R^n_- = t^{-1}R^n[t^{-1}] in flat coordinates: the coefficient
// of t^{-i} e_a sits at index (i-1)*n + (a-1). Missing trailing entries are 0.
using NegVector = std::vector<Rational>;

LoopVector unit_vector(int n, int a, int exponent = 0, const Rational& c = 1);
LoopVector mat_vec(const LoopMatrix& g, const LoopVector& x);

// Keeps exactly the strictly negative powers of t.
LoopVector negative_projection(const LoopVector& x);

// Coefficient of t^0 in u(t)^T v(t^{-1}); both arguments must be exact.
Rational loop_inner_product(const LoopVector& u, const LoopVector& v);

NegVector to_neg_coords(const LoopVector& x, int n);
LoopVector from_neg_coords(const NegVector& y, int n);
int neg_depth(const NegVector& y, int n);
NegVector padded(const NegVector& y, std::size_t size);

// Exact rational linear algebra on column lists.
using RationalMatrix = std::vector<std::vector<Rational>>;  // row-major
Rational determinant(RationalMatrix a);
// Coordinates c with sum_j c_j basis[j] = y, or nullopt when y is not in the span.
std::optional<std::vector<Rational>> solve_in_span(const std::vector<NegVector>& basis,
                                                   const NegVector& y);
std::size_t rank_of(const std::vector<NegVector>& vectors);

}  // namespace loopfock
