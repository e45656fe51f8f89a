#pragma once

#include <string>
#include <vector>

#include "loopfock/rational.hpp"

namespace loopfock {

// Dense n x n integer matrix, row-major.
struct IntMatrix {
  int n = 0;
  std::vector<Integer> a;

  IntMatrix() = default;
  explicit IntMatrix(int size) : n(size), a(static_cast<std::size_t>(size * size)) {}
  IntMatrix(int size, const std::vector<long>& values);

  static IntMatrix identity(int size);

  Integer& operator()(int r, int c) { return a[static_cast<std::size_t>(r * n + c)]; }
  const Integer& operator()(int r, int c) const { return a[static_cast<std::size_t>(r * n + c)]; }

  IntMatrix operator*(const IntMatrix& o) const;
  bool operator==(const IntMatrix& o) const { return n == o.n && a == o.a; }
  Integer determinant() const;
  std::string to_string() const;
};

// U A V = diag(d) with U, V unimodular, d_i >= 0 and d_i | d_{i+1}.
struct IntSmith {
  IntMatrix U, V;
  std::vector<Integer> d;
};

IntSmith int_smith(const IntMatrix& A);

// Exact inverse of a unimodular matrix.
IntMatrix unimodular_inverse(const IntMatrix& U);

}  // namespace loopfock
