#pragma once

#include <vector>

#include "loopfock/dvr/loop_matrix.hpp"
#include "loopfock/dvr/loop_vector.hpp"

namespace loopfock {

// g = h1 diag(t^k) h2 with h1, h2 in GL_n(R), certified mod t^T.
struct SmithDecomposition {
  LoopMatrix h1;
  std::vector<int> k;
  LoopMatrix h2;
  int T = 0;
};

// For exact g the certification order defaults to a value above val det g
// and the largest stored exponent; pass target_order to override.
SmithDecomposition smith_decompose(const LoopMatrix& g, int target_order = -1);

LoopMatrix reconstruct(const SmithDecomposition& d);

// V_g = g^{-1}R^n / R^n with basis pi_-(h2^{-1} t^{-i} e_j), 1 <= i <= k_j,
// ordered by (j, i).
struct LatticeQuotient {
  LoopMatrix g;
  int n = 0;
  int dim = 0;
  int depth = 0;  // largest elementary divisor exponent
  std::vector<NegVector> basis;
};

LatticeQuotient lattice_quotient(const LoopMatrix& g);
LatticeQuotient lattice_quotient(const LoopMatrix& g, const SmithDecomposition& d);

}  // namespace loopfock
