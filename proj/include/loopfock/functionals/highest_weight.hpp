#pragma once

#include <vector>

#include "loopfock/affine/operators.hpp"

namespace loopfock {

// I_k(f) = integral of f over x_{-1}^1..x_{-1}^k with every other variable at 0.
Scalar I_pair(int k, const GaussPoly& f);

// Members of n^+: strictly upper E_uv at mode 0, any sl_n generator at mode >= 1.
bool in_positive_part(const Generator& g);

// <Lambda_k, E_uu - E_vv> = -([u <= k] - [v <= k]).
int weight_pairing(int k, int u, int v);

// <I_k, pi(gen) f> minus its predicted value: 0 on n^+, and
// -<Lambda_k, H> <I_k, f> for a mode-0 cartan H.
Scalar highest_weight_residual(int k, const Generator& gen, const GaussPoly& f);

struct WeightEntry {
  int k = 0;
  int j = 0;          // simple coroot E_jj - E_{j+1,j+1}
  Rational measured;  // -<I_k, pi(H_j) f> / <I_k, f>
  int expected = 0;   // <Lambda_k, H_j>
};

// Pairings with every simple coroot, measured on f (vector model, m = n).
std::vector<WeightEntry> weight_table(const GaussPoly& f);

// Generators of n^+ with mode <= max_mode plus the mode-0 cartans.
std::vector<Generator> positive_and_cartan_generators(int n, int max_mode);

// <Lambda_k, K>: minus the level measured on the vacuum.
Rational dual_level(int n);

}  // namespace loopfock
