#pragma once

#include <random>
#include <vector>

#include "loopfock/affine/lie.hpp"
#include "loopfock/fock/gauss_poly.hpp"

namespace loopfock {

enum class ModelKind { vector, matrix };

// Vector model: m = n coordinates per depth. Matrix model: m = n^2 with
// entry (r, s) stored at coordinate (r - 1) n + s.
struct FockModel {
  int n = 2;
  ModelKind kind = ModelKind::vector;

  static FockModel vector_model(int n) { return {n, ModelKind::vector}; }
  static FockModel matrix_model(int n) { return {n, ModelKind::matrix}; }
  int m() const { return kind == ModelKind::vector ? n : n * n; }
  int entry(int r, int s) const { return (r - 1) * n + s; }
  GaussPoly vacuum(int D) const { return gaussian(m(), D); }
};

std::string to_string(ModelKind k);

// Window consumed by one application: 2j for mode -j, nothing for raising modes.
int window_cost(const Generator& g);

GaussPoly apply(const FockModel& model, const Generator& g, const GaussPoly& f);
// Negative-mode diagonal parts must be traceless per copy; the central part must vanish.
GaussPoly apply(const FockModel& model, const LieElement& x, const GaussPoly& f);
// Applies word.back() first.
GaussPoly apply_word(const FockModel& model, const std::vector<Generator>& word, const GaussPoly& f);

// True when every coefficient inside the window is zero.
inline bool vanishes_on_window(const GaussPoly& f) { return f.window_term_count() == 0; }

// [pi(a), pi(b)] f - pi([a, b]) f with K acting as level.
GaussPoly bracket_residual(const FockModel& model, const Generator& a, const Generator& b, const GaussPoly& f,
                           const Rational& level);

// kappa from ([pi(E_vu t^m), pi(E_uv t^-m)] - pi([.,.] without K)) f = m kappa f.
Scalar measure_level(const FockModel& model, int u, int v, int m, const GaussPoly& f, Copy copy = Copy::single);

struct ChevalleyResidual {
  GaussPoly offdiag;  // pi(E_uv t^m - E_vu t^-m) phi
  GaussPoly cartan;   // pi((E_uu - E_vv)(t^m - t^-m)) phi
};
ChevalleyResidual chevalley_residual(const FockModel& model, int u, int v, int m, int D,
                                     Copy copy = Copy::single);

GaussPoly commuting_copies_residual(const FockModel& model, const Generator& a, const Generator& b,
                                    const GaussPoly& f);

// pi_t f - rho^m f on the reduced window.
GaussPoly eigen_residual(const FockModel& model, const GaussPoly& f);

// Off-diagonal and cartan (u < v) generators with |mode| <= max_mode.
std::vector<Generator> sl_generators(const FockModel& model, int max_mode, Copy copy);

struct TestVector {
  std::vector<Generator> word;
  GaussPoly f;
};

// Random words of length <= max_len applied to the vacuum at depth
// W_target + (window cost of the word) + extra_depth.
std::vector<TestVector> generate_vectors(const FockModel& model, const std::vector<Generator>& alphabet, int count,
                                         int max_len, int W_target, std::mt19937_64& rng, int extra_depth = 0);

// The same word evaluated at a larger ambient depth.
GaussPoly regenerate(const FockModel& model, const std::vector<Generator>& word, int D);

}  // namespace loopfock
