#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "loopfock/action/quadrature.hpp"
#include "loopfock/dvr/loop_matrix.hpp"
#include "loopfock/fock/compiled_poly.hpp"

namespace loopfock {

enum class WhittakerSide { first, second };

// Integration slice: each slice variable is a flat coordinate of the model
// ((depth - 1) m + entry - 1), and each phase term reads
// coefficient * x[num] / x[den] in slice positions.
struct WhittakerSlice {
  int m = 0;        // coordinates per depth
  int depth = 1;    // deepest depth touched by the slice
  int n = 0;        // matrix size
  bool finite = false;
  WhittakerSide side = WhittakerSide::first;
  std::vector<int> vars;
  struct Phase {
    int num;
    int den;
  };
  std::vector<Phase> phases;
  int dim() const { return static_cast<int>(vars.size()); }
  int full_dims() const { return m * depth; }
};

// Depth-1 entries (r, c) with r >= c + 2 pinned to 0, plus x_{-2}^{1,n}.
WhittakerSlice loop_slice(int n, WhittakerSide side);
// GL_3 slice with x_31 = 0.
WhittakerSlice finite_slice(WhittakerSide side);

struct WhittakerConfig {
  std::vector<double> c;  // c for the first side, d for the second
  double lambda = 1.0;
  QuadPlan quad;  // nodes per denominator axis and domain half-width
  // Gauss-Hermite nodes per Gaussian axis; 0 uses quad.nodes.
  int gauss_nodes = 0;
  double max_evaluations = 4.0e9;

  void validate(const WhittakerSlice& s) const;
};

struct WhittakerValue {
  std::complex<double> value;
  double error_estimate = 0.0;  // change under halving the denominator grids
  double evaluations = 0.0;
};

// int f(M E x) exp(2 pi i sum c_k x_num / x_den) dx over the slice, with M a
// linear map of the full coordinates (row-major, identity when empty).
WhittakerValue whittaker_integral(const WhittakerSlice& s, const CompiledPoly& f, const WhittakerConfig& cfg,
                                  const std::vector<double>& M = {});

WhittakerValue phi_finite(const WhittakerConfig& cfg, const GaussPoly& f, WhittakerSide side = WhittakerSide::first);
WhittakerValue psi_loop(int n, const WhittakerConfig& cfg, const GaussPoly& f,
                        WhittakerSide side = WhittakerSide::first);

// (u_1..u_{n-1}, v_n) for the first side, (v_1..v_{n-1}, z_n) for the second;
// the finite case has no last entry.
struct UnipotentParams {
  std::vector<Rational> values;
};

UnipotentParams extract_params(const LoopMatrix& u, WhittakerSide side, bool finite);
std::complex<double> character_eval(const UnipotentParams& p, const std::vector<double>& c);

// Full-coordinate matrix of x -> pi_-(u x) (first side) or pi_-(x u^T)
// (second side) on depths 1..depth of the n x n matrix model.
std::vector<double> unipotent_transform(const LoopMatrix& u, WhittakerSide side, int depth);

struct CovarianceResult {
  std::complex<double> lhs;
  std::complex<double> rhs;
  double relerr = 0.0;
  // The rhs grid pulled back through the substitution: should reproduce rhs
  // to rounding.
  double change_of_variable_relerr = 0.0;
  double lhs_error_estimate = 0.0;
  double rhs_error_estimate = 0.0;
  // |rhs| is within ten error estimates of zero; relerr is not meaningful.
  bool rhs_near_zero = false;
};

// lhs = functional of f(pi_-(u x)) (or f(x u^T)), rhs = character * functional of f.
CovarianceResult whittaker_covariance(const LoopMatrix& u, const WhittakerConfig& cfg, const GaussPoly& f,
                                      WhittakerSide side, bool finite = false);

}  // namespace loopfock
