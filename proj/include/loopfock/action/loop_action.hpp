#pragma once

#include <cstdint>
#include <vector>

#include "loopfock/action/evaluator.hpp"
#include "loopfock/fock/gauss_poly.hpp"

namespace loopfock {

struct ActionConfig {
  double lambda = 1.0;
  int eval_depth = 3;  // deepest slot set in probe points
  QuadPlan quad;
  int probes = 20;
  std::uint64_t seed = 1;
  double probe_scale = 1.0;  // probe coordinates are uniform in [-scale, scale]

  void validate() const;
  // Gaussian width c = lambda^{-2/m}.
  double width(int m) const;
};

// Probe points of dimension eval_depth * m; identical for identical configs.
std::vector<std::vector<double>> sample_points(const ActionConfig& cfg, int m);

// x -> f(pi_-(u^{-1} x)) for u in GL_n(R).
EvaluatorPtr act_substitution(const LoopMatrix& u, const GaussPoly& f, const ActionConfig& cfg);

// x -> lambda^l int_{V_g} f(pi_-(g^{-1} x) + y) mu(dy).
EvaluatorPtr act_integral(const MeasuredElement& m, const GaussPoly& f, const ActionConfig& cfg);
// Same on an arbitrary evaluator whose Gaussian width is given.
EvaluatorPtr act_integral(const MeasuredElement& m, EvaluatorPtr f, double lambda, double width,
                          const ActionConfig& cfg);

// Exact test of g(t) g(t^{-1})^T = I for finite Laurent g.
bool orthogonality_check(const LoopMatrix& g);

// Largest |a - b| over the probes divided by the largest |b|.
double relative_residual(const std::vector<double>& a, const std::vector<double>& b);

struct KFixedResult {
  double residual = 0.0;  // max |pi(s(g)) phi - phi| / max |phi|
  double scalar = 0.0;    // measured pi(s(g)) phi / phi at the largest probe value
  double expected_scalar = 0.0;  // lambda^l c^{-dim/2} for s(g) = (t^l, ...)
  int dim = 0;
  int l = 0;
};

// Acts on phi by the lift s(g) = (t^{-k}, (t^k g, mu)) with k minimal so that
// t^k g has power series entries and mu the Euclidean measure on V_{t^k g}.
KFixedResult k_fixed_residual(const LoopMatrix& g, const ActionConfig& cfg);

// Relative residual of pi_c pi_lambda(m) f against pi_{|c|^n lambda}(m) pi_c f,
// where pi_c f(x) = f(x / c).
double pi_c_intertwine_residual(double c, const MeasuredElement& m, const GaussPoly& f, const ActionConfig& cfg);

// Relative residual of pi(a I) pi(m) f against pi(m) pi(a I) f.
double central_G_commute_residual(const TruncatedSeries& a, const MeasuredElement& m, const GaussPoly& f,
                                  const ActionConfig& cfg);

// Relative residual of pi(m1) pi(m2) f against pi(m1 * m2) f.
double homomorphism_residual(const MeasuredElement& m1, const MeasuredElement& m2, const GaussPoly& f,
                             const ActionConfig& cfg);

// Relative residual of the quadrature action of (t I, mu_st) against pi_t(f).
double pi_t_consistency_residual(const GaussPoly& f, const ActionConfig& cfg);

}  // namespace loopfock
