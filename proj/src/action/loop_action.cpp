#include "loopfock/action/loop_action.hpp"

#include <algorithm>
#include <cmath>

#include "loopfock/errors.hpp"

namespace loopfock {

void ActionConfig::validate() const {
  if (!(lambda > 0)) throw InvalidArgument("lambda must be positive");
  if (eval_depth < 1) throw InvalidArgument("eval_depth must be at least 1");
  if (probes < 1) throw InvalidArgument("probes must be at least 1");
  if (!(probe_scale > 0)) throw InvalidArgument("probe scale must be positive");
  quad.validate();
}

double ActionConfig::width(int m) const { return std::pow(lambda, -2.0 / m); }

std::vector<std::vector<double>> sample_points(const ActionConfig& cfg, int m) {
  return probe_points(cfg.probes, cfg.eval_depth * m, cfg.seed, cfg.probe_scale);
}

namespace {

void require_vector_model(const GaussPoly& f, const LoopMatrix& g) {
  if (f.m() != g.n()) throw InvalidArgument("group actions need the vector model with m = n");
}

EvaluatorPtr evaluator_of(const GaussPoly& f, double lambda) {
  return std::make_shared<GaussPolyEvaluator>(f, lambda);
}

std::vector<double> values_at(const Evaluator& e, const ActionConfig& cfg) {
  return e.evaluate(PointBatch::from_points(sample_points(cfg, e.m())));
}

}  // namespace

EvaluatorPtr act_substitution(const LoopMatrix& u, const GaussPoly& f, const ActionConfig& cfg) {
  cfg.validate();
  require_vector_model(f, u);
  if (!u.in_power_series()) throw InvalidArgument("substitution needs u with power series entries");
  const LoopMatrix u0 = LoopMatrix::from_rationals(u.n(), u.constant_term());
  if (u0.determinant().is_zero_to_precision()) throw NotInvertible("u(0) is singular");
  return std::make_shared<LinearSubstitution>(evaluator_of(f, cfg.lambda), u, 1.0, true);
}

EvaluatorPtr act_integral(const MeasuredElement& m, EvaluatorPtr f, double lambda, double width,
                          const ActionConfig& cfg) {
  cfg.validate();
  IntegralOptions opt;
  opt.lambda = lambda;
  opt.width = width;
  opt.quad = cfg.quad;
  return std::make_shared<IntegralAction>(std::move(f), m, opt);
}

EvaluatorPtr act_integral(const MeasuredElement& m, const GaussPoly& f, const ActionConfig& cfg) {
  require_vector_model(f, m.g);
  return act_integral(m, evaluator_of(f, cfg.lambda), cfg.lambda, cfg.width(f.m()), cfg);
}

bool orthogonality_check(const LoopMatrix& g) {
  if (!g.is_exact()) throw InvalidArgument("orthogonality check needs exact Laurent entries");
  return (g * g.reflected().transpose()).agrees_with(LoopMatrix::identity(g.n()));
}

double relative_residual(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num = std::max(num, std::abs(a[i] - b[i]));
    den = std::max(den, std::abs(b[i]));
  }
  if (den == 0.0) return num;
  return num / den;
}

KFixedResult k_fixed_residual(const LoopMatrix& g, const ActionConfig& cfg) {
  cfg.validate();
  if (!orthogonality_check(g)) throw InvalidArgument("k_fixed_residual needs g in the orthogonal loop group");
  const int n = g.n();
  const int k = std::max(0, -g.min_valuation());
  const LoopMatrix h = g.shifted(k);
  MeasuredElement s{-k, h, mu_st(h)};
  IntegralOptions opt;
  opt.lambda = cfg.lambda;
  opt.width = cfg.width(n);
  opt.quad = cfg.quad;
  opt.euclidean_measure = true;
  const GaussPoly phi = gaussian(n, cfg.eval_depth);
  const auto phi_eval = evaluator_of(phi, cfg.lambda);
  const IntegralAction act(phi_eval, s, opt);
  const auto lhs = values_at(act, cfg);
  const auto rhs = values_at(*phi_eval, cfg);
  KFixedResult r;
  r.residual = relative_residual(lhs, rhs);
  r.dim = s.mu.dim();
  r.l = s.l;
  const auto top = std::max_element(rhs.begin(), rhs.end(), [](double a, double b) { return std::abs(a) < std::abs(b); });
  const std::size_t i = static_cast<std::size_t>(top - rhs.begin());
  r.scalar = lhs[i] / rhs[i];
  r.expected_scalar = std::pow(cfg.lambda, s.l) * std::pow(cfg.width(n), -0.5 * r.dim);
  return r;
}

double pi_c_intertwine_residual(double c, const MeasuredElement& m, const GaussPoly& f, const ActionConfig& cfg) {
  if (c == 0.0) throw InvalidArgument("c must be nonzero");
  require_vector_model(f, m.g);
  const int n = f.m();
  const LoopMatrix I = LoopMatrix::identity(n);
  const double w = cfg.width(n);
  const auto F = evaluator_of(f, cfg.lambda);
  const LinearSubstitution lhs(act_integral(m, F, cfg.lambda, w, cfg), I, 1.0 / c);
  const double lambda2 = std::pow(std::abs(c), n) * cfg.lambda;
  const auto rhs = act_integral(m, std::make_shared<LinearSubstitution>(F, I, 1.0 / c), lambda2, w / (c * c), cfg);
  return relative_residual(values_at(lhs, cfg), values_at(*rhs, cfg));
}

double central_G_commute_residual(const TruncatedSeries& a, const MeasuredElement& m, const GaussPoly& f,
                                  const ActionConfig& cfg) {
  if (!is_central_G(a)) throw InvalidArgument("a is not in the central subgroup G");
  require_vector_model(f, m.g);
  const int n = f.m();
  const MeasuredElement A = standard_element(LoopMatrix::scalar(n, a));
  const double w = cfg.width(n);
  const auto F = evaluator_of(f, cfg.lambda);
  const auto lhs = act_integral(A, act_integral(m, F, cfg.lambda, w, cfg), cfg.lambda, w, cfg);
  const auto rhs = act_integral(m, act_integral(A, F, cfg.lambda, w, cfg), cfg.lambda, w, cfg);
  return relative_residual(values_at(*lhs, cfg), values_at(*rhs, cfg));
}

double homomorphism_residual(const MeasuredElement& m1, const MeasuredElement& m2, const GaussPoly& f,
                             const ActionConfig& cfg) {
  require_vector_model(f, m1.g);
  const double w = cfg.width(f.m());
  const auto F = evaluator_of(f, cfg.lambda);
  const auto lhs = act_integral(m1, act_integral(m2, F, cfg.lambda, w, cfg), cfg.lambda, w, cfg);
  const auto rhs = act_integral(convolve(m1, m2), F, cfg.lambda, w, cfg);
  return relative_residual(values_at(*lhs, cfg), values_at(*rhs, cfg));
}

double pi_t_consistency_residual(const GaussPoly& f, const ActionConfig& cfg) {
  const int n = f.m();
  const auto lhs = act_integral(standard_element(LoopMatrix::scalar(n, TruncatedSeries::monomial(1, 1))), f, cfg);
  const GaussPolyEvaluator rhs(pi_t(f), cfg.lambda);
  return relative_residual(values_at(*lhs, cfg), values_at(rhs, cfg));
}

}  // namespace loopfock
