#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

#include "doctest.h"
#include "loopfock/action/loop_action.hpp"
#include "loopfock/errors.hpp"

using namespace loopfock;

namespace {

TruncatedSeries T(const Rational& c, int e = 0) { return TruncatedSeries::monomial(c, e); }

LoopMatrix mat2(TruncatedSeries a, TruncatedSeries b, TruncatedSeries c, TruncatedSeries d) {
  return LoopMatrix(2, {std::move(a), std::move(b), std::move(c), std::move(d)});
}

// Rotation [[3/5, 4/5 t], [-4/5 t^{-1}, 3/5]].
LoopMatrix loop_rotation() {
  return mat2(T(Rational(3, 5)), T(Rational(4, 5), 1), T(Rational(-4, 5), -1), T(Rational(3, 5)));
}

LoopMatrix const_rotation() {
  return mat2(T(Rational(3, 5)), T(Rational(4, 5)), T(Rational(-4, 5)), T(Rational(3, 5)));
}

GaussPoly random_poly(std::mt19937_64& rng, int m, int D) {
  std::uniform_int_distribution<int> count(1, 4), degree(0, 3), depth(1, D), coord(1, m), num(-5, 5), expo(-1, 1);
  GaussPoly f(m, D, D);
  const int k = count(rng);
  for (int t = 0; t < k; ++t) {
    Monomial mono;
    const int d = degree(rng);
    for (int j = 0; j < d; ++j) mono.push_back(slot_key({depth(rng), coord(rng)}));
    std::sort(mono.begin(), mono.end());
    f.add_term(mono, Scalar::monomial(num(rng), expo(rng), expo(rng)));
  }
  return f;
}

// phi + x_{-1}^1 x_{-2}^2 phi at depth D.
GaussPoly test_poly(int D) {
  GaussPoly f(2, D, D);
  f.add_term({}, Scalar(1));
  f.add_term(monomial_of({{1, 1}, {2, 2}}), Scalar(1));
  return f;
}

ActionConfig config(double lambda) {
  ActionConfig cfg;
  cfg.lambda = lambda;
  cfg.eval_depth = 3;
  cfg.probes = 20;
  cfg.seed = 7;
  return cfg;
}

// Values of a GaussPoly at points mapped by a hand-written coordinate map.
template <class Map>
std::vector<double> oracle_values(const GaussPoly& f, const ActionConfig& cfg, Map map) {
  std::vector<double> out;
  for (const auto& x : sample_points(cfg, f.m())) {
    std::vector<double> y = map(x);
    out.push_back(eval_numeric(f, y, cfg.lambda));
  }
  return out;
}

std::vector<double> values(const Evaluator& e, const ActionConfig& cfg) {
  return e.evaluate(PointBatch::from_points(sample_points(cfg, e.m())));
}

}  // namespace

TEST_CASE("offset trapezoid integrates Gaussians spectrally") {
  const Rule1D r = offset_trapezoid(33, 6.0);
  double sum = 0, m2 = 0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    sum += r.w[k] * std::exp(-std::numbers::pi * r.x[k] * r.x[k]);
    m2 += r.w[k] * r.x[k] * r.x[k] * std::exp(-std::numbers::pi * r.x[k] * r.x[k]);
    CHECK(r.x[k] != 0.0);
  }
  CHECK(std::abs(sum - 1.0) < 1e-14);
  CHECK(std::abs(m2 - 1.0 / (2 * std::numbers::pi)) < 1e-14);
  // No node is the reflection of another.
  for (std::size_t a = 0; a < r.size(); ++a)
    for (std::size_t b = 0; b < r.size(); ++b) CHECK(std::abs(r.x[a] + r.x[b]) > 1e-9);
}

TEST_CASE("exp map rule integrates a function flat at zero") {
  // int exp(-pi b^2 - pi / b^2) db = exp(-2 pi)
  const Rule1D r = exp_map_rule(66, 0.05, 6.0);
  double sum = 0;
  for (std::size_t k = 0; k < r.size(); ++k) {
    const double b = r.x[k];
    sum += r.w[k] * std::exp(-std::numbers::pi * (b * b + 1.0 / (b * b)));
  }
  CHECK(std::abs(sum - std::exp(-2 * std::numbers::pi)) < 1e-10);
}

TEST_CASE("config validation and probe determinism") {
  ActionConfig cfg = config(2.0);
  cfg.quad.nodes = 7;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg.quad.nodes = 8;
  cfg.quad.half_width = 3.9;
  CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
  cfg.quad.half_width = 4.0;
  CHECK_NOTHROW(cfg.validate());
  const auto a = sample_points(cfg, 2), b = sample_points(cfg, 2);
  REQUIRE(a.size() == 20);
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].size() == 6);
    CHECK(std::memcmp(a[i].data(), b[i].data(), a[i].size() * sizeof(double)) == 0);
  }
  cfg.seed = 8;
  CHECK(sample_points(cfg, 2)[0] != a[0]);
}

TEST_CASE("substitution by the identity and by permutations") {
  const auto cfg = config(2.0);
  std::mt19937_64 rng(11);
  const GaussPoly f = random_poly(rng, 2, 3);
  const auto id = act_substitution(LoopMatrix::identity(2), f, cfg);
  const auto direct = oracle_values(f, cfg, [](const std::vector<double>& x) { return x; });
  CHECK(relative_residual(values(*id, cfg), direct) < 1e-14);
  // u = swap: (u^{-1} x)^1 = x^2, (u^{-1} x)^2 = x^1 at each depth.
  const LoopMatrix swap = mat2(T(0), T(1), T(1), T(0));
  const auto perm = act_substitution(swap, f, cfg);
  const auto want = oracle_values(f, cfg, [](std::vector<double> x) {
    for (std::size_t d = 0; d + 1 < x.size(); d += 2) std::swap(x[d], x[d + 1]);
    return x;
  });
  CHECK(relative_residual(values(*perm, cfg), want) < 1e-14);
}

TEST_CASE("substitution by I + t E12 matches the hand substitution") {
  ActionConfig cfg = config(1.5);
  cfg.eval_depth = 4;
  std::mt19937_64 rng(5);
  const LoopMatrix u = mat2(T(1), T(1, 1), T(0), T(1));
  for (int rep = 0; rep < 5; ++rep) {
    const GaussPoly f = random_poly(rng, 2, 4);
    // u^{-1} = I - t E12: (u^{-1}x)^1_{-d} = x^1_{-d} - x^2_{-(d+1)}.
    const auto want = oracle_values(f, cfg, [](const std::vector<double>& x) {
      std::vector<double> y = x;
      for (std::size_t d = 0; d < 4; ++d) y[2 * d] = x[2 * d] - (d + 1 < 4 ? x[2 * d + 3] : 0.0);
      return y;
    });
    CHECK(relative_residual(values(*act_substitution(u, f, cfg), cfg), want) < 1e-13);
  }
  CHECK_THROWS_AS(act_substitution(mat2(T(0), T(1), T(1, 1), T(0)), gaussian(2, 3), cfg), NotInvertible);
}

TEST_CASE("action of (tI, mu_st) agrees with pi_t") {
  // 33 nodes on [-6, 6] leave an aliasing floor near 1e-9 of the integrand
  // scale, so the 1e-8 relative check runs at 49 nodes.
  const auto cfg = config(2.0);
  // On phi the value is lambda phi.
  const GaussPoly phi = gaussian(2, 4);
  const auto act = act_integral(standard_element(LoopMatrix::scalar(2, T(1, 1))), phi, cfg);
  const auto want = oracle_values(phi, cfg, [](const std::vector<double>& x) { return x; });
  std::vector<double> scaled(want);
  for (auto& v : scaled) v *= 2.0;
  CHECK(relative_residual(values(*act, cfg), scaled) < 1e-12);
  std::mt19937_64 rng(3);
  double worst = 0;
  for (int rep = 0; rep < 100; ++rep) {
    ActionConfig c = cfg;
    c.lambda = rep % 2 == 0 ? 2.0 : 0.75;
    c.seed = static_cast<std::uint64_t>(rep);
    c.quad.nodes = 49;
    worst = std::max(worst, pi_t_consistency_residual(random_poly(rng, 2, 3), c));
  }
  MESSAGE("worst pi_t consistency residual " << worst);
  CHECK(worst <= 1e-8);
}

TEST_CASE("identity class acts trivially and dimension budget is enforced") {
  const auto cfg = config(2.0);
  const GaussPoly f = test_poly(3);
  const auto act = act_integral(identity_element(2), f, cfg);
  const auto want = oracle_values(f, cfg, [](const std::vector<double>& x) { return x; });
  CHECK(relative_residual(values(*act, cfg), want) < 1e-15);
  const LoopMatrix big = LoopMatrix::diag_monomial({5, 0});
  CHECK_THROWS_AS(act_integral(standard_element(big), f, cfg), DimensionTooLarge);
}

TEST_CASE("orthogonality check examples") {
  CHECK(orthogonality_check(loop_rotation()));
  CHECK(orthogonality_check(LoopMatrix::diag_monomial({1, -1})));
  CHECK(orthogonality_check(const_rotation()));
  CHECK_FALSE(orthogonality_check(LoopMatrix::from_rationals(2, {2, 0, 0, Rational(1, 2)})));
}

TEST_CASE("the Gaussian is fixed by the orthogonal loop group") {
  for (double lambda : {1.0, 2.0, 0.6}) {
    const auto cfg = config(lambda);
    const KFixedResult id = k_fixed_residual(LoopMatrix::identity(2), cfg);
    CHECK(id.residual == 0.0);
    const KFixedResult rot = k_fixed_residual(loop_rotation(), cfg);
    CHECK(rot.dim == 2);
    CHECK(rot.l == -1);
    CHECK(rot.residual <= 1e-8);
    CHECK(std::abs(rot.expected_scalar - 1.0) < 1e-14);
    CHECK(std::abs(rot.scalar - rot.expected_scalar) <= 1e-8);
    const KFixedResult c = k_fixed_residual(const_rotation(), cfg);
    CHECK(c.dim == 0);
    CHECK(c.residual <= 1e-12);
    const KFixedResult d = k_fixed_residual(LoopMatrix::diag_monomial({1, -1}), cfg);
    CHECK(d.residual <= 1e-8);
  }
  CHECK_THROWS_AS(k_fixed_residual(LoopMatrix::from_rationals(2, {2, 0, 0, Rational(1, 2)}), config(1.0)),
                  InvalidArgument);
}

TEST_CASE("pi_c intertwines the actions at lambda and |c|^n lambda") {
  const auto cfg = config(1.5);
  const GaussPoly f = test_poly(3);
  const MeasuredElement rot = standard_element(const_rotation());
  CHECK(pi_c_intertwine_residual(1.0, rot, f, cfg) <= 1e-15);
  CHECK(pi_c_intertwine_residual(2.0, rot, f, cfg) <= 1e-10);
  const MeasuredElement diag = standard_element(LoopMatrix::diag_monomial({2, 0}), -1);
  CHECK(pi_c_intertwine_residual(1.0, diag, f, cfg) <= 1e-15);
  const double r = pi_c_intertwine_residual(2.0, diag, f, cfg);
  MESSAGE("pi_c residual for the monomial case " << r);
  CHECK(r <= 1e-6);
  CHECK(pi_c_intertwine_residual(-0.5, diag, f, cfg) <= 1e-6);
}

TEST_CASE("the central subgroup commutes with the action") {
  const auto cfg = config(1.5);
  const GaussPoly f = test_poly(3);
  const MeasuredElement rot = standard_element(const_rotation());
  const MeasuredElement diag = standard_element(LoopMatrix::diag_monomial({2, 0}), -1);
  CHECK(central_G_commute_residual(T(1), rot, f, cfg) <= 1e-14);
  CHECK(central_G_commute_residual(T(1, 1), rot, f, cfg) <= 1e-8);
  const TruncatedSeries one_plus_t = T(1) + T(1, 1);
  const double r = central_G_commute_residual(one_plus_t, diag, f, cfg);
  MESSAGE("central G residual for 1 + t " << r);
  CHECK(r <= 1e-6);
  CHECK_THROWS_AS(central_G_commute_residual(T(2), rot, f, cfg), InvalidArgument);
}

TEST_CASE("the action is a homomorphism on diagonal elements") {
  const auto cfg = config(2.0);
  const GaussPoly f = test_poly(3);
  const MeasuredElement m1 = standard_element(LoopMatrix::diag_monomial({1, 0}));
  const MeasuredElement m2 = standard_element(LoopMatrix::diag_monomial({0, 1}), 1);
  const MeasuredElement m3 = make_element(LoopMatrix::diag_monomial({1, 1}),
                                          HaarMeasure{mu_st(LoopMatrix::diag_monomial({1, 1})).basis, 3});
  CHECK(homomorphism_residual(m1, m2, f, cfg) <= 1e-6);
  CHECK(homomorphism_residual(m2, m1, f, cfg) <= 1e-6);
  CHECK(homomorphism_residual(m3, m1, f, cfg) <= 1e-6);
}

TEST_CASE("doubling the node count leaves residuals stable") {
  ActionConfig cfg = config(2.0);
  const GaussPoly f = test_poly(3);
  const MeasuredElement diag = standard_element(LoopMatrix::diag_monomial({2, 0}), -1);
  const double r33 = pi_c_intertwine_residual(2.0, diag, f, cfg);
  const auto v33 = values(*act_integral(diag, f, cfg), cfg);
  cfg.quad.nodes = 66;
  const double r66 = pi_c_intertwine_residual(2.0, diag, f, cfg);
  const auto v66 = values(*act_integral(diag, f, cfg), cfg);
  CHECK(relative_residual(v66, v33) < 1e-8);
  CHECK(std::abs(r66 - r33) <= 0.1 * r33 + 1e-12);
}
