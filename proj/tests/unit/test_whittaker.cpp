#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "loopfock/errors.hpp"
#include "loopfock/functionals/whittaker.hpp"

using namespace loopfock;

namespace {

constexpr double kPi = std::numbers::pi;

TruncatedSeries T(const Rational& c, int e = 0) { return TruncatedSeries::monomial(c, e); }

// c_w^{-dim/2} times exp(-2 pi |c_k|) per phase pair; each pair contributes
// (1 / c_w) exp(-2 pi |c|) and every other variable c_w^{-1/2}.
double closed_form(int dim, const std::vector<double>& c, double cw) {
  double v = std::pow(cw, -0.5 * dim);
  for (double ck : c) v *= std::exp(-2 * kPi * std::abs(ck));
  return v;
}

GaussPoly poly_times_phi(int n) {
  const int m = n * n;
  GaussPoly f(m, 2, 2);
  f.add_term({}, Scalar(1));
  f.add_term(monomial_of({{1, 1}, {1, m}}), Scalar(2));
  f.add_term(monomial_of({{1, 2}, {1, 2}}), Scalar(1));
  return f;
}

}  // namespace

TEST_CASE("slice layouts") {
  const auto s2 = loop_slice(2, WhittakerSide::first);
  CHECK(s2.dim() == 5);
  CHECK(s2.vars == std::vector<int>{0, 1, 2, 3, 5});
  CHECK(s2.phases.size() == 2);
  CHECK(s2.phases[0].num == 0);  // x11 / x21
  CHECK(s2.phases[0].den == 2);
  CHECK(s2.phases[1].num == 3);  // x22 / y
  CHECK(s2.phases[1].den == 4);
  const auto s2b = loop_slice(2, WhittakerSide::second);
  CHECK(s2b.phases[0].num == 3);  // x22 / x21
  CHECK(s2b.phases[0].den == 2);
  CHECK(s2b.phases[1].num == 0);  // x11 / y
  CHECK(loop_slice(3, WhittakerSide::first).dim() == 9);
  const auto f1 = finite_slice(WhittakerSide::first);
  CHECK(f1.dim() == 8);
  CHECK(std::find(f1.vars.begin(), f1.vars.end(), 6) == f1.vars.end());  // x31 pinned
  CHECK_THROWS_AS(loop_slice(4, WhittakerSide::first), InvalidArgument);
}

TEST_CASE("character evaluation") {
  CHECK(std::abs(character_eval({{0, 0}}, {1.0, 0.5}) - 1.0) < 1e-15);
  CHECK(std::abs(character_eval({{1, 0}}, {0.5, 0.0}) + 1.0) < 1e-15);
  const UnipotentParams a{{Rational(1, 3), Rational(-2, 7)}}, b{{Rational(3, 4), Rational(1, 5)}};
  UnipotentParams ab{{a.values[0] + b.values[0], a.values[1] + b.values[1]}};
  const std::vector<double> c{1.3, -0.7};
  CHECK(std::abs(character_eval(ab, c) - character_eval(a, c) * character_eval(b, c)) < 1e-14);
}

TEST_CASE("parameter extraction") {
  const LoopMatrix u(2, {T(1), T(Rational(1, 2)) + T(3, 2), T(Rational(1, 4), 1), T(1) + T(5, 1)});
  const auto p = extract_params(u, WhittakerSide::first, false);
  CHECK(p.values == std::vector<Rational>{Rational(1, 2), Rational(1, 4)});
  const LoopMatrix v(2, {T(1), T(Rational(1, 4), 1), T(Rational(1, 2)), T(1)});
  CHECK(extract_params(v, WhittakerSide::second, false).values == std::vector<Rational>{Rational(1, 2), Rational(1, 4)});
  CHECK_THROWS_AS(extract_params(v, WhittakerSide::first, false), InvalidArgument);
  CHECK_THROWS_AS(extract_params(LoopMatrix::from_rationals(2, {2, 0, 0, 1}), WhittakerSide::first, false),
                  InvalidArgument);
  const LoopMatrix uf = LoopMatrix::from_rationals(3, {1, Rational(3, 10), Rational(1, 10), 0, 1, Rational(-1, 5), 0, 0, 1});
  CHECK(extract_params(uf, WhittakerSide::first, true).values == std::vector<Rational>{Rational(3, 10), Rational(-1, 5)});
}

TEST_CASE("unipotent transform matches Laurent matrix products") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> num(-4, 4);
  for (int n = 2; n <= 3; ++n) {
    const int m = n * n, depth = 2;
    // u with u(0) upper unipotent plus a random t-term; v lower.
    LoopMatrix u(n), v(n);
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) {
        u(r, c) = T(r == c ? 1 : (r < c ? Rational(num(rng)) / 3 : Rational(0))) + T(Rational(num(rng)) / 5, 1);
        v(r, c) = T(r == c ? 1 : (r > c ? Rational(num(rng)) / 3 : Rational(0))) + T(Rational(num(rng)) / 5, 1);
      }
    }
    std::vector<double> x(static_cast<std::size_t>(m * depth));
    LoopMatrix X(n);
    for (int d = 1; d <= depth; ++d) {
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
          const int q = num(rng);
          x[static_cast<std::size_t>((d - 1) * m + r * n + c)] = q;
          X(r, c) = X(r, c) + T(q, -d);
        }
      }
    }
    for (auto side : {WhittakerSide::first, WhittakerSide::second}) {
      const LoopMatrix& g = side == WhittakerSide::first ? u : v;
      const LoopMatrix prod = side == WhittakerSide::first ? g * X : X * g.transpose();
      const auto Tm = unipotent_transform(g, side, depth);
      const std::size_t Fd = x.size();
      for (int d = 1; d <= depth; ++d) {
        for (int r = 0; r < n; ++r) {
          for (int c = 0; c < n; ++c) {
            const std::size_t row = static_cast<std::size_t>((d - 1) * m + r * n + c);
            double y = 0;
            for (std::size_t k = 0; k < Fd; ++k) y += Tm[row * Fd + k] * x[k];
            CHECK(y == doctest::Approx(to_double(prod(r, c).coeff(-d))).epsilon(1e-14));
          }
        }
      }
    }
  }
}

TEST_CASE("phase-free functionals match the separable Gaussian oracle") {
  for (double lambda : {1.0, 2.0}) {
    WhittakerConfig cfg;
    cfg.lambda = lambda;
    cfg.c = {0.0, 0.0};
    const double cw = std::pow(lambda, -0.5);
    const auto psi = psi_loop(2, cfg, gaussian(4, 2));
    CHECK(std::abs(psi.value - closed_form(5, {}, cw)) <= 1e-6 * closed_form(5, {}, cw));
    const auto psi2 = psi_loop(2, cfg, gaussian(4, 2), WhittakerSide::second);
    CHECK(psi.value == psi2.value);
    WhittakerConfig fc = cfg;
    fc.gauss_nodes = 6;
    const double cw9 = std::pow(lambda, -2.0 / 9.0);
    const auto phi = phi_finite(fc, gaussian(9, 1));
    CHECK(std::abs(phi.value - closed_form(8, {}, cw9)) <= 1e-6 * closed_form(8, {}, cw9));
  }
}

TEST_CASE("oscillatory functionals match the closed form") {
  WhittakerConfig cfg;
  cfg.c = {1.0, 0.5};
  const auto psi = psi_loop(2, cfg, gaussian(4, 2));
  const double want = closed_form(5, cfg.c, 1.0);
  CHECK(std::abs(psi.value - want) <= 1e-4 * want);
  CHECK(psi.error_estimate < 1e-4);
  cfg.lambda = 2.0;
  cfg.c = {-0.5, 2.0};
  const auto psi2 = psi_loop(2, cfg, gaussian(4, 2), WhittakerSide::second);
  const double want2 = closed_form(5, cfg.c, std::pow(2.0, -0.5));
  CHECK(std::abs(psi2.value - want2) <= 1e-3 * want2);
  WhittakerConfig fc;
  fc.c = {1.0, 0.5};
  fc.gauss_nodes = 6;
  const auto phi = phi_finite(fc, gaussian(9, 1));
  CHECK(std::abs(phi.value - closed_form(8, fc.c, 1.0)) <= 1e-4 * closed_form(8, fc.c, 1.0));
}

TEST_CASE("node doubling changes the loop functional by under 1%") {
  WhittakerConfig cfg;
  cfg.c = {1.0, 0.5};
  cfg.gauss_nodes = 8;
  const auto a = psi_loop(2, cfg, gaussian(4, 2));
  cfg.quad.nodes = 66;
  const auto b = psi_loop(2, cfg, gaussian(4, 2));
  CHECK(std::isfinite(a.value.real()));
  CHECK(std::abs(a.value - b.value) <= 0.01 * std::abs(b.value));
}

TEST_CASE("loop covariance, first and second side") {
  WhittakerConfig cfg;
  cfg.c = {1.0, 0.5};
  const GaussPoly phi = gaussian(4, 2);
  const auto id = whittaker_covariance(LoopMatrix::identity(2), cfg, phi, WhittakerSide::first);
  CHECK(id.relerr == 0.0);
  const LoopMatrix u(2, {T(1), T(Rational(1, 2)), T(Rational(1, 4), 1), T(1)});
  const auto r1 = whittaker_covariance(u, cfg, phi, WhittakerSide::first);
  MESSAGE("first side relerr " << r1.relerr << " change of variables " << r1.change_of_variable_relerr);
  CHECK(r1.relerr <= 2e-2);
  CHECK(r1.change_of_variable_relerr <= 1e-12);
  CHECK_FALSE(r1.rhs_near_zero);
  // The character is not trivial here, so covariance is not a tautology.
  CHECK(std::abs(r1.rhs - psi_loop(2, cfg, phi).value) > 0.5 * std::abs(r1.rhs));
  const LoopMatrix v(2, {T(1), T(Rational(1, 4), 1), T(Rational(1, 2)), T(1)});
  const auto r2 = whittaker_covariance(v, cfg, phi, WhittakerSide::second);
  CHECK(r2.relerr <= 2e-2);
  CHECK(r2.change_of_variable_relerr <= 1e-12);
  // Polynomial factor and lambda != 1.
  cfg.lambda = 1.5;
  const auto r3 = whittaker_covariance(u, cfg, poly_times_phi(2), WhittakerSide::first);
  CHECK(r3.relerr <= 2e-2);
  CHECK(r3.change_of_variable_relerr <= 1e-12);
  // Zero phase: pure Jacobian test.
  cfg.c = {0.0, 0.0};
  const auto r4 = whittaker_covariance(u, cfg, poly_times_phi(2), WhittakerSide::first);
  CHECK(r4.relerr <= 1e-6);
}

TEST_CASE("finite GL_3 covariance on both sides") {
  WhittakerConfig cfg;
  cfg.c = {1.0, 0.5};
  cfg.gauss_nodes = 6;
  const GaussPoly phi = gaussian(9, 1);
  const LoopMatrix u = LoopMatrix::from_rationals(3, {1, Rational(3, 10), Rational(1, 10), 0, 1, Rational(-1, 5), 0, 0, 1});
  const auto r1 = whittaker_covariance(u, cfg, phi, WhittakerSide::first, true);
  CHECK(r1.relerr <= 2e-2);
  CHECK(r1.change_of_variable_relerr <= 1e-12);
  const LoopMatrix v = LoopMatrix::from_rationals(3, {1, 0, 0, Rational(3, 10), 1, 0, Rational(1, 10), Rational(-1, 5), 1});
  const auto r2 = whittaker_covariance(v, cfg, phi, WhittakerSide::second, true);
  CHECK(r2.relerr <= 2e-2);
  CHECK(r2.change_of_variable_relerr <= 1e-12);
}

TEST_CASE("configuration errors") {
  WhittakerConfig cfg;
  cfg.c = {5.0, 0.5};
  CHECK_THROWS_AS(psi_loop(2, cfg, gaussian(4, 2)), InvalidArgument);
  cfg.c = {1.0};
  CHECK_THROWS_AS(psi_loop(2, cfg, gaussian(4, 2)), InvalidArgument);
  cfg.c = {1.0, 0.5, 0.25};
  CHECK_THROWS_AS(psi_loop(3, cfg, gaussian(9, 2)), BudgetExceeded);
  cfg.c = {1.0, 0.5};
  CHECK_THROWS_AS(psi_loop(2, cfg, gaussian(9, 2)), InvalidArgument);
}

TEST_CASE("n = 3 loop functional at a reduced budget") {
  WhittakerConfig cfg;
  cfg.c = {1.0, 0.5, 0.25};
  cfg.quad.nodes = 24;
  cfg.gauss_nodes = 4;
  const auto psi = psi_loop(3, cfg, gaussian(9, 2));
  const double want = closed_form(9, cfg.c, 1.0);
  CHECK(std::abs(psi.value - want) <= 1e-3 * want);
  CHECK(std::abs(psi.value - want) <= psi.error_estimate);
}
