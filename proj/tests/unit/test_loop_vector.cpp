#include <random>

#include "doctest.h"
#include "loopfock/dvr/loop_vector.hpp"
#include "support/random_loop.hpp"

using namespace loopfock;

namespace {

LoopMatrix rotation() {
  LoopMatrix g(2);
  g(0, 0) = TruncatedSeries(Rational(3, 5));
  g(0, 1) = TruncatedSeries::monomial(Rational(4, 5), 1);
  g(1, 0) = TruncatedSeries::monomial(Rational(-4, 5), -1);
  g(1, 1) = TruncatedSeries(Rational(3, 5));
  return g;
}

}  // namespace

TEST_CASE("inner product examples") {
  CHECK(loop_inner_product(unit_vector(2, 0, 2), unit_vector(2, 0, 2)) == 1);
  CHECK(loop_inner_product(unit_vector(2, 0, 2), unit_vector(2, 0, 3)) == 0);
  LoopVector u = unit_vector(2, 0, 0);
  u[1] = TruncatedSeries::monomial(1, 1);
  LoopVector v = unit_vector(2, 0, 0);
  v[1] = TruncatedSeries::monomial(-1, 1);
  CHECK(loop_inner_product(u, v) == 0);
}

TEST_CASE("orthonormality of e_i t^j") {
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      for (int j = -5; j <= 5; ++j) {
        for (int l = -5; l <= 5; ++l) {
          const Rational ip = loop_inner_product(unit_vector(3, i, j), unit_vector(3, k, l));
          CHECK(ip == ((i == k && j == l) ? 1 : 0));
        }
      }
    }
  }
}

TEST_CASE("negative projection") {
  LoopVector x(2);
  x[0] = TruncatedSeries(std::map<int, Rational>{{-1, 1}, {0, 1}, {1, 1}}, TruncatedSeries::kExact);
  const LoopVector p = negative_projection(x);
  CHECK(p[0].terms().size() == 1);
  CHECK(p[0].coeff(-1) == 1);
  CHECK(negative_projection(unit_vector(2, 1, 3))[1].is_zero_to_precision());
}

TEST_CASE("orthogonal loop matrices preserve the inner product") {
  const LoopMatrix g = rotation();
  // g(t) g(t^{-1})^T = I, checked symbolically.
  CHECK((g * g.reflected().transpose()).agrees_with(LoopMatrix::identity(2)));
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    LoopVector u(2), v(2);
    for (int a = 0; a < 2; ++a) {
      u[static_cast<std::size_t>(a)] = testing::random_poly(rng, -3, 3, TruncatedSeries::kExact);
      v[static_cast<std::size_t>(a)] = testing::random_poly(rng, -3, 3, TruncatedSeries::kExact);
    }
    CHECK(loop_inner_product(mat_vec(g, u), mat_vec(g, v)) == loop_inner_product(u, v));
    CHECK(loop_inner_product(u, v) == loop_inner_product(v, u));
  }
}

TEST_CASE("g^{-1} x stays negative for polynomial orthogonal g") {
  const LoopMatrix g = rotation().shifted(1);  // t g has polynomial entries
  const LoopMatrix ginv = rotation().reflected().transpose().shifted(-1);
  CHECK((g * ginv).agrees_with(LoopMatrix::identity(2)));
  LoopVector x(2);
  x[0] = TruncatedSeries(std::map<int, Rational>{{-1, 2}, {-3, 1}}, TruncatedSeries::kExact);
  x[1] = TruncatedSeries(std::map<int, Rational>{{-2, -1}}, TruncatedSeries::kExact);
  const LoopVector y = mat_vec(ginv, x);
  const LoopVector p = negative_projection(y);
  for (int a = 0; a < 2; ++a) CHECK(p[static_cast<std::size_t>(a)].agrees_with(y[static_cast<std::size_t>(a)]));
}

TEST_CASE("exact linear algebra helpers") {
  CHECK(determinant({{2, 1}, {1, 1}}) == 1);
  CHECK(determinant({{0, 1}, {1, 0}}) == -1);
  std::vector<NegVector> basis{{1, 0, 1}, {0, 1, 1}};
  auto c = solve_in_span(basis, {2, 3, 5});
  REQUIRE(c);
  CHECK((*c)[0] == 2);
  CHECK((*c)[1] == 3);
  CHECK_FALSE(solve_in_span(basis, {1, 0, 0}));
  CHECK(rank_of({{1, 2}, {2, 4}}) == 1);
}
