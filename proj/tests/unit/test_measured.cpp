#include <random>

#include "doctest.h"
#include "loopfock/errors.hpp"
#include "loopfock/semigroup/measured.hpp"
#include "support/random_loop.hpp"

using namespace loopfock;

namespace {

LoopMatrix scalar_matrix(int n, const Rational& c) { return LoopMatrix::scalar(n, TruncatedSeries(c)); }

MeasuredElement random_element(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> num(1, 7);
  const LoopMatrix g = testing::random_structured_matrix(rng, n, 2);
  HaarMeasure mu = unit_measure(g);
  mu.scale = Rational(num(rng)) / num(rng);
  return MeasuredElement{0, g, mu};
}

}  // namespace

TEST_CASE("standard measure examples") {
  const HaarMeasure tt = mu_st(LoopMatrix::diag_monomial({1, 1}));
  CHECK(tt.scale == 1);
  REQUIRE(tt.basis.size() == 2);
  CHECK(tt.basis[0] == NegVector{1, 0});
  CHECK(tt.basis[1] == NegVector{0, 1});
  CHECK(mu_st(LoopMatrix::identity(2)).dim() == 0);
  LoopMatrix u = LoopMatrix::identity(2);
  u(0, 1) = TruncatedSeries::monomial(3, 1);
  u(1, 1) = TruncatedSeries(Rational(2));
  CHECK(mu_st(u).dim() == 0);
  // Unsorted diagonal: canonical orthonormal vectors, scale 1.
  const HaarMeasure d = mu_st(LoopMatrix::diag_monomial({0, 2}));
  CHECK(same_measure(d, HaarMeasure{{NegVector{0, 1, 0, 0}, NegVector{0, 0, 0, 1}}, 1}));
}

TEST_CASE("rebase multiplies by the change-of-basis determinant") {
  const HaarMeasure mu{{NegVector{1, 0}, NegVector{0, 1}}, Rational(3)};
  const HaarMeasure r = rebase(mu, {NegVector{2, 0}, NegVector{1, 5}});
  CHECK(r.scale == 30);
  CHECK(same_measure(mu, r));
}

TEST_CASE("diagonal monomials compose with the standard measure") {
  const MeasuredElement a = standard_element(LoopMatrix::diag_monomial({1, 0}));
  const MeasuredElement b = standard_element(LoopMatrix::diag_monomial({1, 2}));
  const MeasuredElement ab = convolve(a, b);
  CHECK(same_pair(ab, standard_element(LoopMatrix::diag_monomial({2, 2}))));
}

TEST_CASE("scalar and t commute up to |c|^{kn}") {
  const MeasuredElement t = standard_element(LoopMatrix::diag_monomial({1, 1}));
  const MeasuredElement two = standard_element(scalar_matrix(2, 2));
  const MeasuredElement left = convolve(t, two);
  const MeasuredElement right = convolve(two, t);
  CHECK(left.g.agrees_with(right.g));
  CHECK(rebase(left.mu, right.mu.basis).scale == 4 * right.mu.scale);
  CHECK(left.mu.scale == 4);
  CHECK(right.mu.scale == 1);
}

TEST_CASE("identity element") {
  std::mt19937_64 rng(11);
  const MeasuredElement m = random_element(rng, 2);
  CHECK(same_pair(convolve(identity_element(2), m), m));
  CHECK(same_pair(convolve(m, identity_element(2)), m));
}

TEST_CASE("inverse examples") {
  const MeasuredElement t = standard_element(LoopMatrix::diag_monomial({1, 1}));
  const MeasuredElement inv = invert(t);
  CHECK(same_class(inv, MeasuredElement{-1, LoopMatrix::identity(2), HaarMeasure{}}));
  CHECK(is_identity_class(convolve(t, inv)));

  const MeasuredElement a{0, LoopMatrix::identity(2), HaarMeasure{{}, Rational(5, 3)}};
  const MeasuredElement ainv = invert(a);
  CHECK(ainv.mu.scale == Rational(3, 5));
  CHECK_THROWS_AS(invert(standard_element(scalar_matrix(2, 2))), NotInvertible);
}

TEST_CASE("normalization moves the common t-power into l") {
  const MeasuredElement t2 = standard_element(LoopMatrix::diag_monomial({2, 2}), 1);
  const MeasuredElement n = normalize(t2);
  CHECK(n.l == 3);
  CHECK(n.g.agrees_with(LoopMatrix::identity(2)));
  CHECK(n.mu.scale == 1);
}

TEST_CASE("commutation scalars") {
  CHECK(commutation_scalar(scalar_matrix(2, 2), 1) == 4);
  CHECK(commutation_scalar(LoopMatrix::from_rationals(2, {3, 0, 0, 1}), 2) == 9);
  // Closed form |det u(0)|^k for unipotent-by-unit u.
  LoopMatrix u = LoopMatrix::from_rationals(2, {1, 5, 0, -1});
  u(1, 0) = TruncatedSeries::monomial(2, 1);
  CHECK(commutation_scalar(u, 3) == 1);
  for (int c = 1; c <= 3; ++c) {
    for (int k = 0; k <= 2; ++k) {
      for (int n = 2; n <= 3; ++n) {
        CHECK(commutation_scalar(scalar_matrix(n, c), k) == pow_rational(c, k * n));
      }
    }
  }
}

TEST_CASE("central subgroup membership") {
  CHECK(is_central_G(TruncatedSeries::monomial(1, 1)));
  CHECK_FALSE(is_central_G(TruncatedSeries(Rational(2))));
  CHECK(is_central_G(TruncatedSeries(std::map<int, Rational>{{0, -1}, {1, 3}}, TruncatedSeries::kExact)));
}

TEST_CASE("associativity, homomorphism and positivity on random triples") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 2;
    const MeasuredElement a = random_element(rng, n);
    const MeasuredElement b = random_element(rng, n);
    const MeasuredElement c = random_element(rng, n);
    const MeasuredElement ab_c = convolve(convolve(a, b), c);
    const MeasuredElement a_bc = convolve(a, convolve(b, c));
    CHECK(same_pair(ab_c, a_bc));
    CHECK(ab_c.g.agrees_with(a.g * b.g * c.g));
    CHECK(ab_c.mu.scale > 0);
  }
}

TEST_CASE("random inverses") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + trial % 2;
    MeasuredElement m = standard_element(testing::random_gl0_matrix(rng, n, 2), trial % 3 - 1);
    m.mu.scale *= Rational(trial % 4 + 1) / 2;
    const MeasuredElement inv = invert(m);
    CHECK(is_identity_class(convolve(m, inv)));
  }
}

TEST_CASE("commutation scalar is one on GL_n(F)_0 units") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    LoopMatrix u = LoopMatrix::identity(2);
    u(0, 1) = testing::random_poly(rng, 0, 2, TruncatedSeries::kExact);
    u(1, 0) = testing::random_poly(rng, 1, 2, TruncatedSeries::kExact);
    REQUIRE(in_GL0(u));
    CHECK(commutation_scalar(u, 1 + trial % 2) == 1);
  }
}
