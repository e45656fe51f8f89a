#include <random>

#include "doctest.h"
#include "loopfock/errors.hpp"
#include "loopfock/io/json_io.hpp"
#include "support/random_loop.hpp"

using namespace loopfock;

namespace {

bool same_matrix(const LoopMatrix& a, const LoopMatrix& b) {
  if (a.n() != b.n()) return false;
  for (int r = 0; r < a.n(); ++r) {
    for (int c = 0; c < a.n(); ++c) {
      if (a(r, c).order() != b(r, c).order() || a(r, c).terms() != b(r, c).terms()) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("LoopMatrix round trip") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 2;
    const LoopMatrix g = trial % 2 ? testing::random_semigroup_matrix(rng, n, 3, 6)
                                   : testing::random_structured_matrix(rng, n, 2);
    const Json j = to_json(g);
    CHECK(j["n"] == n);
    CHECK(same_matrix(loop_matrix_from_json(Json::parse(j.dump())), g));
  }
}

TEST_CASE("LoopMatrix document layout") {
  const Json j = Json::parse(R"({"n": 2, "T": 4, "entries": [[[[0, "1"], [1, "1/2"]], []], [[], [[-1, "3"]]]]})");
  const LoopMatrix g = loop_matrix_from_json(j);
  CHECK(g(0, 0).coeff(1) == Rational(1, 2));
  CHECK(g(1, 1).coeff(-1) == 3);
  CHECK(g.order() == 4);
  CHECK(to_json(g) == j);
  const Json exact = to_json(LoopMatrix::identity(2));
  CHECK(exact["T"].is_null());
  CHECK(loop_matrix_from_json(exact).is_exact());
}

TEST_CASE("malformed documents name the field") {
  CHECK_THROWS_WITH_AS(loop_matrix_from_json(Json::parse(R"({"n": 2})")), doctest::Contains("entries"),
                       InvalidArgument);
  CHECK_THROWS_AS(loop_matrix_from_json(Json::parse(R"({"n": 2, "entries": [[[], []]]})")), InvalidArgument);
  CHECK_THROWS_AS(loop_matrix_from_json(Json::parse(R"({"n": 1, "entries": [[[[0, "1/0"]]]]})")), InvalidArgument);
  CHECK_THROWS_AS(gauss_poly_from_json(Json::parse(R"({"m": 2, "D": 2, "W": 2, "terms": [{"mono": [[3, 1]], "coef": [["1", 0, 0]]}]})")),
                  InvalidArgument);
  CHECK_THROWS_WITH_AS(action_config_from_json(Json::parse(R"({"nodes": 4})")), doctest::Contains("nodes"), InvalidArgument);
}

TEST_CASE("MeasuredElement round trip") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    MeasuredElement m = standard_element(testing::random_structured_matrix(rng, 2, 2), trial % 3 - 1);
    m.mu.scale = Rational(trial + 1) / 3;
    const MeasuredElement back = measured_from_json(Json::parse(to_json(m).dump()));
    CHECK(back.l == m.l);
    CHECK(same_matrix(back.g, m.g));
    CHECK(back.mu.basis == m.mu.basis);
    CHECK(back.mu.scale == m.mu.scale);
  }
}

TEST_CASE("GaussPoly round trip") {
  GaussPoly f = gaussian(4, 3);
  f.add_term(monomial_of({{1, 1}, {2, 4}, {2, 4}}), Scalar::from_terms({{Rational(3, 2), 1, -2}, {Rational(-1), 0, 1}}));
  f.add_term(monomial_of({{3, 2}}), Scalar(Rational(-7, 5)));
  const Json j = to_json(f);
  CHECK(j["terms"].size() == 3);
  const GaussPoly back = gauss_poly_from_json(Json::parse(j.dump()));
  CHECK(back.m() == 4);
  CHECK(back.D() == 3);
  CHECK(back.W() == f.W());
  CHECK(back.terms() == f.terms());
  // Slot order in the document does not matter.
  const Json unsorted = Json::parse(R"({"m": 2, "D": 2, "W": 2, "terms": [{"mono": [[2, 1], [1, 2]], "coef": [["1", 0, 0]]}]})");
  CHECK(gauss_poly_from_json(unsorted).coefficient(monomial_of({{1, 2}, {2, 1}})) == Scalar(1));
}

TEST_CASE("action config") {
  ActionConfig cfg;
  cfg.lambda = 2.5;
  cfg.quad.nodes = 41;
  cfg.seed = 99;
  const ActionConfig back = action_config_from_json(to_json(cfg));
  CHECK(back.lambda == 2.5);
  CHECK(back.quad.nodes == 41);
  CHECK(back.seed == 99);
  CHECK(back.probes == cfg.probes);
  const ActionConfig partial = action_config_from_json(Json::parse(R"({"probes": 5})"));
  CHECK(partial.probes == 5);
  CHECK(partial.quad.nodes == QuadPlan{}.nodes);
}
