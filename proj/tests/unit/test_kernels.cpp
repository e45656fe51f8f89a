#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "loopfock/simd/kernels.hpp"

using namespace loopfock::simd;

namespace {

std::vector<const KernelTable*> all_tables() {
  std::vector<const KernelTable*> t{&scalar_kernels()};
  if (avx2_available()) t.push_back(&kernels_for(Isa::avx2));
  return t;
}

std::vector<double> uniform(std::size_t n, double lo, double hi, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Three-term polynomial used by the batch tests: 1.5 - 2 x0 x1 + 0.25 x2^3.
struct TestPoly {
  std::vector<double> coef{1.5, -2.0, 0.25};
  std::vector<std::uint32_t> offsets{0, 0, 2, 5};
  std::vector<std::uint32_t> vars{0, 1, 2, 2, 2};
  PolyView view() const { return {coef.size(), coef.data(), offsets.data(), vars.data()}; }
};

}  // namespace

TEST_CASE("exp matches the C library") {
  const auto x = uniform(4099, -740, 705, 1);
  std::vector<double> y(x.size());
  for (const auto* k : all_tables()) {
    k->exp(x.data(), y.data(), x.size());
    double worst = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (std::exp(x[i]) > 1e-300) worst = std::max(worst, rel_err(y[i], std::exp(x[i])));
    }
    CHECK(worst < 4e-16);
  }
  for (const auto* k : all_tables()) {
    const double edge[5] = {-800.0, 800.0, 0.0, -1e-300, std::nan("")};
    double out[5];
    k->exp(edge, out, 5);
    CHECK(out[0] == 0.0);
    CHECK(std::isinf(out[1]));
    CHECK(out[2] == 1.0);
    CHECK(out[3] == 1.0);
    CHECK(std::isnan(out[4]));
  }
}

TEST_CASE("sincos matches the C library") {
  for (double range : {4.0, 1e3, 2e6}) {
    const auto x = uniform(1027, -range, range, 2);
    std::vector<double> s(x.size()), c(x.size());
    for (const auto* k : all_tables()) {
      k->sincos(x.data(), s.data(), c.data(), x.size());
      double worst = 0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        worst = std::max(worst, std::abs(s[i] - std::sin(x[i])));
        worst = std::max(worst, std::abs(c[i] - std::cos(x[i])));
      }
      CHECK(worst < 1e-15 * std::max(1.0, range / 1e3));
    }
  }
}

TEST_CASE("instruction sets agree elementwise") {
  if (!avx2_available()) return;
  const auto& s = scalar_kernels();
  const auto& v = kernels_for(Isa::avx2);
  const std::size_t n = 1031;
  const auto a = uniform(n, -3, 3, 3), b = uniform(n, -3, 3, 4), c = uniform(n, -3, 3, 5);
  const double* re[3] = {a.data(), b.data(), c.data()};
  const double* im[3] = {c.data(), a.data(), b.data()};
  std::vector<double> r1(n), r2(n), i1(n), i2(n);
  auto close = [&](const std::vector<double>& x, const std::vector<double>& y) {
    double worst = 0;
    for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(x[k] - y[k]) / std::max(1.0, std::abs(y[k])));
    return worst < 1e-12;
  };
  s.sum_squares(re, 3, n, r1.data());
  v.sum_squares(re, 3, n, r2.data());
  CHECK(close(r1, r2));
  s.sum_squares_complex(re, im, 3, n, r1.data(), i1.data());
  v.sum_squares_complex(re, im, 3, n, r2.data(), i2.data());
  CHECK(close(r1, r2));
  CHECK(close(i1, i2));
  const TestPoly p;
  s.poly_eval(p.view(), re, n, r1.data());
  v.poly_eval(p.view(), re, n, r2.data());
  CHECK(close(r1, r2));
  s.poly_eval_complex(p.view(), re, im, n, r1.data(), i1.data());
  v.poly_eval_complex(p.view(), re, im, n, r2.data(), i2.data());
  CHECK(close(r1, r2));
  CHECK(close(i1, i2));
  s.cmul_exp(a.data(), b.data(), c.data(), a.data(), n, r1.data(), i1.data());
  v.cmul_exp(a.data(), b.data(), c.data(), a.data(), n, r2.data(), i2.data());
  CHECK(close(r1, r2));
  CHECK(close(i1, i2));
}

TEST_CASE("polynomial kernels match a direct evaluation") {
  const std::size_t n = 37;
  const auto a = uniform(n, -2, 2, 6), b = uniform(n, -2, 2, 7), c = uniform(n, -2, 2, 8);
  const double* re[3] = {a.data(), b.data(), c.data()};
  const double* im[3] = {b.data(), c.data(), a.data()};
  const TestPoly p;
  std::vector<double> out(n);
  for (const auto* k : all_tables()) {
    k->poly_eval(p.view(), re, n, out.data());
    std::vector<double> cr(n), ci(n);
    k->poly_eval_complex(p.view(), re, im, n, cr.data(), ci.data());
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(out[i] == doctest::Approx(1.5 - 2 * a[i] * b[i] + 0.25 * c[i] * c[i] * c[i]).epsilon(1e-14));
      const std::complex<double> x0(a[i], b[i]), x1(b[i], c[i]), x2(c[i], a[i]);
      const std::complex<double> expect = 1.5 - 2.0 * x0 * x1 + 0.25 * x2 * x2 * x2;
      CHECK(std::abs(std::complex<double>(cr[i], ci[i]) - expect) <= 1e-13 * std::max(1.0, std::abs(expect)));
    }
    std::vector<double> er(n), ei(n);
    k->cmul_exp(a.data(), b.data(), c.data(), a.data(), n, er.data(), ei.data());
    for (std::size_t i = 0; i < n; ++i) {
      const std::complex<double> expect = std::complex<double>(a[i], b[i]) * std::exp(std::complex<double>(c[i], a[i]));
      CHECK(std::abs(std::complex<double>(er[i], ei[i]) - expect) <= 1e-14 * std::max(1.0, std::abs(expect)));
    }
  }
}

TEST_CASE("pairwise summation") {
  std::vector<double> ones(1000, 0.1);
  CHECK(pairwise_sum(ones.data(), ones.size()) == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(pairwise_sum(ones.data(), 0) == 0.0);
  const auto x = uniform(12345, -1, 1, 9);
  long double exact = 0;
  for (double v : x) exact += v;
  CHECK(std::abs(pairwise_sum(x.data(), x.size()) - static_cast<double>(exact)) < 1e-12);
}

TEST_CASE("dispatch honours the override") {
  const auto& k = active_kernels();
  CHECK((k.isa == Isa::scalar || avx2_available()));
  CHECK(std::string(isa_name(Isa::avx2)) == "avx2");
}
