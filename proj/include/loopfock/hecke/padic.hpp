#pragma once

#include <cstdint>
#include <vector>

#include "loopfock/hecke/int_smith.hpp"
#include "loopfock/rational.hpp"

namespace loopfock {

inline constexpr int kPadicMaxDepth = 4;

// Function on p^{-M} Z_p^n / Z_p^n. The coset of x = a / p^M with
// a in (Z/p^M)^n is stored at index a_0 + a_1 p^M + ... + a_{n-1} p^{M(n-1)}.
class PAdicFunction {
 public:
  PAdicFunction(int p, int n, int depth);

  static PAdicFunction indicator_of_zero(int p, int n, int depth);

  int p() const { return p_; }
  int n() const { return n_; }
  int depth() const { return depth_; }
  std::int64_t modulus() const { return modulus_; }  // p^M
  std::size_t size() const { return values_.size(); }

  std::vector<std::int64_t> coset(std::size_t index) const;
  std::size_t index_of(const std::vector<std::int64_t>& a) const;  // a reduced mod p^M

  const Rational& operator[](std::size_t i) const { return values_[i]; }
  Rational& operator[](std::size_t i) { return values_[i]; }
  const std::vector<Rational>& values() const { return values_; }

  bool operator==(const PAdicFunction& o) const {
    return p_ == o.p_ && n_ == o.n_ && depth_ == o.depth_ && values_ == o.values_;
  }
  PAdicFunction scaled(const Rational& s) const;

 private:
  int p_, n_, depth_;
  std::int64_t modulus_;
  std::vector<Rational> values_;
};

int padic_valuation(const Integer& x, int p);  // x != 0

// Coset representatives of Z_p^n / g Z_p^n from the integer Smith form.
std::vector<std::vector<Integer>> padic_coset_reps(const IntMatrix& g, int p);

// pi(g) f(x) = sum_{r in Z_p^n / g Z_p^n} f(g^{-1}(x + r)) for integral g, det g != 0.
PAdicFunction padic_hecke(const IntMatrix& g, const PAdicFunction& f);

// Rational matrix whose denominators are powers of p.
struct PAdicMatrix {
  int n = 0;
  std::vector<Rational> a;  // row-major
};

// lambda^k pi(g') f with g = p^k g' and k the largest exponent making g'
// integral. extra_shift > 0 uses k - extra_shift instead, which must give the
// same result on the lambda-eigenspace of pi(pI).
PAdicFunction padic_extend(const Rational& lambda, const PAdicMatrix& g, const PAdicFunction& f, int extra_shift = 0);

}  // namespace loopfock
