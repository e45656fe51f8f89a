#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loopfock/rational.hpp"

namespace loopfock {

// Element of Q[s^{+-1}, rho^{+-1}] where s stands for 1/(2 pi) and rho for
// c^{-1/2}. Terms are kept sorted by (alpha, beta) with no zero coefficients.
class Scalar {
 public:
  struct Term {
    Rational q;
    int alpha = 0;  // power of s
    int beta = 0;   // power of rho
  };

  Scalar() = default;
  Scalar(const Rational& q);  // NOLINT: implicit constant embedding
  Scalar(int q) : Scalar(Rational(q)) {}  // NOLINT
  static Scalar monomial(const Rational& q, int alpha, int beta);
  static Scalar from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b);

  // Value at s = 1/(2 pi), rho = the given real.
  double evaluate(double rho) const;
  double evaluate(double s, double rho) const;

  std::string to_string() const;

 private:
  void canonicalize();

  std::vector<Term> terms_;
};

// a / b when the quotient exists in the Laurent ring.
std::optional<Scalar> exact_quotient(const Scalar& a, const Scalar& b);

// The recurring constant 2 pi c = s^{-1} rho^{-2}.
inline Scalar two_pi_c() { return Scalar::monomial(1, -1, -2); }

}  // namespace loopfock
