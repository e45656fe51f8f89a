#pragma once

#include <map>
#include <string>

#include "loopfock/rational.hpp"

namespace loopfock {

// Laurent series in t with rational coefficients, known below a truncation
// order. Coefficients at exponents >= order are unknown, not zero.
class TruncatedSeries {
 public:
  static constexpr int kExact = 1 << 28;

  TruncatedSeries() = default;
  explicit TruncatedSeries(const Rational& c, int order = kExact);
  TruncatedSeries(std::map<int, Rational> terms, int order);

  static TruncatedSeries monomial(const Rational& c, int exponent,
                                  int order = kExact);
  static TruncatedSeries zero(int order = kExact);

  int order() const { return order_; }
  bool is_exact() const { return order_ >= kExact; }
  bool is_zero_to_precision() const { return terms_.empty(); }
  // Smallest stored exponent; throws ZeroUpToPrecision when nothing is stored.
  int valuation() const;
  // valuation(), or order() when zero up to precision.
  int valuation_or_order() const;
  Rational leading() const;
  // Coefficient of t^e; throws InsufficientPrecision when e >= order().
  Rational coeff(int e) const;
  const std::map<int, Rational>& terms() const { return terms_; }
  int max_exponent() const;

  TruncatedSeries truncated(int order) const;
  TruncatedSeries shifted(int k) const;  // multiply by t^k
  // Substitutes t -> t^{-1}; only defined for exact series.
  TruncatedSeries reflected() const;

  TruncatedSeries operator-() const;
  TruncatedSeries& operator+=(const TruncatedSeries& other);
  TruncatedSeries& operator-=(const TruncatedSeries& other);
  TruncatedSeries& operator*=(const Rational& c);

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) {
    return a += b;
  }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) {
    return a -= b;
  }
  friend TruncatedSeries operator*(const TruncatedSeries& a,
                                   const TruncatedSeries& b);
  friend TruncatedSeries operator*(TruncatedSeries a, const Rational& c) {
    return a *= c;
  }
  friend TruncatedSeries operator*(const Rational& c, TruncatedSeries a) {
    return a *= c;
  }

  // Agreement on all exponents below min(order(), other.order()).
  bool agrees_with(const TruncatedSeries& other) const;
  bool agrees_with(const TruncatedSeries& other, int below) const;

  std::string to_string() const;

 private:
  void drop_above_order();

  std::map<int, Rational> terms_;
  int order_ = kExact;
};

// Inverse of a to order T (all exponents < T certified).
TruncatedSeries series_invert(const TruncatedSeries& a, int T);

}  // namespace loopfock

namespace loopfock {

// Like series_invert, but returns the best certified order (at most T)
// instead of raising when the input precision falls short.
TruncatedSeries series_invert_tracked(const TruncatedSeries& a, int T);

}  // namespace loopfock
