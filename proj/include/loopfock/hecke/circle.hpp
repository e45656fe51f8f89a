#pragma once

#include <map>
#include <string>

#include "loopfock/rational.hpp"

namespace loopfock {

struct GaussianRational {
  Rational re, im;

  bool is_zero() const { return re == 0 && im == 0; }
  bool operator==(const GaussianRational& o) const { return re == o.re && im == o.im; }
  GaussianRational operator+(const GaussianRational& o) const { return {re + o.re, im + o.im}; }
  GaussianRational operator*(const Rational& s) const { return {re * s, im * s}; }
};

// Fourier polynomial in e_k = exp(2 pi i k x); zero coefficients are never stored.
class FourierPoly {
 public:
  FourierPoly() = default;

  static FourierPoly basis(long k, const GaussianRational& c = {1, 0});

  void add(long k, const GaussianRational& c);
  GaussianRational coeff(long k) const;
  const std::map<long, GaussianRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  long max_frequency() const;

  bool operator==(const FourierPoly& o) const { return terms_ == o.terms_; }
  FourierPoly operator+(const FourierPoly& o) const;

  std::string to_string() const;

 private:
  std::map<long, GaussianRational> terms_;
};

// pi(nn) f(x) = sum_{i=1..nn} f(x/nn + i/nn): e_k -> nn e_{k/nn} when nn | k, else 0.
FourierPoly circle_hecke(long nn, const FourierPoly& f);

}  // namespace loopfock
