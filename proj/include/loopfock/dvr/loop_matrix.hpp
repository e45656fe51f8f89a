#pragma once

#include <string>
#include <vector>

#include "loopfock/dvr/series.hpp"

namespace loopfock {

// n x n matrix over truncated Laurent series.
class LoopMatrix {
 public:
  LoopMatrix() = default;
  explicit LoopMatrix(int n);
  LoopMatrix(int n, std::vector<TruncatedSeries> entries);

  static LoopMatrix identity(int n);
  // diag(t^k_1, ..., t^k_n)
  static LoopMatrix diag_monomial(const std::vector<int>& k);
  static LoopMatrix scalar(int n, const TruncatedSeries& a);
  static LoopMatrix from_rationals(int n, const std::vector<Rational>& values);

  int n() const { return n_; }
  const TruncatedSeries& operator()(int r, int c) const { return entries_[index(r, c)]; }
  TruncatedSeries& operator()(int r, int c) { return entries_[index(r, c)]; }

  // Smallest certified order among entries.
  int order() const;
  bool is_exact() const;
  LoopMatrix truncated(int order) const;
  // Smallest entry valuation; entries zero up to precision are skipped.
  int min_valuation() const;
  bool in_power_series() const;  // all entries in R = R[[t]]

  LoopMatrix transpose() const;
  LoopMatrix reflected() const;  // t -> t^{-1}, exact entries only
  LoopMatrix shifted(int k) const;  // multiply by t^k
  // Rational matrix of t^0 coefficients (row-major).
  std::vector<Rational> constant_term() const;

  TruncatedSeries determinant() const;
  LoopMatrix adjugate() const;

  LoopMatrix operator*(const LoopMatrix& other) const;
  LoopMatrix operator+(const LoopMatrix& other) const;
  LoopMatrix operator-(const LoopMatrix& other) const;

  bool agrees_with(const LoopMatrix& other) const;
  bool agrees_with(const LoopMatrix& other, int below) const;

  std::string to_string() const;

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(c);
  }

  int n_ = 0;
  std::vector<TruncatedSeries> entries_;
};

// Inverse over F = R((t)) with entries certified below the given order.
LoopMatrix inverse_over_laurent(const LoopMatrix& g, int order);

struct ValDet {
  int N = 0;
  Rational leading;
};

ValDet val_det(const LoopMatrix& g);
bool in_GL0(const LoopMatrix& g);

}  // namespace loopfock
