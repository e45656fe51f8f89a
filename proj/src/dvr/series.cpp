#include "loopfock/dvr/series.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "loopfock/errors.hpp"

namespace loopfock {

namespace {

int clamp_order(long long o) {
  return static_cast<int>(std::min<long long>(o, TruncatedSeries::kExact));
}

}  // namespace

TruncatedSeries::TruncatedSeries(const Rational& c, int order) : order_(clamp_order(order)) {
  if (c != 0 && 0 < order_) terms_.emplace(0, c);
}

TruncatedSeries::TruncatedSeries(std::map<int, Rational> terms, int order)
    : terms_(std::move(terms)), order_(clamp_order(order)) {
  drop_above_order();
}

TruncatedSeries TruncatedSeries::monomial(const Rational& c, int exponent, int order) {
  std::map<int, Rational> terms;
  terms.emplace(exponent, c);
  return TruncatedSeries(std::move(terms), order);
}

TruncatedSeries TruncatedSeries::zero(int order) { return TruncatedSeries(Rational(0), order); }

void TruncatedSeries::drop_above_order() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second == 0 || it->first >= order_) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

int TruncatedSeries::valuation() const {
  if (terms_.empty()) throw ZeroUpToPrecision("series has no known nonzero coefficient");
  return terms_.begin()->first;
}

int TruncatedSeries::valuation_or_order() const {
  return terms_.empty() ? order_ : terms_.begin()->first;
}

Rational TruncatedSeries::leading() const {
  if (terms_.empty()) throw ZeroUpToPrecision("series has no leading coefficient");
  return terms_.begin()->second;
}

Rational TruncatedSeries::coeff(int e) const {
  if (e >= order_) {
    throw InsufficientPrecision("coefficient of t^" + std::to_string(e) +
                                " requested at order " + std::to_string(order_));
  }
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

int TruncatedSeries::max_exponent() const {
  if (terms_.empty()) throw ZeroUpToPrecision("series has no stored terms");
  return terms_.rbegin()->first;
}

TruncatedSeries TruncatedSeries::truncated(int order) const {
  TruncatedSeries r = *this;
  r.order_ = std::min(order_, clamp_order(order));
  r.drop_above_order();
  return r;
}

TruncatedSeries TruncatedSeries::shifted(int k) const {
  std::map<int, Rational> terms;
  for (const auto& [e, c] : terms_) terms.emplace_hint(terms.end(), e + k, c);
  return TruncatedSeries(std::move(terms), is_exact() ? kExact : order_ + k);
}

TruncatedSeries TruncatedSeries::reflected() const {
  if (!is_exact()) throw InsufficientPrecision("t -> 1/t needs an exact series");
  std::map<int, Rational> terms;
  for (const auto& [e, c] : terms_) terms.emplace(-e, c);
  return TruncatedSeries(std::move(terms), kExact);
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries r = *this;
  for (auto& entry : r.terms_) entry.second = -entry.second;
  return r;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& other) {
  order_ = std::min(order_, other.order_);
  for (const auto& [e, c] : other.terms_) {
    if (e >= order_) break;
    terms_[e] += c;
  }
  drop_above_order();
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& other) {
  order_ = std::min(order_, other.order_);
  for (const auto& [e, c] : other.terms_) {
    if (e >= order_) break;
    terms_[e] -= c;
  }
  drop_above_order();
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& entry : terms_) entry.second *= c;
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  long long order_ll = TruncatedSeries::kExact;
  if (!a.is_exact()) order_ll = std::min(order_ll, static_cast<long long>(a.order_) + b.valuation_or_order());
  if (!b.is_exact()) order_ll = std::min(order_ll, static_cast<long long>(b.order_) + a.valuation_or_order());
  const int order = clamp_order(order_ll);
  std::map<int, Rational> terms;
  Rational prod;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      const int e = ea + eb;
      if (e >= order) break;
      prod = ca * cb;
      terms[e] += prod;
    }
  }
  return TruncatedSeries(std::move(terms), order);
}

bool TruncatedSeries::agrees_with(const TruncatedSeries& other) const {
  return agrees_with(other, std::min(order_, other.order_));
}

bool TruncatedSeries::agrees_with(const TruncatedSeries& other, int below) const {
  if (below > std::min(order_, other.order_)) return false;
  auto it = terms_.begin();
  auto jt = other.terms_.begin();
  while (true) {
    const bool a_done = it == terms_.end() || it->first >= below;
    const bool b_done = jt == other.terms_.end() || jt->first >= below;
    if (a_done || b_done) return a_done && b_done;
    if (it->first != jt->first || it->second != jt->second) return false;
    ++it;
    ++jt;
  }
}

std::string TruncatedSeries::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << c.get_str() << ")t^" << e;
  }
  if (first) out << "0";
  if (!is_exact()) out << " + O(t^" << order_ << ")";
  return out.str();
}

TruncatedSeries series_invert_tracked(const TruncatedSeries& a, int T) {
  const int v = a.valuation();
  const Rational c0 = a.leading();
  const long long certified = a.is_exact() ? TruncatedSeries::kExact
                                           : static_cast<long long>(a.order()) - 2LL * v;
  const int order = static_cast<int>(std::min<long long>(T, certified));
  // b_k for the unit part u = a t^{-v}: b_0 = 1/c0, b_k = -(1/c0) sum a_{v+i} b_{k-i}.
  const int count = order + v;
  std::map<int, Rational> out;
  if (count <= 0) return TruncatedSeries(std::move(out), order);
  std::vector<Rational> b(static_cast<std::size_t>(count));
  std::vector<std::pair<int, Rational>> tail;
  for (const auto& [e, c] : a.terms()) {
    if (e > v && e - v < count) tail.emplace_back(e - v, c);
  }
  const Rational inv0 = Rational(1) / c0;
  b[0] = inv0;
  for (int k = 1; k < count; ++k) {
    Rational acc;
    for (const auto& [i, c] : tail) {
      if (i > k) break;
      acc += c * b[static_cast<std::size_t>(k - i)];
    }
    b[static_cast<std::size_t>(k)] = -acc * inv0;
  }
  for (int k = 0; k < count; ++k) {
    if (b[static_cast<std::size_t>(k)] != 0) out.emplace(k - v, b[static_cast<std::size_t>(k)]);
  }
  return TruncatedSeries(std::move(out), order);
}

TruncatedSeries series_invert(const TruncatedSeries& a, int T) {
  TruncatedSeries r = series_invert_tracked(a, T);
  if (r.order() < T) {
    throw InsufficientPrecision("inverse certified only to order " + std::to_string(r.order()) +
                                ", requested " + std::to_string(T));
  }
  return r;
}

}  // namespace loopfock
