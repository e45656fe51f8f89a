#include "loopfock/fock/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace loopfock {

namespace {

bool term_less(const Scalar::Term& a, const Scalar::Term& b) {
  return a.alpha != b.alpha ? a.alpha < b.alpha : a.beta < b.beta;
}

}  // namespace

Scalar::Scalar(const Rational& q) {
  if (q != 0) terms_.push_back(Term{q, 0, 0});
}

Scalar Scalar::monomial(const Rational& q, int alpha, int beta) {
  Scalar s;
  if (q != 0) s.terms_.push_back(Term{q, alpha, beta});
  return s;
}

Scalar Scalar::from_terms(std::vector<Term> terms) {
  Scalar s;
  s.terms_ = std::move(terms);
  s.canonicalize();
  return s;
}

void Scalar::canonicalize() {
  std::sort(terms_.begin(), terms_.end(), term_less);
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().alpha == t.alpha && merged.back().beta == t.beta) {
      merged.back().q += t.q;
    } else {
      merged.push_back(std::move(t));
    }
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Term& t) { return t.q == 0; }),
               merged.end());
  terms_ = std::move(merged);
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  for (auto& t : r.terms_) t.q = -t.q;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& other) {
  if (other.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  auto it = terms_.begin();
  auto jt = other.terms_.begin();
  while (it != terms_.end() || jt != other.terms_.end()) {
    if (jt == other.terms_.end() || (it != terms_.end() && term_less(*it, *jt))) {
      out.push_back(std::move(*it++));
    } else if (it == terms_.end() || term_less(*jt, *it)) {
      out.push_back(*jt++);
    } else {
      Rational q = it->q + jt->q;
      if (q != 0) out.push_back(Term{std::move(q), it->alpha, it->beta});
      ++it;
      ++jt;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) { return *this += -other; }

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.terms_.empty() || b.terms_.empty()) return Scalar();
  if (a.terms_.size() == 1 && b.terms_.size() == 1) {
    const auto& x = a.terms_[0];
    const auto& y = b.terms_[0];
    return Scalar::monomial(x.q * y.q, x.alpha + y.alpha, x.beta + y.beta);
  }
  std::vector<Scalar::Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) out.push_back(Scalar::Term{x.q * y.q, x.alpha + y.alpha, x.beta + y.beta});
  }
  return Scalar::from_terms(std::move(out));
}

Scalar& Scalar::operator*=(const Scalar& other) { return *this = *this * other; }

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    const auto& x = a.terms_[i];
    const auto& y = b.terms_[i];
    if (x.alpha != y.alpha || x.beta != y.beta || x.q != y.q) return false;
  }
  return true;
}

double Scalar::evaluate(double rho) const { return evaluate(1.0 / (2.0 * std::numbers::pi), rho); }

double Scalar::evaluate(double s, double rho) const {
  double acc = 0.0;
  for (const auto& t : terms_) acc += t.q.get_d() * std::pow(s, t.alpha) * std::pow(rho, t.beta);
  return acc;
}

std::string Scalar::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << t.q.get_str() << ")";
    if (t.alpha != 0) out << "*s^" << t.alpha;
    if (t.beta != 0) out << "*rho^" << t.beta;
  }
  return out.str();
}

std::optional<Scalar> exact_quotient(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return Scalar();
  const auto& bt = b.terms();
  const Scalar::Term lead_b = bt.back();
  const Scalar::Term low_b = bt.front();
  const Scalar::Term low_a = a.terms().front();
  // Every quotient term lies at or above low_a / low_b in (alpha, beta) order.
  const Scalar::Term floor{0, low_a.alpha - low_b.alpha, low_a.beta - low_b.beta};
  Scalar rem = a;
  std::vector<Scalar::Term> quotient;
  while (!rem.is_zero()) {
    const Scalar::Term lead_r = rem.terms().back();
    Scalar::Term q{lead_r.q / lead_b.q, lead_r.alpha - lead_b.alpha, lead_r.beta - lead_b.beta};
    if (term_less(q, floor)) return std::nullopt;
    quotient.push_back(q);
    rem -= Scalar::monomial(q.q, q.alpha, q.beta) * b;
  }
  return Scalar::from_terms(std::move(quotient));
}

}  // namespace loopfock
