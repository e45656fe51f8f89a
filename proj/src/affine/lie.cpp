#include "loopfock/affine/lie.hpp"

#include <sstream>

#include "loopfock/errors.hpp"

namespace loopfock {

std::string to_string(Copy c) {
  switch (c) {
    case Copy::single: return "single";
    case Copy::left: return "left";
    case Copy::right: return "right";
  }
  return "?";
}

std::string to_string(GenKind k) {
  switch (k) {
    case GenKind::offdiag: return "offdiag";
    case GenKind::cartan: return "cartan";
    case GenKind::raw: return "raw";
  }
  return "?";
}

std::string Generator::to_string() const {
  std::ostringstream out;
  if (kind == GenKind::cartan) {
    out << "(E" << u << u << "-E" << v << v << ")";
  } else {
    out << "E" << u << v;
  }
  out << "t^" << mode;
  if (copy != Copy::single) out << "[" << loopfock::to_string(copy) << "]";
  return out.str();
}

void validate(const Generator& g, int n) {
  if (g.u < 1 || g.u > n || g.v < 1 || g.v > n) throw InvalidArgument("generator index outside 1..n");
  if ((g.kind == GenKind::offdiag || g.kind == GenKind::cartan) && g.u == g.v) {
    throw InvalidArgument(loopfock::to_string(g.kind) + " generator needs u != v");
  }
  if (g.kind == GenKind::raw && g.mode < 0) throw InvalidArgument("raw generators only at non-negative modes");
}

LieElement::LieElement(const Generator& g) {
  switch (g.kind) {
    case GenKind::offdiag:
    case GenKind::raw: add({g.copy, g.u, g.v, g.mode}, 1); break;
    case GenKind::cartan:
      add({g.copy, g.u, g.u, g.mode}, 1);
      add({g.copy, g.v, g.v, g.mode}, -1);
      break;
  }
}

LieElement LieElement::central(Copy copy, const Rational& kappa) {
  LieElement e;
  e.kappa_[static_cast<std::size_t>(copy)] = kappa;
  return e;
}

bool LieElement::is_zero() const {
  if (!terms_.empty()) return false;
  for (const auto& k : kappa_) {
    if (k != 0) return false;
  }
  return true;
}

LieElement LieElement::without_central() const {
  LieElement e = *this;
  e.kappa_ = {};
  return e;
}

void LieElement::add(const Key& key, const Rational& coef) {
  if (coef == 0) return;
  auto [it, inserted] = terms_.try_emplace(key, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0) terms_.erase(it);
  }
}

LieElement& LieElement::operator+=(const LieElement& o) {
  for (const auto& [k, c] : o.terms_) add(k, c);
  for (std::size_t i = 0; i < kappa_.size(); ++i) kappa_[i] += o.kappa_[i];
  return *this;
}

LieElement& LieElement::operator-=(const LieElement& o) { return *this += Rational(-1) * o; }

LieElement operator*(const Rational& c, const LieElement& x) {
  LieElement r;
  if (c == 0) return r;
  for (const auto& [k, v] : x.terms_) r.terms_.emplace(k, c * v);
  for (std::size_t i = 0; i < r.kappa_.size(); ++i) r.kappa_[i] = c * x.kappa_[i];
  return r;
}

bool operator==(const LieElement& a, const LieElement& b) { return a.terms_ == b.terms_ && a.kappa_ == b.kappa_; }

std::string LieElement::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << loopfock::to_string(c) << "*E" << k.a << k.b << "t^" << k.mode;
    if (k.copy != Copy::single) out << "[" << loopfock::to_string(k.copy) << "]";
  }
  for (std::size_t i = 0; i < kappa_.size(); ++i) {
    if (kappa_[i] == 0) continue;
    if (!first) out << " + ";
    first = false;
    out << loopfock::to_string(kappa_[i]) << "*K";
    if (i != 0) out << "[" << loopfock::to_string(static_cast<Copy>(i)) << "]";
  }
  return first ? "0" : out.str();
}

LieElement lie_bracket(const LieElement& x, const LieElement& y) {
  LieElement r;
  for (const auto& [kx, cx] : x.terms()) {
    for (const auto& [ky, cy] : y.terms()) {
      if (kx.copy != ky.copy) continue;
      const Rational c = cx * cy;
      const int mode = kx.mode + ky.mode;
      if (kx.b == ky.a) r.add({kx.copy, kx.a, ky.b, mode}, c);
      if (ky.b == kx.a) r.add({kx.copy, ky.a, kx.b, mode}, -c);
      if (mode == 0 && kx.b == ky.a && kx.a == ky.b && kx.mode != 0) {
        r += LieElement::central(kx.copy, c * kx.mode);
      }
    }
  }
  return r;
}

}  // namespace loopfock
