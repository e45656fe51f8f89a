#pragma once

#include <array>
#include <map>
#include <string>
#include <tuple>

#include "loopfock/rational.hpp"

namespace loopfock {

enum class GenKind { offdiag, cartan, raw };
enum class Copy { single = 0, left = 1, right = 2 };

std::string to_string(Copy c);
std::string to_string(GenKind k);

// E_uv t^mode (offdiag, raw) or (E_uu - E_vv) t^mode (cartan); indices are 1-based.
struct Generator {
  GenKind kind = GenKind::offdiag;
  int u = 1;
  int v = 2;
  int mode = 0;
  Copy copy = Copy::single;

  static Generator offdiag(int u, int v, int mode, Copy copy = Copy::single) {
    return {GenKind::offdiag, u, v, mode, copy};
  }
  static Generator cartan(int u, int v, int mode, Copy copy = Copy::single) {
    return {GenKind::cartan, u, v, mode, copy};
  }
  static Generator raw(int u, int v, int mode, Copy copy = Copy::single) { return {GenKind::raw, u, v, mode, copy}; }

  std::string to_string() const;
  friend bool operator==(const Generator&, const Generator&) = default;
};

// Throws InvalidArgument when the generator violates its kind's constraints for sl_n / gl_n.
void validate(const Generator& g, int n);

// Rational combination of E_ab t^p per copy, plus one central coefficient per copy.
class LieElement {
 public:
  struct Key {
    Copy copy;
    int a;
    int b;
    int mode;
    friend auto operator<=>(const Key&, const Key&) = default;
  };
  using Terms = std::map<Key, Rational>;

  LieElement() = default;
  explicit LieElement(const Generator& g);
  static LieElement central(Copy copy, const Rational& kappa);

  const Terms& terms() const { return terms_; }
  const Rational& kappa(Copy c) const { return kappa_[static_cast<std::size_t>(c)]; }
  bool is_zero() const;
  LieElement without_central() const;

  void add(const Key& key, const Rational& coef);
  LieElement& operator+=(const LieElement& o);
  LieElement& operator-=(const LieElement& o);
  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
  friend LieElement operator*(const Rational& c, const LieElement& x);
  friend bool operator==(const LieElement& a, const LieElement& b);

  std::string to_string() const;

 private:
  Terms terms_;
  std::array<Rational, 3> kappa_{};
};

// [a t^p, b t^q] = [a, b] t^{p+q} + p delta_{p+q,0} tr(ab) K, copies commuting.
LieElement lie_bracket(const LieElement& x, const LieElement& y);
inline LieElement lie_bracket(const Generator& a, const Generator& b) {
  return lie_bracket(LieElement(a), LieElement(b));
}

}  // namespace loopfock
