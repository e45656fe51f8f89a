#include "loopfock/fock/gauss_poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "loopfock/errors.hpp"

namespace loopfock {

namespace {

void check_slot(const GaussPoly& f, SlotIndex idx) {
  if (idx.coord < 1 || idx.coord > f.m()) {
    throw InvalidArgument("coordinate " + std::to_string(idx.coord) + " outside 1.." + std::to_string(f.m()));
  }
  if (idx.depth < 1) throw InvalidArgument("slot depth must be at least 1");
  if (idx.depth > f.D()) {
    throw DepthOverflow("slot depth " + std::to_string(idx.depth) + " exceeds D = " + std::to_string(f.D()));
  }
}

void accumulate(GaussPoly::Terms& terms, Monomial&& mono, const Scalar& coef) {
  if (coef.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(std::move(mono), coef);
  if (!inserted) {
    it->second += coef;
    if (it->second.is_zero()) terms.erase(it);
  }
}

Monomial with_slot(const Monomial& mono, std::uint16_t key) {
  Monomial out;
  out.reserve(mono.size() + 1);
  auto pos = std::upper_bound(mono.begin(), mono.end(), key);
  out.insert(out.end(), mono.begin(), pos);
  out.push_back(key);
  out.insert(out.end(), pos, mono.end());
  return out;
}

Monomial with_two_slots(const Monomial& mono, std::uint16_t a, std::uint16_t b) {
  return with_slot(with_slot(mono, a), b);
}

// (2k-1)!! s^k rho^{2k+1}
Scalar even_moment(int k) {
  Rational dfact = 1;
  for (int j = 2 * k - 1; j > 1; j -= 2) dfact *= j;
  return Scalar::monomial(dfact, k, 2 * k + 1);
}

}  // namespace

// Grants operator implementations direct access to the term map.
class GaussPolyAccess {
 public:
  static GaussPoly::Terms& terms(GaussPoly& f) { return f.terms_; }
};

Monomial monomial_of(std::initializer_list<SlotIndex> slots) {
  Monomial m;
  for (const auto& s : slots) m.push_back(slot_key(s));
  std::sort(m.begin(), m.end());
  return m;
}

int monomial_depth(const Monomial& m) { return m.empty() ? 0 : key_depth(m.back()); }

GaussPoly::GaussPoly(int m, int D, int W) : m_(m), D_(D), W_(W) {
  if (m < 1 || m > kMaxCoords) throw InvalidArgument("coordinate count out of range");
  if (D < 0 || D > kMaxDepth) throw InvalidArgument("ambient depth out of range");
  if (W > D) throw InvalidArgument("window exceeds ambient depth");
  if (W < 0) throw WindowExhausted("negative window");
}

GaussPoly GaussPoly::gaussian(int m, int D) {
  if (D < 1) throw InvalidArgument("ambient depth must be at least 1");
  GaussPoly f(m, D, D);
  f.terms_.emplace(Monomial{}, Scalar(1));
  return f;
}

GaussPoly gaussian(int m, int D) { return GaussPoly::gaussian(m, D); }

void GaussPoly::add_term(const Monomial& mono, const Scalar& coef) {
  for (auto key : mono) check_slot(*this, slot_of(key));
  Monomial sorted = mono;
  std::sort(sorted.begin(), sorted.end());
  accumulate(terms_, std::move(sorted), coef);
}

Scalar GaussPoly::coefficient(const Monomial& mono) const {
  auto it = terms_.find(mono);
  return it == terms_.end() ? Scalar() : it->second;
}

GaussPoly GaussPoly::restricted(int w) const {
  if (w > D_) throw InvalidArgument("restriction beyond ambient depth");
  GaussPoly r(m_, w, std::min(W_, w));
  for (const auto& [mono, coef] : terms_) {
    if (monomial_depth(mono) <= w) r.terms_.emplace_hint(r.terms_.end(), mono, coef);
  }
  return r;
}

GaussPoly GaussPoly::with_window(int w) const {
  GaussPoly r = *this;
  r.W_ = std::min(W_, w);
  if (r.W_ < 0) throw WindowExhausted("negative window");
  return r;
}

GaussPoly GaussPoly::operator-() const { return scaled(Scalar(-1)); }

GaussPoly GaussPoly::scaled(const Scalar& c) const {
  GaussPoly r(m_, D_, W_);
  if (c.is_zero()) return r;
  for (const auto& [mono, coef] : terms_) {
    Scalar v = coef * c;
    if (!v.is_zero()) r.terms_.emplace_hint(r.terms_.end(), mono, std::move(v));
  }
  return r;
}

namespace {

GaussPoly combine(const GaussPoly& a, const GaussPoly& b, int sign) {
  if (a.m() != b.m()) throw InvalidArgument("sum of GaussPolys with different m");
  const int D = std::min(a.D(), b.D());
  GaussPoly r(a.m(), D, std::min(a.W(), b.W()));
  auto& out = GaussPolyAccess::terms(r);
  for (const auto& [mono, coef] : a.terms()) {
    if (monomial_depth(mono) <= D) out.emplace_hint(out.end(), mono, coef);
  }
  for (const auto& [mono, coef] : b.terms()) {
    if (monomial_depth(mono) > D) continue;
    Monomial key = mono;
    accumulate(out, std::move(key), sign > 0 ? coef : -coef);
  }
  return r;
}

}  // namespace

GaussPoly operator+(const GaussPoly& a, const GaussPoly& b) { return combine(a, b, 1); }
GaussPoly operator-(const GaussPoly& a, const GaussPoly& b) { return combine(a, b, -1); }

std::size_t GaussPoly::window_term_count() const {
  std::size_t count = 0;
  for (const auto& [mono, coef] : terms_) {
    if (monomial_depth(mono) <= W_) ++count;
  }
  return count;
}

std::string GaussPoly::to_string() const {
  std::ostringstream out;
  out << "GaussPoly(m=" << m_ << ", D=" << D_ << ", W=" << W_ << ")";
  for (const auto& [mono, coef] : terms_) {
    out << "\n  [" << coef.to_string() << "]";
    for (auto key : mono) out << " x_{-" << key_depth(key) << "}^" << key_coord(key);
  }
  return out.str();
}

bool window_equal(const GaussPoly& a, const GaussPoly& b, int w) {
  if (a.m() != b.m()) return false;
  auto in_window = [w](const auto& entry) { return monomial_depth(entry.first) <= w; };
  auto it = a.terms().begin(), ie = a.terms().end();
  auto jt = b.terms().begin(), je = b.terms().end();
  while (true) {
    while (it != ie && !in_window(*it)) ++it;
    while (jt != je && !in_window(*jt)) ++jt;
    if (it == ie || jt == je) return it == ie && jt == je;
    if (it->first != jt->first || !(it->second == jt->second)) return false;
    ++it;
    ++jt;
  }
}

bool window_equal(const GaussPoly& a, const GaussPoly& b) {
  return window_equal(a, b, std::min(a.W(), b.W()));
}

GaussPoly mul_var(const GaussPoly& f, SlotIndex idx) {
  check_slot(f, idx);
  const auto key = slot_key(idx);
  GaussPoly r(f.m(), f.D(), f.W());
  auto& out = GaussPolyAccess::terms(r);
  for (const auto& [mono, coef] : f.terms()) out.emplace(with_slot(mono, key), coef);
  return r;
}

GaussPoly derive(const GaussPoly& f, SlotIndex idx) {
  check_slot(f, idx);
  if (idx.depth > f.W()) {
    throw WindowExhausted("derivative at depth " + std::to_string(idx.depth) + " outside window " +
                          std::to_string(f.W()));
  }
  const auto key = slot_key(idx);
  GaussPoly r(f.m(), f.D(), f.W());
  auto& out = GaussPolyAccess::terms(r);
  const Scalar gauss = -two_pi_c();
  for (const auto& [mono, coef] : f.terms()) {
    const auto range = std::equal_range(mono.begin(), mono.end(), key);
    const auto e = range.second - range.first;
    if (e > 0) {
      Monomial reduced(mono.begin(), range.first);
      reduced.insert(reduced.end(), range.first + 1, mono.end());
      accumulate(out, std::move(reduced), coef * Scalar(static_cast<int>(e)));
    }
    accumulate(out, with_slot(mono, key), coef * gauss);
  }
  return r;
}

Scalar gaussian_moment(int e) {
  if (e < 0) throw InvalidArgument("negative moment");
  if (e % 2 == 1) return Scalar();
  return even_moment(e / 2);
}

GaussPoly pi_t(const GaussPoly& f) {
  if (f.W() < 1) throw WindowExhausted("pi_t needs window >= 1");
  GaussPoly r(f.m(), f.D() - 1, f.W() - 1);
  auto& out = GaussPolyAccess::terms(r);
  std::vector<int> exps(static_cast<std::size_t>(f.m()));
  for (const auto& [mono, coef] : f.terms()) {
    std::fill(exps.begin(), exps.end(), 0);
    Monomial rest;
    bool odd = false;
    for (auto key : mono) {
      if (key_depth(key) == 1) {
        ++exps[static_cast<std::size_t>(key_coord(key) - 1)];
      } else {
        rest.push_back(static_cast<std::uint16_t>(key - 64));
      }
    }
    Scalar factor(1);
    for (int e : exps) {
      if (e % 2 == 1) {
        odd = true;
        break;
      }
    }
    if (odd) continue;
    for (int e : exps) factor *= even_moment(e / 2);
    accumulate(out, std::move(rest), coef * factor);
  }
  return r;
}

GaussPoly pi_t_partial(const GaussPoly& f, int coord) {
  if (coord < 1 || coord > f.m()) throw InvalidArgument("coordinate out of range");
  if (f.W() < 1) throw WindowExhausted("pi_t_partial needs window >= 1");
  GaussPoly r(f.m(), f.D(), f.W() - 1);
  auto& out = GaussPolyAccess::terms(r);
  for (const auto& [mono, coef] : f.terms()) {
    int e = 0;
    Monomial rest;
    for (auto key : mono) {
      if (key_coord(key) != coord) {
        rest.push_back(key);
      } else if (key_depth(key) == 1) {
        ++e;
      } else {
        rest.push_back(static_cast<std::uint16_t>(key - 64));
      }
    }
    if (e % 2 == 1) continue;
    std::sort(rest.begin(), rest.end());
    accumulate(out, std::move(rest), coef * even_moment(e / 2));
  }
  return r;
}

Scalar slice_integral(const GaussPoly& f, int k) {
  if (k < 0 || k > f.m()) throw InvalidArgument("slice size outside 0..m");
  if (f.W() < 1) throw WindowExhausted("slice integral needs window >= 1");
  Scalar acc;
  std::vector<int> exps(static_cast<std::size_t>(k));
  for (const auto& [mono, coef] : f.terms()) {
    std::fill(exps.begin(), exps.end(), 0);
    bool vanishes = false;
    for (auto key : mono) {
      if (key_depth(key) != 1 || key_coord(key) > k) {
        vanishes = true;
        break;
      }
      ++exps[static_cast<std::size_t>(key_coord(key) - 1)];
    }
    if (vanishes) continue;
    Scalar factor(1);
    for (int e : exps) {
      if (e % 2 == 1) {
        factor = Scalar();
        break;
      }
      factor *= even_moment(e / 2);
    }
    if (!factor.is_zero()) acc += coef * factor;
  }
  return acc;
}

GaussPoly apply_vector_field(const GaussPoly& f, const std::vector<VectorFieldTerm>& field, int D_out,
                             int W_out) {
  GaussPoly r(f.m(), D_out, W_out);
  auto& out = GaussPolyAccess::terms(r);
  const int D = f.D();
  const Scalar gauss = -two_pi_c();
  for (const auto& vf : field) {
    if (vf.coeff.is_zero()) continue;
    const int top = D - std::max(vf.mul_offset, vf.der_offset);
    const Scalar gauss_coeff = gauss * vf.coeff;
    for (const auto& [mono, coef] : f.terms()) {
      // Polynomial part: differentiate each matching slot present in mono.
      for (auto it = mono.begin(); it != mono.end();) {
        const auto key = *it;
        auto next = std::upper_bound(it, mono.end(), key);
        const int i = key_depth(key) - vf.der_offset;
        if (key_coord(key) == vf.der_coord && i >= 1 && i <= top) {
          Monomial reduced(mono.begin(), it);
          reduced.insert(reduced.end(), it + 1, mono.end());
          const auto mkey = slot_key(SlotIndex{i + vf.mul_offset, vf.mul_coord});
          accumulate(out, with_slot(reduced, mkey),
                     coef * vf.coeff * Scalar(static_cast<int>(next - it)));
        }
        it = next;
      }
      // Gaussian part: -2 pi c x_der x_mul p.
      const Scalar c = coef * gauss_coeff;
      for (int i = 1; i <= top; ++i) {
        accumulate(out,
                   with_two_slots(mono, slot_key(SlotIndex{i + vf.der_offset, vf.der_coord}),
                                  slot_key(SlotIndex{i + vf.mul_offset, vf.mul_coord})),
                   c);
      }
    }
  }
  // Drop anything the caller's ambient depth cannot hold.
  for (auto it = out.begin(); it != out.end();) {
    it = monomial_depth(it->first) > D_out ? out.erase(it) : std::next(it);
  }
  return r;
}

double eval_numeric(const GaussPoly& f, std::span<const double> point, double lambda) {
  if (!(lambda > 0)) throw InvalidArgument("lambda must be positive");
  const std::size_t limit = static_cast<std::size_t>(f.D()) * static_cast<std::size_t>(f.m());
  double sq = 0.0;
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (i >= limit && point[i] != 0.0) throw DepthOverflow("evaluation point deeper than D");
    sq += point[i] * point[i];
  }
  const double rho = std::pow(lambda, 1.0 / f.m());
  const double c = 1.0 / (rho * rho);
  const double s = 1.0 / (2.0 * std::numbers::pi);
  double acc = 0.0;
  for (const auto& [mono, coef] : f.terms()) {
    double v = coef.evaluate(s, rho);
    for (auto key : mono) {
      const std::size_t idx = static_cast<std::size_t>((key_depth(key) - 1) * f.m() + key_coord(key) - 1);
      v *= idx < point.size() ? point[idx] : 0.0;
    }
    acc += v;
  }
  return acc * std::exp(-std::numbers::pi * c * sq);
}

}  // namespace loopfock
