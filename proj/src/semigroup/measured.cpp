#include "loopfock/semigroup/measured.hpp"

#include <algorithm>

#include "loopfock/errors.hpp"

namespace loopfock {

namespace {

int basis_depth(const std::vector<NegVector>& basis, int n) {
  int depth = 0;
  for (const auto& b : basis) depth = std::max(depth, neg_depth(b, n));
  return depth;
}

std::vector<NegVector> canonical_basis(int n, int l) {
  std::vector<NegVector> basis;
  for (int j = 0; j < n; ++j) {
    for (int i = 1; i <= l; ++i) {
      NegVector v(static_cast<std::size_t>(l * n));
      v[static_cast<std::size_t>((i - 1) * n + j)] = 1;
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

}  // namespace

HaarMeasure rebase(const HaarMeasure& mu, const std::vector<NegVector>& new_basis) {
  if (new_basis.size() != mu.basis.size()) {
    throw InvalidArgument("rebase between spaces of different dimension");
  }
  if (new_basis.empty()) return mu;
  RationalMatrix m(new_basis.size(), std::vector<Rational>(new_basis.size()));
  for (std::size_t c = 0; c < new_basis.size(); ++c) {
    auto coords = solve_in_span(mu.basis, new_basis[c]);
    if (!coords) throw InvalidArgument("rebase target is not a basis of the same space");
    for (std::size_t r = 0; r < coords->size(); ++r) m[r][c] = (*coords)[r];
  }
  const Rational det = determinant(m);
  if (det == 0) throw InvalidArgument("rebase target vectors are dependent");
  return HaarMeasure{new_basis, mu.scale * abs_value(det)};
}

HaarMeasure unit_measure(const LoopMatrix& g) {
  return HaarMeasure{lattice_quotient(g).basis, Rational(1)};
}

MeasuredElement make_element(const LoopMatrix& g, const HaarMeasure& mu, int l) {
  const LatticeQuotient q = lattice_quotient(g);
  if (q.dim != mu.dim()) throw InvalidArgument("measure dimension does not match V_g");
  return MeasuredElement{l, g, rebase(mu, q.basis)};
}

MeasuredElement standard_element(const LoopMatrix& g, int l) {
  return MeasuredElement{l, g, mu_st(g)};
}

MeasuredElement identity_element(int n) {
  return MeasuredElement{0, LoopMatrix::identity(n), HaarMeasure{}};
}

HaarMeasure mu_st(const LoopMatrix& g) {
  const SmithDecomposition d = smith_decompose(g);
  const LatticeQuotient q = lattice_quotient(g, d);
  bool diagonal_monomial = true;
  for (int r = 0; r < g.n() && diagonal_monomial; ++r) {
    for (int c = 0; c < g.n(); ++c) {
      const TruncatedSeries& e = g(r, c);
      const bool ok = r == c ? (e.terms().size() == 1 && e.leading() == 1) : e.is_zero_to_precision();
      if (!ok) {
        diagonal_monomial = false;
        break;
      }
    }
  }
  if (diagonal_monomial) return HaarMeasure{q.basis, Rational(1)};
  const LoopMatrix tk = LoopMatrix::diag_monomial(d.k);
  MeasuredElement a{0, d.h1, HaarMeasure{}};
  MeasuredElement b{0, tk, HaarMeasure{lattice_quotient(tk).basis, Rational(1)}};
  MeasuredElement c{0, d.h2, HaarMeasure{}};
  const MeasuredElement prod = convolve(convolve(a, b), c);
  return rebase(prod.mu, q.basis);
}

MeasuredElement convolve(const MeasuredElement& m1, const MeasuredElement& m2) {
  const int n = m1.g.n();
  if (m2.g.n() != n) throw InvalidArgument("convolution of elements of different size");
  const LoopMatrix g = m1.g * m2.g;
  const LatticeQuotient q = lattice_quotient(g);
  std::vector<NegVector> images;
  images.reserve(m1.mu.basis.size() + m2.mu.basis.size());
  if (!m1.mu.basis.empty()) {
    const int depth = basis_depth(m1.mu.basis, n);
    const LoopMatrix g2inv = inverse_over_laurent(m2.g, std::max(depth, 1));
    for (const auto& b : m1.mu.basis) {
      const LoopVector y = negative_projection(mat_vec(g2inv, from_neg_coords(b, n)));
      images.push_back(to_neg_coords(y, n));
    }
  }
  for (const auto& b : m2.mu.basis) images.push_back(b);
  if (static_cast<int>(images.size()) != q.dim) {
    throw Error("internal: dimension of V_{g1 g2} is not dim V_g1 + dim V_g2");
  }
  Rational scale = m1.mu.scale * m2.mu.scale;
  if (!images.empty()) {
    RationalMatrix m(images.size(), std::vector<Rational>(images.size()));
    for (std::size_t c = 0; c < images.size(); ++c) {
      auto coords = solve_in_span(q.basis, images[c]);
      if (!coords) throw Error("internal: image vector outside V_{g1 g2}");
      for (std::size_t r = 0; r < coords->size(); ++r) m[r][c] = (*coords)[r];
    }
    const Rational det = determinant(m);
    if (det == 0) throw Error("internal: convolution change of basis is singular");
    scale /= abs_value(det);
  }
  return MeasuredElement{m1.l + m2.l, g, HaarMeasure{q.basis, scale}};
}

MeasuredElement normalize(const MeasuredElement& m) {
  const int j = m.g.min_valuation();
  if (j <= 0) return m;
  const int n = m.g.n();
  const LoopMatrix reduced = m.g.shifted(-j);
  const MeasuredElement prefix{0, LoopMatrix::scalar(n, TruncatedSeries::monomial(1, j)),
                               HaarMeasure{canonical_basis(n, j), Rational(1)}};
  const MeasuredElement probe{0, reduced, unit_measure(reduced)};
  const MeasuredElement prod = convolve(prefix, probe);
  const HaarMeasure target = rebase(m.mu, prod.mu.basis);
  return MeasuredElement{m.l + j, reduced,
                         HaarMeasure{probe.mu.basis, target.scale / prod.mu.scale}};
}

MeasuredElement invert(const MeasuredElement& m) {
  if (!in_GL0(m.g)) throw NotInvertible("leading coefficient of det g is not +-1");
  const int n = m.g.n();
  const ValDet vd = val_det(m.g);
  const LoopMatrix ginv = inverse_over_laurent(m.g, n * vd.N + 2);
  const int l = -std::min(0, ginv.min_valuation());
  const LoopMatrix h = ginv.shifted(l);
  const MeasuredElement right{0, h, unit_measure(h)};
  const MeasuredElement prod = convolve(MeasuredElement{0, m.g, m.mu}, right);
  const Rational c = rebase(prod.mu, canonical_basis(n, l)).scale;
  return MeasuredElement{-m.l - l, h, HaarMeasure{right.mu.basis, Rational(1) / c}};
}

bool same_measure(const HaarMeasure& a, const HaarMeasure& b) {
  if (a.dim() != b.dim()) return false;
  if (a.dim() == 0) return a.scale == b.scale;
  for (const auto& v : b.basis) {
    if (!solve_in_span(a.basis, v)) return false;
  }
  return rebase(a, b.basis).scale == b.scale;
}

bool same_pair(const MeasuredElement& a, const MeasuredElement& b) {
  return a.l == b.l && a.g.agrees_with(b.g) && same_measure(a.mu, b.mu);
}

bool same_class(const MeasuredElement& a, const MeasuredElement& b) {
  return same_pair(normalize(a), normalize(b));
}

bool is_identity_class(const MeasuredElement& m) {
  return same_pair(normalize(m), identity_element(m.g.n()));
}

Rational commutation_scalar(const LoopMatrix& u, int k) {
  if (k < 0) throw InvalidArgument("commutation scalar needs k >= 0");
  if (val_det(u).N != 0) throw InvalidArgument("u must lie in GL_n(R)");
  const int n = u.n();
  const LoopMatrix tk = LoopMatrix::scalar(n, TruncatedSeries::monomial(1, k));
  const MeasuredElement a{0, tk, HaarMeasure{canonical_basis(n, k), Rational(1)}};
  const MeasuredElement b{0, u, HaarMeasure{}};
  const MeasuredElement left = convolve(a, b);
  const MeasuredElement right = convolve(b, a);
  return rebase(left.mu, right.mu.basis).scale / right.mu.scale;
}

bool is_central_G(const TruncatedSeries& a) {
  const Rational c = a.leading();
  return c == 1 || c == -1;
}

}  // namespace loopfock
