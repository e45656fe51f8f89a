#include "loopfock/hecke/padic.hpp"

#include <limits>

#include "loopfock/errors.hpp"

namespace loopfock {

PAdicFunction::PAdicFunction(int p, int n, int depth) : p_(p), n_(n), depth_(depth), modulus_(1) {
  if (p < 2 || mpz_probab_prime_p(Integer(p).get_mpz_t(), 25) == 0) throw InvalidArgument("p must be prime");
  if (n < 1) throw InvalidArgument("n must be positive");
  if (depth < 0) throw InvalidArgument("depth must be nonnegative");
  if (depth > kPadicMaxDepth) throw DepthOverflow("p-adic depth " + std::to_string(depth) + " exceeds the cap");
  for (int i = 0; i < depth; ++i) modulus_ *= p;
  std::size_t size = 1;
  for (int i = 0; i < n; ++i) size *= static_cast<std::size_t>(modulus_);
  values_.assign(size, Rational(0));
}

PAdicFunction PAdicFunction::indicator_of_zero(int p, int n, int depth) {
  PAdicFunction f(p, n, depth);
  f.values_[0] = 1;
  return f;
}

std::vector<std::int64_t> PAdicFunction::coset(std::size_t index) const {
  std::vector<std::int64_t> a(static_cast<std::size_t>(n_));
  for (auto& ai : a) {
    ai = static_cast<std::int64_t>(index % static_cast<std::size_t>(modulus_));
    index /= static_cast<std::size_t>(modulus_);
  }
  return a;
}

std::size_t PAdicFunction::index_of(const std::vector<std::int64_t>& a) const {
  std::size_t idx = 0;
  for (int i = n_ - 1; i >= 0; --i) {
    std::int64_t v = a[static_cast<std::size_t>(i)] % modulus_;
    if (v < 0) v += modulus_;
    idx = idx * static_cast<std::size_t>(modulus_) + static_cast<std::size_t>(v);
  }
  return idx;
}

PAdicFunction PAdicFunction::scaled(const Rational& s) const {
  PAdicFunction r = *this;
  for (auto& v : r.values_) v *= s;
  return r;
}

int padic_valuation(const Integer& x, int p) {
  if (x == 0) throw InvalidArgument("valuation of zero");
  Integer y = abs(x);
  int v = 0;
  while (mpz_divisible_ui_p(y.get_mpz_t(), static_cast<unsigned long>(p))) {
    y /= p;
    ++v;
  }
  return v;
}

std::vector<std::vector<Integer>> padic_coset_reps(const IntMatrix& g, int p) {
  const int n = g.n;
  const IntSmith s = int_smith(g);
  // g = U^{-1} D V^{-1}, so g Z_p^n = U^{-1} D Z_p^n and only the p-part of D matters.
  const IntMatrix Uinv = unimodular_inverse(s.U);
  std::vector<Integer> bound(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    if (s.d[static_cast<std::size_t>(i)] == 0) throw Singular("det g = 0");
    Integer pk = 1;
    for (int e = padic_valuation(s.d[static_cast<std::size_t>(i)], p); e > 0; --e) pk *= p;
    bound[static_cast<std::size_t>(i)] = pk;
  }
  std::vector<std::vector<Integer>> reps;
  std::vector<Integer> a(static_cast<std::size_t>(n), Integer(0));
  for (;;) {
    std::vector<Integer> r(static_cast<std::size_t>(n), Integer(0));
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) r[static_cast<std::size_t>(i)] += Uinv(i, j) * a[static_cast<std::size_t>(j)];
    }
    reps.push_back(std::move(r));
    int i = 0;
    while (i < n) {
      auto& ai = a[static_cast<std::size_t>(i)];
      if (++ai < bound[static_cast<std::size_t>(i)]) break;
      ai = 0;
      ++i;
    }
    if (i == n) break;
  }
  return reps;
}

PAdicFunction padic_hecke(const IntMatrix& g, const PAdicFunction& f) {
  const int n = f.n(), p = f.p();
  if (g.n != n) throw InvalidArgument("matrix size does not match the model");
  const Integer det = g.determinant();
  if (det == 0) throw Singular("det g = 0");
  const auto reps = padic_coset_reps(g, p);

  // g^{-1} y = adj(g) y / det, with y = a / p^M. Write det = p^v u, u prime to p.
  IntMatrix adj(n);
  {
    // adj(g) = det g^{-1}, obtained column by column from rational solves.
    std::vector<Rational> m(static_cast<std::size_t>(n * n));
    for (int i = 0; i < n * n; ++i) m[static_cast<std::size_t>(i)] = Rational(g.a[static_cast<std::size_t>(i)]);
    std::vector<Rational> inv(static_cast<std::size_t>(n * n), Rational(0));
    for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(i * n + i)] = 1;
    for (int c = 0; c < n; ++c) {
      int pr = c;
      while (m[static_cast<std::size_t>(pr * n + c)] == 0) ++pr;
      for (int k = 0; k < n; ++k) {
        std::swap(m[static_cast<std::size_t>(c * n + k)], m[static_cast<std::size_t>(pr * n + k)]);
        std::swap(inv[static_cast<std::size_t>(c * n + k)], inv[static_cast<std::size_t>(pr * n + k)]);
      }
      const Rational piv = m[static_cast<std::size_t>(c * n + c)];
      for (int k = 0; k < n; ++k) {
        m[static_cast<std::size_t>(c * n + k)] /= piv;
        inv[static_cast<std::size_t>(c * n + k)] /= piv;
      }
      for (int r = 0; r < n; ++r) {
        const Rational q = m[static_cast<std::size_t>(r * n + c)];
        if (r == c || q == 0) continue;
        for (int k = 0; k < n; ++k) {
          m[static_cast<std::size_t>(r * n + k)] -= q * m[static_cast<std::size_t>(c * n + k)];
          inv[static_cast<std::size_t>(r * n + k)] -= q * inv[static_cast<std::size_t>(c * n + k)];
        }
      }
    }
    for (int i = 0; i < n * n; ++i) {
      const Rational v = inv[static_cast<std::size_t>(i)] * Rational(det);
      adj.a[static_cast<std::size_t>(i)] = v.get_num();
    }
  }
  const int v = padic_valuation(det, p);
  Integer pv = 1;
  for (int e = 0; e < v; ++e) pv *= p;
  const Integer u = det / pv;
  const Integer P(static_cast<long>(f.modulus()));
  const Integer big = P * pv;  // denominator after clearing u
  Integer u_inv;
  if (mpz_invert(u_inv.get_mpz_t(), u.get_mpz_t(), big.get_mpz_t()) == 0) throw InvalidArgument("unit inversion failed");

  PAdicFunction out(p, n, f.depth());
  std::vector<Integer> num(static_cast<std::size_t>(n)), shifted(static_cast<std::size_t>(n));
  std::vector<std::int64_t> a_out(static_cast<std::size_t>(n));
  for (std::size_t xi = 0; xi < out.size(); ++xi) {
    const auto a = out.coset(xi);
    Rational acc = 0;
    for (const auto& r : reps) {
      // x + r = (a + P r) / P; g^{-1}(x + r) = adj (a + P r) u^{-1} / (P p^v) mod Z_p.
      for (int i = 0; i < n; ++i) shifted[static_cast<std::size_t>(i)] = Integer(static_cast<long>(a[static_cast<std::size_t>(i)])) + P * r[static_cast<std::size_t>(i)];
      bool inside = true;
      for (int i = 0; i < n && inside; ++i) {
        Integer s = 0;
        for (int j = 0; j < n; ++j) s += adj(i, j) * shifted[static_cast<std::size_t>(j)];
        s = s * u_inv;
        mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), big.get_mpz_t());
        // Inside p^{-M} Z_p^n exactly when p^v divides the reduced numerator.
        if (!mpz_divisible_p(s.get_mpz_t(), pv.get_mpz_t())) {
          inside = false;
          break;
        }
        a_out[static_cast<std::size_t>(i)] = Integer(s / pv).get_si();
      }
      if (inside) acc += f[f.index_of(a_out)];
    }
    out[xi] = acc;
  }
  return out;
}

PAdicFunction padic_extend(const Rational& lambda, const PAdicMatrix& g, const PAdicFunction& f, int extra_shift) {
  const int n = f.n(), p = f.p();
  if (g.n != n || g.a.size() != static_cast<std::size_t>(n * n)) throw InvalidArgument("matrix size does not match the model");
  if (lambda == 0) throw InvalidArgument("lambda must be nonzero");
  if (extra_shift < 0) throw InvalidArgument("extra_shift must be nonnegative");
  IntMatrix pI = IntMatrix::identity(n);
  for (int i = 0; i < n; ++i) pI(i, i) = p;
  if (!(padic_hecke(pI, f) == f.scaled(lambda))) throw NotEigenfunction("pi(pI) f != lambda f");

  int k = std::numeric_limits<int>::max();
  for (const auto& q : g.a) {
    if (q == 0) continue;
    Integer den = q.get_den();
    int dv = padic_valuation(den, p);
    Integer pd = 1;
    for (int e = 0; e < dv; ++e) pd *= p;
    if (den != pd) throw InvalidArgument("denominators must be powers of p");
    k = std::min(k, padic_valuation(q.get_num(), p) - dv);
  }
  if (k == std::numeric_limits<int>::max()) throw Singular("g = 0");
  k -= extra_shift;
  IntMatrix gp(n);
  const Rational scale = pow_rational(Rational(p), -k);
  for (std::size_t i = 0; i < g.a.size(); ++i) {
    const Rational v = g.a[i] * scale;
    gp.a[i] = v.get_num();
  }
  if (gp.determinant() == 0) throw Singular("det g = 0");
  return padic_hecke(gp, f).scaled(pow_rational(lambda, k));
}

}  // namespace loopfock
