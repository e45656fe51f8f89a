#include "loopfock/hecke/int_smith.hpp"

#include <sstream>
#include <utility>

#include "loopfock/errors.hpp"

namespace loopfock {

IntMatrix::IntMatrix(int size, const std::vector<long>& values) : IntMatrix(size) {
  if (values.size() != a.size()) throw InvalidArgument("IntMatrix needs n*n values");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = values[i];
}

IntMatrix IntMatrix::identity(int size) {
  IntMatrix m(size);
  for (int i = 0; i < size; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (n != o.n) throw InvalidArgument("IntMatrix size mismatch");
  IntMatrix r(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if ((*this)(i, k) == 0) continue;
      for (int j = 0; j < n; ++j) r(i, j) += (*this)(i, k) * o(k, j);
    }
  }
  return r;
}

Integer IntMatrix::determinant() const {
  // Fraction-free Bareiss elimination.
  IntMatrix m = *this;
  Integer sign = 1, prev = 1;
  for (int k = 0; k < n; ++k) {
    if (m(k, k) == 0) {
      int p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (int c = 0; c < n; ++c) std::swap(m(k, c), m(p, c));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
    }
    prev = m(k, k);
  }
  return n == 0 ? Integer(1) : Integer(sign * m(n - 1, n - 1));
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int r = 0; r < n; ++r) {
    os << (r ? "; " : "");
    for (int c = 0; c < n; ++c) os << (c ? " " : "") << (*this)(r, c).get_str();
  }
  os << "]";
  return os.str();
}

namespace {

void swap_rows(IntMatrix& m, int a, int b) {
  for (int c = 0; c < m.n; ++c) std::swap(m(a, c), m(b, c));
}
void swap_cols(IntMatrix& m, int a, int b) {
  for (int r = 0; r < m.n; ++r) std::swap(m(r, a), m(r, b));
}
// row a -= q * row b
void sub_row(IntMatrix& m, int a, int b, const Integer& q) {
  for (int c = 0; c < m.n; ++c) m(a, c) -= q * m(b, c);
}
void sub_col(IntMatrix& m, int a, int b, const Integer& q) {
  for (int r = 0; r < m.n; ++r) m(r, a) -= q * m(r, b);
}
void negate_row(IntMatrix& m, int a) {
  for (int c = 0; c < m.n; ++c) m(a, c) = -m(a, c);
}

}  // namespace

IntSmith int_smith(const IntMatrix& A) {
  const int n = A.n;
  IntMatrix D = A, U = IntMatrix::identity(n), V = IntMatrix::identity(n);
  for (int s = 0; s < n; ++s) {
    for (;;) {
      // Pivot: smallest nonzero absolute value in the trailing block.
      int pr = -1, pc = -1;
      for (int r = s; r < n; ++r) {
        for (int c = s; c < n; ++c) {
          if (D(r, c) != 0 && (pr < 0 || abs(D(r, c)) < abs(D(pr, pc)))) {
            pr = r;
            pc = c;
          }
        }
      }
      if (pr < 0) break;
      swap_rows(D, s, pr);
      swap_rows(U, s, pr);
      swap_cols(D, s, pc);
      swap_cols(V, s, pc);
      bool clean = true;
      for (int r = s + 1; r < n; ++r) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), D(r, s).get_mpz_t(), D(s, s).get_mpz_t());
        sub_row(D, r, s, q);
        sub_row(U, r, s, q);
        clean = clean && D(r, s) == 0;
      }
      for (int c = s + 1; c < n; ++c) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), D(s, c).get_mpz_t(), D(s, s).get_mpz_t());
        sub_col(D, c, s, q);
        sub_col(V, c, s, q);
        clean = clean && D(s, c) == 0;
      }
      if (!clean) continue;
      // Enforce divisibility of the trailing block by folding a bad row in.
      int bad = -1;
      for (int r = s + 1; r < n && bad < 0; ++r) {
        for (int c = s + 1; c < n; ++c) {
          if (D(r, c) % D(s, s) != 0) {
            bad = r;
            break;
          }
        }
      }
      if (bad < 0) break;
      sub_row(D, s, bad, Integer(-1));
      sub_row(U, s, bad, Integer(-1));
    }
    if (D(s, s) < 0) {
      negate_row(D, s);
      negate_row(U, s);
    }
  }
  IntSmith out{U, V, {}};
  for (int i = 0; i < n; ++i) out.d.push_back(D(i, i));
  return out;
}

IntMatrix unimodular_inverse(const IntMatrix& U) {
  const int n = U.n;
  IntMatrix m = U, inv = IntMatrix::identity(n);
  // Integer Gauss-Jordan by repeated Euclidean row reduction.
  for (int c = 0; c < n; ++c) {
    for (;;) {
      int pr = -1;
      for (int r = c; r < n; ++r) {
        if (m(r, c) != 0 && (pr < 0 || abs(m(r, c)) < abs(m(pr, c)))) pr = r;
      }
      if (pr < 0) throw NotInvertible("matrix is not unimodular");
      swap_rows(m, c, pr);
      swap_rows(inv, c, pr);
      bool done = true;
      for (int r = c + 1; r < n; ++r) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m(r, c).get_mpz_t(), m(c, c).get_mpz_t());
        sub_row(m, r, c, q);
        sub_row(inv, r, c, q);
        done = done && m(r, c) == 0;
      }
      if (done) break;
    }
    if (abs(m(c, c)) != 1) throw NotInvertible("matrix is not unimodular");
    if (m(c, c) < 0) {
      negate_row(m, c);
      negate_row(inv, c);
    }
  }
  for (int c = n - 1; c >= 0; --c) {
    for (int r = 0; r < c; ++r) {
      const Integer q = m(r, c);
      sub_row(m, r, c, q);
      sub_row(inv, r, c, q);
    }
  }
  return inv;
}

}  // namespace loopfock
