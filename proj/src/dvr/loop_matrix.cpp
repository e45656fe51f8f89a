#include "loopfock/dvr/loop_matrix.hpp"

#include <algorithm>
#include <sstream>

#include "loopfock/errors.hpp"

namespace loopfock {

LoopMatrix::LoopMatrix(int n)
    : n_(n), entries_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
  if (n < 1) throw InvalidArgument("matrix dimension must be positive");
}

LoopMatrix::LoopMatrix(int n, std::vector<TruncatedSeries> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n < 1 || entries_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw InvalidArgument("matrix entry count does not match dimension");
  }
}

LoopMatrix LoopMatrix::identity(int n) {
  LoopMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = TruncatedSeries(Rational(1));
  return m;
}

LoopMatrix LoopMatrix::diag_monomial(const std::vector<int>& k) {
  LoopMatrix m(static_cast<int>(k.size()));
  for (int i = 0; i < m.n(); ++i) m(i, i) = TruncatedSeries::monomial(1, k[static_cast<std::size_t>(i)]);
  return m;
}

LoopMatrix LoopMatrix::scalar(int n, const TruncatedSeries& a) {
  LoopMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = a;
  return m;
}

LoopMatrix LoopMatrix::from_rationals(int n, const std::vector<Rational>& values) {
  LoopMatrix m(n);
  if (values.size() != static_cast<std::size_t>(n * n)) {
    throw InvalidArgument("rational matrix entry count does not match dimension");
  }
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) m(r, c) = TruncatedSeries(values[static_cast<std::size_t>(r * n + c)]);
  }
  return m;
}

int LoopMatrix::order() const {
  int o = TruncatedSeries::kExact;
  for (const auto& e : entries_) o = std::min(o, e.order());
  return o;
}

bool LoopMatrix::is_exact() const { return order() >= TruncatedSeries::kExact; }

LoopMatrix LoopMatrix::truncated(int order) const {
  LoopMatrix m = *this;
  for (auto& e : m.entries_) e = e.truncated(order);
  return m;
}

int LoopMatrix::min_valuation() const {
  int v = TruncatedSeries::kExact;
  for (const auto& e : entries_) {
    if (!e.is_zero_to_precision()) v = std::min(v, e.valuation());
  }
  return v;
}

bool LoopMatrix::in_power_series() const {
  for (const auto& e : entries_) {
    if (!e.is_zero_to_precision() && e.valuation() < 0) return false;
  }
  return true;
}

LoopMatrix LoopMatrix::transpose() const {
  LoopMatrix m(n_);
  for (int r = 0; r < n_; ++r) {
    for (int c = 0; c < n_; ++c) m(c, r) = (*this)(r, c);
  }
  return m;
}

LoopMatrix LoopMatrix::reflected() const {
  LoopMatrix m(n_);
  for (std::size_t i = 0; i < entries_.size(); ++i) m.entries_[i] = entries_[i].reflected();
  return m;
}

LoopMatrix LoopMatrix::shifted(int k) const {
  LoopMatrix m(n_);
  for (std::size_t i = 0; i < entries_.size(); ++i) m.entries_[i] = entries_[i].shifted(k);
  return m;
}

std::vector<Rational> LoopMatrix::constant_term() const {
  std::vector<Rational> out(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) out[i] = entries_[i].coeff(0);
  return out;
}

namespace {

TruncatedSeries minor_determinant(const LoopMatrix& m, std::vector<int>& rows, std::vector<int>& cols) {
  const std::size_t k = rows.size();
  if (k == 1) return m(rows[0], cols[0]);
  if (k == 2) return m(rows[0], cols[0]) * m(rows[1], cols[1]) - m(rows[0], cols[1]) * m(rows[1], cols[0]);
  TruncatedSeries acc;
  const int r0 = rows[0];
  std::vector<int> sub_rows(rows.begin() + 1, rows.end());
  for (std::size_t j = 0; j < k; ++j) {
    const TruncatedSeries& entry = m(r0, cols[j]);
    if (entry.is_zero_to_precision() && entry.is_exact()) continue;
    std::vector<int> sub_cols;
    sub_cols.reserve(k - 1);
    for (std::size_t c = 0; c < k; ++c) {
      if (c != j) sub_cols.push_back(cols[c]);
    }
    TruncatedSeries term = entry * minor_determinant(m, sub_rows, sub_cols);
    if (j % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return acc;
}

}  // namespace

TruncatedSeries LoopMatrix::determinant() const {
  std::vector<int> rows(static_cast<std::size_t>(n_)), cols(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) rows[static_cast<std::size_t>(i)] = cols[static_cast<std::size_t>(i)] = i;
  return minor_determinant(*this, rows, cols);
}

LoopMatrix LoopMatrix::adjugate() const {
  LoopMatrix adj(n_);
  if (n_ == 1) {
    adj(0, 0) = TruncatedSeries(Rational(1));
    return adj;
  }
  for (int r = 0; r < n_; ++r) {
    for (int c = 0; c < n_; ++c) {
      std::vector<int> rows, cols;
      for (int i = 0; i < n_; ++i) {
        if (i != c) rows.push_back(i);
        if (i != r) cols.push_back(i);
      }
      TruncatedSeries minor = minor_determinant(*this, rows, cols);
      adj(r, c) = ((r + c) % 2 == 0) ? minor : -minor;
    }
  }
  return adj;
}

LoopMatrix LoopMatrix::operator*(const LoopMatrix& other) const {
  if (n_ != other.n_) throw InvalidArgument("matrix dimension mismatch in product");
  LoopMatrix m(n_);
  for (int r = 0; r < n_; ++r) {
    for (int c = 0; c < n_; ++c) {
      TruncatedSeries acc;
      for (int k = 0; k < n_; ++k) {
        const TruncatedSeries& a = (*this)(r, k);
        const TruncatedSeries& b = other(k, c);
        if ((a.is_zero_to_precision() && a.is_exact()) || (b.is_zero_to_precision() && b.is_exact())) continue;
        acc += a * b;
      }
      m(r, c) = acc;
    }
  }
  return m;
}

LoopMatrix LoopMatrix::operator+(const LoopMatrix& other) const {
  if (n_ != other.n_) throw InvalidArgument("matrix dimension mismatch in sum");
  LoopMatrix m = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) m.entries_[i] += other.entries_[i];
  return m;
}

LoopMatrix LoopMatrix::operator-(const LoopMatrix& other) const {
  if (n_ != other.n_) throw InvalidArgument("matrix dimension mismatch in difference");
  LoopMatrix m = *this;
  for (std::size_t i = 0; i < entries_.size(); ++i) m.entries_[i] -= other.entries_[i];
  return m;
}

bool LoopMatrix::agrees_with(const LoopMatrix& other) const {
  if (n_ != other.n_) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!entries_[i].agrees_with(other.entries_[i])) return false;
  }
  return true;
}

bool LoopMatrix::agrees_with(const LoopMatrix& other, int below) const {
  if (n_ != other.n_) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!entries_[i].agrees_with(other.entries_[i], below)) return false;
  }
  return true;
}

std::string LoopMatrix::to_string() const {
  std::ostringstream out;
  out << "[";
  for (int r = 0; r < n_; ++r) {
    out << (r ? "; " : "") << "[";
    for (int c = 0; c < n_; ++c) out << (c ? ", " : "") << (*this)(r, c).to_string();
    out << "]";
  }
  out << "]";
  return out.str();
}

LoopMatrix inverse_over_laurent(const LoopMatrix& g, int order) {
  const TruncatedSeries det = g.determinant();
  if (det.is_zero_to_precision()) {
    if (det.is_exact()) throw Singular("determinant is zero");
    throw InsufficientPrecision("determinant is zero up to precision");
  }
  const LoopMatrix adj = g.adjugate();
  const int adj_val = std::min(adj.min_valuation(), order);
  const int needed = order - adj_val;
  const TruncatedSeries inv_det = series_invert_tracked(det, needed);
  LoopMatrix out(g.n());
  for (int r = 0; r < g.n(); ++r) {
    for (int c = 0; c < g.n(); ++c) out(r, c) = (adj(r, c) * inv_det).truncated(order);
  }
  if (out.order() < order) {
    throw InsufficientPrecision("inverse certified only to order " + std::to_string(out.order()));
  }
  return out;
}

ValDet val_det(const LoopMatrix& g) {
  const TruncatedSeries det = g.determinant();
  if (det.is_zero_to_precision()) {
    if (det.is_exact()) throw Singular("determinant is zero");
    throw Singular("determinant is zero up to precision");
  }
  return ValDet{det.valuation(), det.leading()};
}

bool in_GL0(const LoopMatrix& g) {
  const ValDet vd = val_det(g);
  return vd.leading == 1 || vd.leading == -1;
}

}  // namespace loopfock
