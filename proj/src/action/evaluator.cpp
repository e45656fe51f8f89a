#include "loopfock/action/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "loopfock/errors.hpp"

namespace loopfock {

namespace {

constexpr std::size_t kChunk = 4096;

int depth_of(std::size_t dims, int n) {
  return static_cast<int>((dims + static_cast<std::size_t>(n) - 1) / static_cast<std::size_t>(n));
}

}  // namespace

PointBatch PointBatch::from_points(const std::vector<std::vector<double>>& pts) {
  std::size_t dims = 0;
  for (const auto& p : pts) dims = std::max(dims, p.size());
  PointBatch b(dims, pts.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    for (std::size_t v = 0; v < pts[k].size(); ++v) b.col(v)[k] = pts[k][v];
  }
  return b;
}

double Evaluator::operator()(std::span<const double> x) const {
  PointBatch b(x.size(), 1);
  std::copy(x.begin(), x.end(), b.data.begin());
  double out = 0.0;
  evaluate(b, &out);
  return out;
}

std::vector<double> Evaluator::evaluate(const PointBatch& pts) const {
  std::vector<double> out(pts.count);
  evaluate(pts, out.data());
  return out;
}

GaussPolyEvaluator::GaussPolyEvaluator(const GaussPoly& f, double lambda) : poly_(f, lambda) {}

void GaussPolyEvaluator::evaluate(const PointBatch& pts, double* out) const {
  const std::size_t n = pts.count;
  if (n == 0) return;
  const auto& k = simd::active_kernels();
  const std::vector<double> zero(n, 0.0);
  std::vector<const double*> cols(std::max(pts.dims, poly_.num_vars()), zero.data());
  for (std::size_t v = 0; v < pts.dims; ++v) cols[v] = pts.col(v);
  std::vector<double> ss(n), poly(n);
  k.sum_squares(cols.data(), pts.dims, n, ss.data());
  const double a = -std::numbers::pi * poly_.width();
  for (auto& v : ss) v *= a;
  k.exp(ss.data(), ss.data(), n);
  k.poly_eval(poly_.view(), cols.data(), n, poly.data());
  for (std::size_t i = 0; i < n; ++i) out[i] = poly[i] * ss[i];
}

NegProjection neg_projection_matrix(const LoopMatrix& M, int in_depth) {
  NegProjection P;
  P.n = M.n();
  P.in_depth = in_depth;
  int minval = 0;
  for (int r = 0; r < P.n; ++r) {
    for (int c = 0; c < P.n; ++c) {
      if (!M(r, c).is_zero_to_precision()) minval = std::min(minval, M(r, c).valuation());
    }
  }
  P.out_depth = in_depth - minval;
  const int rows = P.out_depth * P.n, cols = in_depth * P.n;
  P.a.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0.0);
  for (int d = 1; d <= P.out_depth; ++d) {
    for (int i = 1; i <= in_depth; ++i) {
      const int e = i - d;
      for (int a = 0; a < P.n; ++a) {
        for (int b = 0; b < P.n; ++b) {
          const Rational q = M(a, b).coeff(e);
          if (q == 0) continue;
          const std::size_t row = static_cast<std::size_t>((d - 1) * P.n + a);
          const std::size_t col = static_cast<std::size_t>((i - 1) * P.n + b);
          P.a[row * static_cast<std::size_t>(cols) + col] = to_double(q);
        }
      }
    }
  }
  return P;
}

const NegProjection& ProjectionCache::get(int in_depth) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = cache_.find(in_depth);
  if (it != cache_.end()) return it->second;
  const LoopMatrix M = invert_ ? inverse_over_laurent(M_, std::max(in_depth, 1)) : M_;
  return cache_.emplace(in_depth, neg_projection_matrix(M, in_depth)).first->second;
}

namespace {

// p = P x for point k of the batch, written into p (size P.out_depth n).
void project_point(const NegProjection& P, const PointBatch& pts, std::size_t k, std::vector<double>& p) {
  const std::size_t cols = static_cast<std::size_t>(P.in_depth * P.n);
  const std::size_t rows = static_cast<std::size_t>(P.out_depth * P.n);
  std::fill(p.begin(), p.end(), 0.0);
  for (std::size_t v = 0; v < std::min(cols, pts.dims); ++v) {
    const double x = pts.at(k, v);
    if (x == 0.0) continue;
    for (std::size_t r = 0; r < rows; ++r) p[r] += P.a[r * cols + v] * x;
  }
}

}  // namespace

LinearSubstitution::LinearSubstitution(EvaluatorPtr inner, LoopMatrix M, double scale, bool invert)
    : inner_(std::move(inner)), proj_(std::move(M), invert), scale_(scale) {
  if (inner_->m() != proj_.n()) throw InvalidArgument("substitution matrix size does not match the model");
}

void LinearSubstitution::evaluate(const PointBatch& pts, double* out) const {
  const NegProjection& P = proj_.get(depth_of(pts.dims, proj_.n()));
  const std::size_t rows = static_cast<std::size_t>(P.out_depth * P.n);
  PointBatch y(rows, pts.count);
  std::vector<double> p(rows);
  for (std::size_t k = 0; k < pts.count; ++k) {
    project_point(P, pts, k, p);
    for (std::size_t r = 0; r < rows; ++r) y.col(r)[k] = scale_ * p[r];
  }
  inner_->evaluate(y, out);
}

IntegralAction::IntegralAction(EvaluatorPtr inner, const MeasuredElement& m, const IntegralOptions& opt)
    : inner_(std::move(inner)), n_(m.g.n()), proj_(m.g, true), dim_(m.mu.dim()) {
  opt.quad.validate();
  if (inner_->m() != n_) throw InvalidArgument("integral action needs the vector model of matching size");
  if (dim_ > 4) throw DimensionTooLarge("dim V_g = " + std::to_string(dim_) + " exceeds the quadrature budget of 4");
  if (!(opt.lambda > 0) || !(opt.width > 0)) throw InvalidArgument("lambda and width must be positive");
  for (const auto& b : m.mu.basis) basis_depth_ = std::max(basis_depth_, neg_depth(b, n_));
  const std::size_t rows = static_cast<std::size_t>(basis_depth_ * n_);
  const std::size_t d = static_cast<std::size_t>(dim_);
  // Modified Gram-Schmidt: B = Q R.
  Q_.assign(rows * d, 0.0);
  double det_r = 1.0;
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> v(rows, 0.0);
    const NegVector& b = m.mu.basis[j];
    for (std::size_t r = 0; r < std::min(rows, b.size()); ++r) v[r] = to_double(b[r]);
    for (std::size_t q = 0; q < j; ++q) {
      double dot = 0.0;
      for (std::size_t r = 0; r < rows; ++r) dot += Q_[r * d + q] * v[r];
      for (std::size_t r = 0; r < rows; ++r) v[r] -= dot * Q_[r * d + q];
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm == 0.0) throw Singular("measure basis is linearly dependent");
    det_r *= norm;
    for (std::size_t r = 0; r < rows; ++r) Q_[r * d + j] = v[r] / norm;
  }
  const double density = opt.euclidean_measure ? 1.0 : to_double(m.mu.scale) / det_r;
  prefactor_ = std::pow(opt.lambda, m.l) * density;
  std::vector<Rule1D> axes(d, offset_trapezoid(opt.quad.nodes, opt.quad.half_width / std::sqrt(opt.width)));
  grid_ = std::make_unique<TensorGrid>(std::move(axes));
}

void IntegralAction::evaluate(const PointBatch& pts, double* out) const {
  const NegProjection& P = proj_.get(depth_of(pts.dims, n_));
  const std::size_t d = static_cast<std::size_t>(dim_);
  const std::size_t brows = static_cast<std::size_t>(basis_depth_ * n_);
  const std::size_t rows = std::max(static_cast<std::size_t>(P.out_depth * n_), brows);
  std::vector<double> p(static_cast<std::size_t>(P.out_depth * n_));
  if (d == 0) {
    PointBatch y(rows, pts.count);
    for (std::size_t k = 0; k < pts.count; ++k) {
      project_point(P, pts, k, p);
      for (std::size_t r = 0; r < p.size(); ++r) y.col(r)[k] = p[r];
    }
    inner_->evaluate(y, out);
    for (std::size_t k = 0; k < pts.count; ++k) out[k] *= prefactor_;
    return;
  }
  const std::size_t G = grid_->size();
  std::vector<double> values(G), buf(std::min(G, kChunk)), weights(std::min(G, kChunk));
  std::vector<double> base(rows), z0(d), u(d);
  for (std::size_t k = 0; k < pts.count; ++k) {
    project_point(P, pts, k, p);
    std::fill(base.begin(), base.end(), 0.0);
    std::copy(p.begin(), p.end(), base.begin());
    // Center of the Gaussian along V_g: z0 = -Q^T p.
    for (std::size_t q = 0; q < d; ++q) {
      double s = 0.0;
      for (std::size_t r = 0; r < brows; ++r) s += Q_[r * d + q] * base[r];
      z0[q] = -s;
    }
    for (std::size_t start = 0; start < G; start += kChunk) {
      const std::size_t cnt = std::min(kChunk, G - start);
      PointBatch y(rows, cnt);
      for (std::size_t r = brows; r < rows; ++r) std::fill_n(y.col(r), cnt, base[r]);
      for (std::size_t j = 0; j < cnt; ++j) {
        weights[j] = grid_->node(start + j, u.data());
        for (std::size_t q = 0; q < d; ++q) u[q] += z0[q];
        for (std::size_t r = 0; r < brows; ++r) {
          double s = base[r];
          for (std::size_t q = 0; q < d; ++q) s += Q_[r * d + q] * u[q];
          y.col(r)[j] = s;
        }
      }
      inner_->evaluate(y, buf.data());
      for (std::size_t j = 0; j < cnt; ++j) values[start + j] = buf[j] * weights[j];
    }
    out[k] = prefactor_ * simd::pairwise_sum(values.data(), G);
  }
}

}  // namespace loopfock
