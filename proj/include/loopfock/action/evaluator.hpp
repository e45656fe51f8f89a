#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "loopfock/action/quadrature.hpp"
#include "loopfock/fock/compiled_poly.hpp"
#include "loopfock/semigroup/measured.hpp"

namespace loopfock {

// Points stored column-wise: coordinate v of point k is data[v * count + k].
// Coordinates use the flat layout (depth - 1) * m + coord - 1.
struct PointBatch {
  std::size_t dims = 0;
  std::size_t count = 0;
  std::vector<double> data;

  PointBatch() = default;
  PointBatch(std::size_t dims_, std::size_t count_) : dims(dims_), count(count_), data(dims_ * count_, 0.0) {}
  double* col(std::size_t v) { return data.data() + v * count; }
  const double* col(std::size_t v) const { return data.data() + v * count; }
  double at(std::size_t k, std::size_t v) const { return data[v * count + k]; }
  static PointBatch from_points(const std::vector<std::vector<double>>& pts);
};

// A function on R^m_- evaluated pointwise; coordinates missing from a batch
// count as zero.
class Evaluator {
 public:
  virtual ~Evaluator() = default;
  virtual int m() const = 0;
  virtual void evaluate(const PointBatch& pts, double* out) const = 0;
  double operator()(std::span<const double> x) const;
  std::vector<double> evaluate(const PointBatch& pts) const;
};
using EvaluatorPtr = std::shared_ptr<const Evaluator>;

// f(x) for a Gaussian polynomial, with the Gaussian over every coordinate.
class GaussPolyEvaluator final : public Evaluator {
 public:
  GaussPolyEvaluator(const GaussPoly& f, double lambda);
  int m() const override { return poly_.m(); }
  void evaluate(const PointBatch& pts, double* out) const override;
  double width() const { return poly_.width(); }

 private:
  CompiledPoly poly_;
};

// Dense real matrix of x -> pi_-(M x) between flat coordinate spaces, where M
// is a matrix over Laurent series; rows cover depths 1..out_depth.
struct NegProjection {
  int n = 0;
  int in_depth = 0;
  int out_depth = 0;
  std::vector<double> a;  // row-major, (out_depth n) x (in_depth n)
};
// out_depth = in_depth + max(0, -min valuation of M).
NegProjection neg_projection_matrix(const LoopMatrix& M, int in_depth);

// Projection matrices of M, or of M^{-1} over Laurent series, per input
// depth; the inverse is recomputed to the order each depth needs.
class ProjectionCache {
 public:
  ProjectionCache(LoopMatrix M, bool invert) : M_(std::move(M)), invert_(invert) {}
  const NegProjection& get(int in_depth) const;
  int n() const { return M_.n(); }

 private:
  LoopMatrix M_;
  bool invert_;
  mutable std::mutex mu_;
  mutable std::map<int, NegProjection> cache_;
};

// x -> inner(scale * pi_-(M x)), or with M^{-1} when invert is set.
class LinearSubstitution final : public Evaluator {
 public:
  LinearSubstitution(EvaluatorPtr inner, LoopMatrix M, double scale = 1.0, bool invert = false);
  int m() const override { return inner_->m(); }
  void evaluate(const PointBatch& pts, double* out) const override;

 private:
  EvaluatorPtr inner_;
  ProjectionCache proj_;
  double scale_;
};

struct IntegralOptions {
  double lambda = 1.0;
  // Gaussian width of the integrand, used to size and center the grid.
  double width = 1.0;
  QuadPlan quad;
  // Lebesgue measure of the Euclidean structure on V_g instead of m.mu.
  bool euclidean_measure = false;
};

// x -> lambda^l int_{V_g} inner(pi_-(g^{-1} x) + y) mu(dy), with the grid in
// the orthonormalized basis of V_g centered on the Gaussian peak.
class IntegralAction final : public Evaluator {
 public:
  IntegralAction(EvaluatorPtr inner, const MeasuredElement& m, const IntegralOptions& opt);
  int m() const override { return inner_->m(); }
  void evaluate(const PointBatch& pts, double* out) const override;
  int dim() const { return dim_; }
  // lambda^l times the measure density in orthonormal coordinates.
  double prefactor() const { return prefactor_; }

 private:
  EvaluatorPtr inner_;
  int n_ = 0;
  ProjectionCache proj_;
  int dim_ = 0;
  int basis_depth_ = 0;
  std::vector<double> Q_;  // (basis_depth n) x dim, orthonormal columns
  double prefactor_ = 1.0;
  std::unique_ptr<TensorGrid> grid_;
};

}  // namespace loopfock
