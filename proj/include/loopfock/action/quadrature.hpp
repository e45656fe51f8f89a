#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace loopfock {

// Nodes and weights of a one-dimensional rule.
struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
  std::size_t size() const { return x.size(); }
};

// Trapezoid on [-L, L] with nodes -L + h/4 + k h, h = 2L / (N - 1), so no
// node ever sits on 0 or on the reflection of another node.
Rule1D offset_trapezoid(int nodes, double half_width);

// Two-sided exponential map b = +-exp(s), s uniform on [log lo, log hi],
// nodes/2 nodes per side; integrates functions that are flat near b = 0.
Rule1D exp_map_rule(int nodes, double lo, double hi);

// Gauss-Hermite rule for the weight exp(-pi x^2): exact for polynomials of
// degree < 2 nodes against that weight.
Rule1D gauss_hermite(int nodes);

struct QuadPlan {
  int nodes = 33;
  double half_width = 6.0;
  void validate() const;  // nodes >= 8, half_width >= 4
};

// Tensor product of one-dimensional rules, enumerated with the last axis fastest.
class TensorGrid {
 public:
  explicit TensorGrid(std::vector<Rule1D> axes);
  std::size_t dims() const { return axes_.size(); }
  std::size_t size() const { return size_; }
  // Writes node idx into out[0..dims) and returns its weight.
  double node(std::size_t idx, double* out) const;
  const Rule1D& axis(std::size_t d) const { return axes_[d]; }

 private:
  std::vector<Rule1D> axes_;
  std::size_t size_ = 1;
};

// Deterministic probe points: count points of the given dimension with
// coordinates uniform in [-scale, scale], from mt19937_64(seed) using the top
// 53 bits of each draw.
std::vector<std::vector<double>> probe_points(int count, int dims, std::uint64_t seed, double scale);

}  // namespace loopfock
