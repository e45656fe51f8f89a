#pragma once

#include <cstdint>
#include <vector>

#include "loopfock/fock/gauss_poly.hpp"
#include "loopfock/simd/kernels.hpp"

namespace loopfock {

// Polynomial part of a GaussPoly with coefficients evaluated at a given
// lambda, flattened for the batch kernels. Variable x_{-d}^a has index
// (d - 1) * m + a - 1.
class CompiledPoly {
 public:
  CompiledPoly(const GaussPoly& f, double lambda);

  simd::PolyView view() const;
  int m() const { return m_; }
  int depth() const { return depth_; }
  std::size_t num_vars() const { return static_cast<std::size_t>(depth_) * static_cast<std::size_t>(m_); }
  // Gaussian width c = lambda^{-2/m}.
  double width() const { return width_; }

 private:
  int m_ = 1;
  int depth_ = 0;
  double width_ = 1.0;
  std::vector<double> coef_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> vars_;
};

}  // namespace loopfock
