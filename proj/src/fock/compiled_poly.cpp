#include "loopfock/fock/compiled_poly.hpp"

#include <cmath>
#include <numbers>

#include "loopfock/errors.hpp"

namespace loopfock {

CompiledPoly::CompiledPoly(const GaussPoly& f, double lambda) : m_(f.m()) {
  if (!(lambda > 0)) throw InvalidArgument("lambda must be positive");
  const double rho = std::pow(lambda, 1.0 / m_);
  const double s = 1.0 / (2.0 * std::numbers::pi);
  width_ = 1.0 / (rho * rho);
  offsets_.push_back(0);
  for (const auto& [mono, c] : f.terms()) {
    const double v = c.evaluate(s, rho);
    if (v == 0.0) continue;
    coef_.push_back(v);
    for (auto key : mono) {
      depth_ = std::max(depth_, key_depth(key));
      vars_.push_back(static_cast<std::uint32_t>((key_depth(key) - 1) * m_ + key_coord(key) - 1));
    }
    offsets_.push_back(static_cast<std::uint32_t>(vars_.size()));
  }
}

simd::PolyView CompiledPoly::view() const {
  return simd::PolyView{coef_.size(), coef_.data(), offsets_.data(), vars_.data()};
}

}  // namespace loopfock
