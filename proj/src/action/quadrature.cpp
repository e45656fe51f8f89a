#include "loopfock/action/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "loopfock/errors.hpp"

namespace loopfock {

Rule1D offset_trapezoid(int nodes, double half_width) {
  if (nodes < 2) throw InvalidArgument("trapezoid needs at least 2 nodes");
  Rule1D r;
  const double h = 2.0 * half_width / (nodes - 1);
  r.x.resize(static_cast<std::size_t>(nodes));
  r.w.assign(static_cast<std::size_t>(nodes), h);
  for (int k = 0; k < nodes; ++k) r.x[static_cast<std::size_t>(k)] = -half_width + 0.25 * h + k * h;
  return r;
}

Rule1D exp_map_rule(int nodes, double lo, double hi) {
  const int half = nodes / 2;
  if (half < 2 || !(lo > 0) || !(hi > lo)) throw InvalidArgument("exp map rule needs 0 < lo < hi and >= 4 nodes");
  const double slo = std::log(lo), shi = std::log(hi);
  const double hs = (shi - slo) / (half - 1);
  Rule1D r;
  r.x.resize(static_cast<std::size_t>(2 * half));
  r.w.resize(static_cast<std::size_t>(2 * half));
  for (int k = 0; k < half; ++k) {
    const double b = std::exp(slo + hs * k);
    const double w = hs * b;
    const auto pos = static_cast<std::size_t>(half + k);
    const auto neg = static_cast<std::size_t>(half - 1 - k);
    r.x[pos] = b;
    r.w[pos] = w;
    r.x[neg] = -b;
    r.w[neg] = w;
  }
  return r;
}

Rule1D gauss_hermite(int nodes) {
  if (nodes < 1 || nodes > 200) throw InvalidArgument("Gauss-Hermite rule needs 1..200 nodes");
  // Newton iteration on orthonormal Hermite polynomials for the weight exp(-x^2),
  // then x -> x / sqrt(pi).
  const int n = nodes;
  const double pim4 = 0.7511255444649425;  // pi^{-1/4}
  std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
  double z = 0.0;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1) - 1.85575 * std::pow(2.0 * n + 1, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[static_cast<std::size_t>(i - 2)];
    }
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    const auto lo = static_cast<std::size_t>(i), hi = static_cast<std::size_t>(n - 1 - i);
    x[lo] = z;
    x[hi] = -z;
    w[lo] = w[hi] = 2.0 / (pp * pp);
  }
  Rule1D r;
  const double s = 1.0 / std::sqrt(std::numbers::pi);
  for (int i = n - 1; i >= 0; --i) {
    r.x.push_back(x[static_cast<std::size_t>(i)] * s);
    r.w.push_back(w[static_cast<std::size_t>(i)] * s);
  }
  return r;
}

void QuadPlan::validate() const {
  if (nodes < 8) throw InvalidArgument("quadrature needs at least 8 nodes per axis, got " + std::to_string(nodes));
  if (!(half_width >= 4.0)) throw InvalidArgument("quadrature half-width must be at least 4");
}

TensorGrid::TensorGrid(std::vector<Rule1D> axes) : axes_(std::move(axes)) {
  for (const auto& a : axes_) size_ *= a.size();
}

double TensorGrid::node(std::size_t idx, double* out) const {
  double w = 1.0;
  for (std::size_t d = axes_.size(); d-- > 0;) {
    const std::size_t n = axes_[d].size();
    const std::size_t k = idx % n;
    idx /= n;
    out[d] = axes_[d].x[k];
    w *= axes_[d].w[k];
  }
  return w;
}

std::vector<std::vector<double>> probe_points(int count, int dims, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> pts(static_cast<std::size_t>(count), std::vector<double>(static_cast<std::size_t>(dims)));
  for (auto& p : pts) {
    for (auto& v : p) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      v = scale * (2.0 * u - 1.0);
    }
  }
  return pts;
}

}  // namespace loopfock
