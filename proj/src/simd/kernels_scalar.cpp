#include <cmath>
#include <cstring>

#include "kernels_common.hpp"
#include "loopfock/simd/kernels.hpp"

namespace loopfock::simd {

namespace {

using namespace detail;

double pow2i(int k) {
  const std::uint64_t bits = static_cast<std::uint64_t>(k + 1023) << 52;
  double r;
  std::memcpy(&r, &bits, sizeof r);
  return r;
}

double exp1(double x) {
  if (std::isnan(x)) return x;
  if (x > kExpMax) return HUGE_VAL;
  if (x < kExpMin) return 0.0;
  const double k = std::nearbyint(x * kLog2e);
  const double r = std::fma(-k, kLn2Lo, std::fma(-k, kLn2Hi, x));
  double p = kExpPoly[0];
  for (int i = 1; i < 12; ++i) p = std::fma(p, r, kExpPoly[i]);
  p = std::fma(p, r * r, r) + 1.0;
  const int ki = static_cast<int>(k);
  const int k1 = ki / 2;
  return p * pow2i(k1) * pow2i(ki - k1);
}

void sincos1(double x, double& s, double& c) {
  if (!(std::abs(x) <= kSinCosRangeLimit)) {
    s = std::sin(x);
    c = std::cos(x);
    return;
  }
  const double k = std::nearbyint(x * kTwoOverPi);
  const double r = std::fma(-k, kPio2C, std::fma(-k, kPio2B, std::fma(-k, kPio2A, x)));
  const double z = r * r;
  double ps = kSinPoly[0], pc = kCosPoly[0];
  for (int i = 1; i < 6; ++i) {
    ps = std::fma(ps, z, kSinPoly[i]);
    pc = std::fma(pc, z, kCosPoly[i]);
  }
  const double sr = std::fma(r * z, ps, r);
  const double cr = std::fma(z * z, pc, std::fma(-0.5, z, 1.0));
  const long q = static_cast<long>(k) & 3;
  switch (q) {
    case 0: s = sr; c = cr; break;
    case 1: s = cr; c = -sr; break;
    case 2: s = -sr; c = -cr; break;
    default: s = -cr; c = sr; break;
  }
}

void exp_batch(const double* x, double* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] = exp1(x[k]);
}

void sincos_batch(const double* x, double* s, double* c, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) sincos1(x[k], s[k], c[k]);
}

void sum_squares(const double* const* cols, std::size_t ncols, std::size_t n, double* out) {
  for (std::size_t k = 0; k < n; ++k) out[k] = 0.0;
  for (std::size_t v = 0; v < ncols; ++v) {
    const double* col = cols[v];
    for (std::size_t k = 0; k < n; ++k) out[k] = std::fma(col[k], col[k], out[k]);
  }
}

void sum_squares_complex(const double* const* re, const double* const* im, std::size_t ncols, std::size_t n,
                         double* out_re, double* out_im) {
  for (std::size_t k = 0; k < n; ++k) out_re[k] = out_im[k] = 0.0;
  for (std::size_t v = 0; v < ncols; ++v) {
    for (std::size_t k = 0; k < n; ++k) {
      const double a = re[v][k], b = im[v][k];
      out_re[k] = std::fma(a, a, std::fma(-b, b, out_re[k]));
      out_im[k] = std::fma(2.0 * a, b, out_im[k]);
    }
  }
}

void poly_eval(const PolyView& p, const double* const* cols, std::size_t n, double* out) {
  for (std::size_t k = 0; k < n; ++k) out[k] = 0.0;
  for (std::size_t t = 0; t < p.nterms; ++t) {
    for (std::size_t k = 0; k < n; ++k) {
      double v = p.coef[t];
      for (std::uint32_t j = p.offsets[t]; j < p.offsets[t + 1]; ++j) v *= cols[p.vars[j]][k];
      out[k] += v;
    }
  }
}

void poly_eval_complex(const PolyView& p, const double* const* re, const double* const* im, std::size_t n,
                       double* out_re, double* out_im) {
  for (std::size_t k = 0; k < n; ++k) out_re[k] = out_im[k] = 0.0;
  for (std::size_t t = 0; t < p.nterms; ++t) {
    for (std::size_t k = 0; k < n; ++k) {
      double a = p.coef[t], b = 0.0;
      for (std::uint32_t j = p.offsets[t]; j < p.offsets[t + 1]; ++j) {
        const double c = re[p.vars[j]][k], d = im[p.vars[j]][k];
        const double na = std::fma(a, c, -b * d);
        b = std::fma(a, d, b * c);
        a = na;
      }
      out_re[k] += a;
      out_im[k] += b;
    }
  }
}

void cmul_exp(const double* p_re, const double* p_im, const double* e_re, const double* e_im, std::size_t n,
              double* out_re, double* out_im) {
  for (std::size_t k = 0; k < n; ++k) {
    const double mag = exp1(e_re[k]);
    double s, c;
    sincos1(e_im[k], s, c);
    const double wr = mag * c, wi = mag * s;
    out_re[k] = p_re[k] * wr - p_im[k] * wi;
    out_im[k] = p_re[k] * wi + p_im[k] * wr;
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{Isa::scalar,     exp_batch, sincos_batch,      sum_squares,
                                 sum_squares_complex, poly_eval, poly_eval_complex, cmul_exp};
  return table;
}

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) s += x[k];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

}  // namespace loopfock::simd
