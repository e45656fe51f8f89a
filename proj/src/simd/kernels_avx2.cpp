#if defined(LOOPFOCK_HAVE_AVX2)

#include <immintrin.h>

#include <cmath>

#include "kernels_common.hpp"
#include "loopfock/simd/kernels.hpp"

namespace loopfock::simd {

namespace {

using namespace detail;

constexpr std::size_t kLanes = 4;

inline __m256d round_nearest(__m256d x) { return _mm256_round_pd(x, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC); }

// 2^k for integral k in [-1022, 1023] held in doubles.
inline __m256d pow2i(__m256d k) {
  const __m128i ki = _mm256_cvtpd_epi32(k);
  const __m256i wide = _mm256_cvtepi32_epi64(ki);
  const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(wide, _mm256_set1_epi64x(1023)), 52);
  return _mm256_castsi256_pd(bits);
}

inline __m256d exp4(__m256d x) {
  const __m256d xc = _mm256_max_pd(_mm256_min_pd(x, _mm256_set1_pd(kExpMax)), _mm256_set1_pd(kExpMin));
  const __m256d k = round_nearest(_mm256_mul_pd(xc, _mm256_set1_pd(kLog2e)));
  __m256d r = _mm256_fnmadd_pd(k, _mm256_set1_pd(kLn2Hi), xc);
  r = _mm256_fnmadd_pd(k, _mm256_set1_pd(kLn2Lo), r);
  __m256d p = _mm256_set1_pd(kExpPoly[0]);
  for (int i = 1; i < 12; ++i) p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(kExpPoly[i]));
  p = _mm256_add_pd(_mm256_fmadd_pd(p, _mm256_mul_pd(r, r), r), _mm256_set1_pd(1.0));
  // Split the exponent so both factors stay normal.
  const __m256d k1 = _mm256_round_pd(_mm256_mul_pd(k, _mm256_set1_pd(0.5)), _MM_FROUND_TO_ZERO | _MM_FROUND_NO_EXC);
  const __m256d k2 = _mm256_sub_pd(k, k1);
  __m256d y = _mm256_mul_pd(_mm256_mul_pd(p, pow2i(k1)), pow2i(k2));
  y = _mm256_blendv_pd(y, _mm256_set1_pd(HUGE_VAL), _mm256_cmp_pd(x, _mm256_set1_pd(kExpMax), _CMP_GT_OQ));
  y = _mm256_blendv_pd(y, _mm256_setzero_pd(), _mm256_cmp_pd(x, _mm256_set1_pd(kExpMin), _CMP_LT_OQ));
  // NaN inputs propagate.
  return _mm256_blendv_pd(y, x, _mm256_cmp_pd(x, x, _CMP_UNORD_Q));
}

inline bool in_sincos_range(__m256d x) {
  const __m256d ax = _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
  return _mm256_movemask_pd(_mm256_cmp_pd(ax, _mm256_set1_pd(kSinCosRangeLimit), _CMP_LE_OQ)) == 0xF;
}

inline void sincos4(__m256d x, __m256d& s, __m256d& c) {
  const __m256d k = round_nearest(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)));
  __m256d r = _mm256_fnmadd_pd(k, _mm256_set1_pd(kPio2A), x);
  r = _mm256_fnmadd_pd(k, _mm256_set1_pd(kPio2B), r);
  r = _mm256_fnmadd_pd(k, _mm256_set1_pd(kPio2C), r);
  const __m256d z = _mm256_mul_pd(r, r);
  __m256d ps = _mm256_set1_pd(kSinPoly[0]), pc = _mm256_set1_pd(kCosPoly[0]);
  for (int i = 1; i < 6; ++i) {
    ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(kSinPoly[i]));
    pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(kCosPoly[i]));
  }
  const __m256d sr = _mm256_fmadd_pd(_mm256_mul_pd(r, z), ps, r);
  const __m256d cr =
      _mm256_fmadd_pd(_mm256_mul_pd(z, z), pc, _mm256_fmadd_pd(_mm256_set1_pd(-0.5), z, _mm256_set1_pd(1.0)));
  // Quadrant q = k mod 4: bit 0 swaps sin/cos, bit 1 negates sin, (bit 0 xor bit 1) negates cos.
  const __m256i q = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(k));
  const __m256i one = _mm256_set1_epi64x(1), two = _mm256_set1_epi64x(2);
  const __m256d swap = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(q, one), one));
  const __m256i bit1 = _mm256_and_si256(q, two);
  const __m256d neg_s = _mm256_castsi256_pd(_mm256_cmpeq_epi64(bit1, two));
  const __m256i bit0_shift = _mm256_slli_epi64(_mm256_and_si256(q, one), 1);
  const __m256d neg_c = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_xor_si256(bit1, bit0_shift), two));
  const __m256d sign = _mm256_set1_pd(-0.0);
  const __m256d s0 = _mm256_blendv_pd(sr, cr, swap);
  const __m256d c0 = _mm256_blendv_pd(cr, sr, swap);
  s = _mm256_xor_pd(s0, _mm256_and_pd(neg_s, sign));
  c = _mm256_xor_pd(c0, _mm256_and_pd(neg_c, sign));
}

void exp_batch(const double* x, double* y, std::size_t n) {
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) _mm256_storeu_pd(y + k, exp4(_mm256_loadu_pd(x + k)));
  if (k < n) scalar_kernels().exp(x + k, y + k, n - k);
}

void sincos_batch(const double* x, double* s, double* c, std::size_t n) {
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    const __m256d v = _mm256_loadu_pd(x + k);
    if (!in_sincos_range(v)) {
      scalar_kernels().sincos(x + k, s + k, c + k, kLanes);
      continue;
    }
    __m256d vs, vc;
    sincos4(v, vs, vc);
    _mm256_storeu_pd(s + k, vs);
    _mm256_storeu_pd(c + k, vc);
  }
  if (k < n) scalar_kernels().sincos(x + k, s + k, c + k, n - k);
}

void sum_squares(const double* const* cols, std::size_t ncols, std::size_t n, double* out) {
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t v = 0; v < ncols; ++v) {
      const __m256d a = _mm256_loadu_pd(cols[v] + k);
      acc = _mm256_fmadd_pd(a, a, acc);
    }
    _mm256_storeu_pd(out + k, acc);
  }
  for (; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t v = 0; v < ncols; ++v) acc = std::fma(cols[v][k], cols[v][k], acc);
    out[k] = acc;
  }
}

void sum_squares_complex(const double* const* re, const double* const* im, std::size_t ncols, std::size_t n,
                         double* out_re, double* out_im) {
  std::size_t k = 0;
  const __m256d two = _mm256_set1_pd(2.0);
  for (; k + kLanes <= n; k += kLanes) {
    __m256d ar = _mm256_setzero_pd(), ai = _mm256_setzero_pd();
    for (std::size_t v = 0; v < ncols; ++v) {
      const __m256d a = _mm256_loadu_pd(re[v] + k), b = _mm256_loadu_pd(im[v] + k);
      ar = _mm256_fmadd_pd(a, a, _mm256_fnmadd_pd(b, b, ar));
      ai = _mm256_fmadd_pd(_mm256_mul_pd(two, a), b, ai);
    }
    _mm256_storeu_pd(out_re + k, ar);
    _mm256_storeu_pd(out_im + k, ai);
  }
  for (; k < n; ++k) {
    double ar = 0.0, ai = 0.0;
    for (std::size_t v = 0; v < ncols; ++v) {
      const double a = re[v][k], b = im[v][k];
      ar = std::fma(a, a, std::fma(-b, b, ar));
      ai = std::fma(2.0 * a, b, ai);
    }
    out_re[k] = ar;
    out_im[k] = ai;
  }
}

void poly_eval(const PolyView& p, const double* const* cols, std::size_t n, double* out) {
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t t = 0; t < p.nterms; ++t) {
      __m256d v = _mm256_set1_pd(p.coef[t]);
      for (std::uint32_t j = p.offsets[t]; j < p.offsets[t + 1]; ++j) {
        v = _mm256_mul_pd(v, _mm256_loadu_pd(cols[p.vars[j]] + k));
      }
      acc = _mm256_add_pd(acc, v);
    }
    _mm256_storeu_pd(out + k, acc);
  }
  for (; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t t = 0; t < p.nterms; ++t) {
      double v = p.coef[t];
      for (std::uint32_t j = p.offsets[t]; j < p.offsets[t + 1]; ++j) v *= cols[p.vars[j]][k];
      acc += v;
    }
    out[k] = acc;
  }
}

void poly_eval_complex(const PolyView& p, const double* const* re, const double* const* im, std::size_t n,
                       double* out_re, double* out_im) {
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    __m256d acc_r = _mm256_setzero_pd(), acc_i = _mm256_setzero_pd();
    for (std::size_t t = 0; t < p.nterms; ++t) {
      __m256d a = _mm256_set1_pd(p.coef[t]), b = _mm256_setzero_pd();
      for (std::uint32_t j = p.offsets[t]; j < p.offsets[t + 1]; ++j) {
        const __m256d c = _mm256_loadu_pd(re[p.vars[j]] + k), d = _mm256_loadu_pd(im[p.vars[j]] + k);
        const __m256d na = _mm256_fmsub_pd(a, c, _mm256_mul_pd(b, d));
        b = _mm256_fmadd_pd(a, d, _mm256_mul_pd(b, c));
        a = na;
      }
      acc_r = _mm256_add_pd(acc_r, a);
      acc_i = _mm256_add_pd(acc_i, b);
    }
    _mm256_storeu_pd(out_re + k, acc_r);
    _mm256_storeu_pd(out_im + k, acc_i);
  }
  for (; k < n; ++k) {
    double acc_r = 0.0, acc_i = 0.0;
    for (std::size_t t = 0; t < p.nterms; ++t) {
      double a = p.coef[t], b = 0.0;
      for (std::uint32_t j = p.offsets[t]; j < p.offsets[t + 1]; ++j) {
        const double c = re[p.vars[j]][k], d = im[p.vars[j]][k];
        const double na = std::fma(a, c, -(b * d));
        b = std::fma(a, d, b * c);
        a = na;
      }
      acc_r += a;
      acc_i += b;
    }
    out_re[k] = acc_r;
    out_im[k] = acc_i;
  }
}

void cmul_exp(const double* p_re, const double* p_im, const double* e_re, const double* e_im, std::size_t n,
              double* out_re, double* out_im) {
  std::size_t k = 0;
  for (; k + kLanes <= n; k += kLanes) {
    const __m256d ei = _mm256_loadu_pd(e_im + k);
    if (!in_sincos_range(ei)) {
      scalar_kernels().cmul_exp(p_re + k, p_im + k, e_re + k, e_im + k, kLanes, out_re + k, out_im + k);
      continue;
    }
    const __m256d mag = exp4(_mm256_loadu_pd(e_re + k));
    __m256d s, c;
    sincos4(ei, s, c);
    const __m256d wr = _mm256_mul_pd(mag, c), wi = _mm256_mul_pd(mag, s);
    const __m256d pr = _mm256_loadu_pd(p_re + k), pi = _mm256_loadu_pd(p_im + k);
    _mm256_storeu_pd(out_re + k, _mm256_sub_pd(_mm256_mul_pd(pr, wr), _mm256_mul_pd(pi, wi)));
    _mm256_storeu_pd(out_im + k, _mm256_add_pd(_mm256_mul_pd(pr, wi), _mm256_mul_pd(pi, wr)));
  }
  if (k < n) scalar_kernels().cmul_exp(p_re + k, p_im + k, e_re + k, e_im + k, n - k, out_re + k, out_im + k);
}

}  // namespace

const KernelTable& avx2_kernels() {
  static const KernelTable table{Isa::avx2,          exp_batch, sincos_batch,      sum_squares,
                                 sum_squares_complex, poly_eval, poly_eval_complex, cmul_exp};
  return table;
}

}  // namespace loopfock::simd

#endif
