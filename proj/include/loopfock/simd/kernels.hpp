#pragma once

#include <cstddef>
#include <cstdint>

namespace loopfock::simd {

enum class Isa { scalar, avx2 };

// Flattened polynomial: term k has coefficient coef[k] and the variables
// vars[offsets[k] .. offsets[k + 1]) (repeated for powers).
struct PolyView {
  std::size_t nterms = 0;
  const double* coef = nullptr;
  const std::uint32_t* offsets = nullptr;
  const std::uint32_t* vars = nullptr;
};

// Kernel table shared by every instruction set. All batch routines are
// elementwise over n points stored column-wise (cols[v][k]).
struct KernelTable {
  Isa isa;
  void (*exp)(const double* x, double* y, std::size_t n);
  void (*sincos)(const double* x, double* s, double* c, std::size_t n);
  // out[k] = sum of squares over the ncols columns.
  void (*sum_squares)(const double* const* cols, std::size_t ncols, std::size_t n, double* out);
  // Complex points: out = sum_v (re_v + i im_v)^2.
  void (*sum_squares_complex)(const double* const* re, const double* const* im, std::size_t ncols, std::size_t n,
                              double* out_re, double* out_im);
  void (*poly_eval)(const PolyView& p, const double* const* cols, std::size_t n, double* out);
  void (*poly_eval_complex)(const PolyView& p, const double* const* re, const double* const* im, std::size_t n,
                            double* out_re, double* out_im);
  // y = p * exp(e) for complex p, e.
  void (*cmul_exp)(const double* p_re, const double* p_im, const double* e_re, const double* e_im, std::size_t n,
                   double* out_re, double* out_im);
};

const KernelTable& scalar_kernels();
#if defined(LOOPFOCK_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif

// True when the running CPU supports AVX2 and FMA and the build includes them.
bool avx2_available();

// Selected once per process from the CPU and LOOPFOCK_ISA (scalar, avx2, auto).
const KernelTable& active_kernels();
const KernelTable& kernels_for(Isa isa);
const char* isa_name(Isa isa);

// Fixed-order pairwise summation; identical on every instruction set.
double pairwise_sum(const double* x, std::size_t n);

// Largest |x| for which the vector sincos reduction is accurate; beyond it
// both paths fall back to the C library.
inline constexpr double kSinCosRangeLimit = 1.0e6;

}  // namespace loopfock::simd
