#include "loopfock/functionals/whittaker.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "loopfock/errors.hpp"
#include "loopfock/simd/kernels.hpp"

namespace loopfock {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kChunk = 2048;

using Mat = std::vector<double>;  // row-major

// Entry (r, c) of an n x n matrix at the given depth as a flat coordinate.
int flat(int n, int depth, int r, int c) { return (depth - 1) * n * n + (r - 1) * n + (c - 1); }

// Cholesky G = R^T R with R upper triangular; returns false unless positive definite.
bool cholesky_upper(const Mat& G, std::size_t k, Mat& R) {
  R.assign(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    double s = G[i * k + i];
    for (std::size_t p = 0; p < i; ++p) s -= R[p * k + i] * R[p * k + i];
    if (!(s > 0)) return false;
    R[i * k + i] = std::sqrt(s);
    for (std::size_t j = i + 1; j < k; ++j) {
      double t = G[i * k + j];
      for (std::size_t p = 0; p < i; ++p) t -= R[p * k + i] * R[p * k + j];
      R[i * k + j] = t / R[i * k + i];
    }
  }
  return true;
}

// Inverse by Gauss-Jordan with partial pivoting.
Mat invert(Mat a, std::size_t k) {
  Mat inv(k * k, 0.0);
  for (std::size_t i = 0; i < k; ++i) inv[i * k + i] = 1.0;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::abs(a[r * k + col]) > std::abs(a[piv * k + col])) piv = r;
    if (a[piv * k + col] == 0.0) throw Singular("matrix is singular");
    for (std::size_t c = 0; c < k; ++c) {
      std::swap(a[col * k + c], a[piv * k + c]);
      std::swap(inv[col * k + c], inv[piv * k + c]);
    }
    const double d = a[col * k + col];
    for (std::size_t c = 0; c < k; ++c) {
      a[col * k + c] /= d;
      inv[col * k + c] /= d;
    }
    for (std::size_t r = 0; r < k; ++r) {
      if (r == col) continue;
      const double f = a[r * k + col];
      if (f == 0.0) continue;
      for (std::size_t c = 0; c < k; ++c) {
        a[r * k + c] -= f * a[col * k + c];
        inv[r * k + c] -= f * inv[col * k + c];
      }
    }
  }
  return inv;
}

double determinant(Mat a, std::size_t k) {
  double det = 1.0;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::abs(a[r * k + col]) > std::abs(a[piv * k + col])) piv = r;
    if (a[piv * k + col] == 0.0) return 0.0;
    if (piv != col) {
      for (std::size_t c = 0; c < k; ++c) std::swap(a[col * k + c], a[piv * k + c]);
      det = -det;
    }
    det *= a[col * k + col];
    for (std::size_t r = col + 1; r < k; ++r) {
      const double f = a[r * k + col] / a[col * k + col];
      for (std::size_t c = col; c < k; ++c) a[r * k + c] -= f * a[col * k + c];
    }
  }
  return det;
}

struct DenAxis {
  std::size_t den;  // slice position
  std::size_t num;  // slice position
  double c;
};

WhittakerValue integrate(const WhittakerSlice& s, const CompiledPoly& f, const WhittakerConfig& cfg, const Mat& M,
                         const Mat& P) {
  cfg.validate(s);
  if (f.m() != s.m) throw InvalidArgument("functional and polynomial use different models");
  const std::size_t Fd = static_cast<std::size_t>(s.full_dims());
  const std::size_t S = static_cast<std::size_t>(s.dim());
  const double cw = f.width();

  // A = M E, full coordinates by slice variables.
  Mat A(Fd * S, 0.0);
  for (std::size_t j = 0; j < S; ++j) {
    const auto v = static_cast<std::size_t>(s.vars[j]);
    for (std::size_t r = 0; r < Fd; ++r) A[r * S + j] = M.empty() ? (r == v ? 1.0 : 0.0) : M[r * Fd + v];
  }

  std::vector<DenAxis> dens;
  std::vector<bool> is_den(S, false);
  for (std::size_t k = 0; k < s.phases.size(); ++k) {
    if (cfg.c[k] == 0.0) continue;
    const auto den = static_cast<std::size_t>(s.phases[k].den), num = static_cast<std::size_t>(s.phases[k].num);
    if (is_den[den]) throw InvalidArgument("phase denominators must be distinct");
    is_den[den] = true;
    dens.push_back({den, num, cfg.c[k]});
  }
  for (const auto& d : dens)
    if (is_den[d.num]) throw InvalidArgument("a phase numerator is also a denominator");
  std::vector<std::size_t> zpos, zindex(S, 0);
  for (std::size_t j = 0; j < S; ++j) {
    if (!is_den[j]) {
      zindex[j] = zpos.size();
      zpos.push_back(j);
    }
  }
  const std::size_t K = dens.size(), Z = zpos.size();

  // G = cw A^T A split into z and d blocks.
  auto g = [&](std::size_t a, std::size_t b) {
    double acc = 0.0;
    for (std::size_t r = 0; r < Fd; ++r) acc += A[r * S + a] * A[r * S + b];
    return cw * acc;
  };
  Mat Gzz(Z * Z), Gzd(Z * K), Gdd(K * K);
  for (std::size_t i = 0; i < Z; ++i) {
    for (std::size_t j = 0; j < Z; ++j) Gzz[i * Z + j] = g(zpos[i], zpos[j]);
    for (std::size_t j = 0; j < K; ++j) Gzd[i * K + j] = g(zpos[i], dens[j].den);
  }
  for (std::size_t i = 0; i < K; ++i)
    for (std::size_t j = 0; j < K; ++j) Gdd[i * K + j] = g(dens[i].den, dens[j].den);
  Mat R;
  if (!cholesky_upper(Gzz, Z, R)) throw Singular("integrand is not Gaussian along the slice");
  const Mat Rinv = invert(R, Z);
  Mat Ginv(Z * Z, 0.0);
  for (std::size_t i = 0; i < Z; ++i)
    for (std::size_t j = 0; j < Z; ++j)
      for (std::size_t p = 0; p < Z; ++p) Ginv[i * Z + j] += Rinv[i * Z + p] * Rinv[j * Z + p];
  Mat B(Z * K, 0.0);  // Ginv Gzd
  for (std::size_t i = 0; i < Z; ++i)
    for (std::size_t j = 0; j < K; ++j)
      for (std::size_t p = 0; p < Z; ++p) B[i * K + j] += Ginv[i * Z + p] * Gzd[p * K + j];
  double jac = 1.0;
  for (std::size_t i = 0; i < Z; ++i) jac /= R[i * Z + i];

  // Denominator axes: two-sided exponential maps between the flat region of
  // exp(-pi c^2 / b^2) and the marginal Gaussian tail.
  std::vector<Rule1D> daxes;
  if (K > 0) {
    Mat Schur = Gdd;
    for (std::size_t i = 0; i < K; ++i)
      for (std::size_t j = 0; j < K; ++j)
        for (std::size_t p = 0; p < Z; ++p) Schur[i * K + j] -= Gzd[p * K + i] * B[p * K + j];
    const Mat Sinv = invert(Schur, K);
    for (std::size_t k = 0; k < K; ++k) {
      const std::size_t zi = zindex[dens[k].num];
      const double lo = 0.15 * std::abs(dens[k].c) * std::sqrt(Ginv[zi * Z + zi]);
      const double hi = cfg.quad.half_width * std::sqrt(Sinv[k * K + k]);
      if (!(hi > lo)) throw BudgetExceeded("phase coefficient too large for the quadrature domain");
      daxes.push_back(exp_map_rule(cfg.quad.nodes, lo, hi));
    }
  }
  const TensorGrid dgrid(daxes);
  const TensorGrid wgrid(std::vector<Rule1D>(Z, gauss_hermite(cfg.gauss_nodes > 0 ? cfg.gauss_nodes : cfg.quad.nodes)));
  const double evaluations = static_cast<double>(dgrid.size()) * static_cast<double>(wgrid.size());
  if (evaluations > cfg.max_evaluations)
    throw BudgetExceeded("Whittaker quadrature needs " + std::to_string(evaluations) + " evaluations");

  // Per denominator node: z0 = -B d + i Ginv nu and base = A_d d + A_z z0.
  const std::size_t ND = dgrid.size();
  std::vector<double> dvals(ND * K), dweight(ND), z0re(ND * Z), z0im(ND * Z), base_re(ND * Fd), base_im(ND * Fd);
  std::vector<bool> coarse(ND, true);
  {
    std::vector<double> d(K), nu(Z);
    for (std::size_t p = 0; p < ND; ++p) {
      dweight[p] = dgrid.node(p, d.data());
      std::size_t idx = p;
      for (std::size_t k = K; k-- > 0;) {
        const std::size_t sz = daxes[k].size(), half = sz / 2, i = idx % sz;
        idx /= sz;
        const std::size_t side_index = i >= half ? i - half : half - 1 - i;
        if (side_index % 2 == 1) coarse[p] = false;
      }
      std::fill(nu.begin(), nu.end(), 0.0);
      for (std::size_t k = 0; k < K; ++k) {
        dvals[p * K + k] = d[k];
        nu[zindex[dens[k].num]] += dens[k].c / d[k];
      }
      for (std::size_t i = 0; i < Z; ++i) {
        double re = 0.0, im = 0.0;
        for (std::size_t k = 0; k < K; ++k) re -= B[i * K + k] * d[k];
        for (std::size_t j = 0; j < Z; ++j) im += Ginv[i * Z + j] * nu[j];
        z0re[p * Z + i] = re;
        z0im[p * Z + i] = im;
      }
      for (std::size_t r = 0; r < Fd; ++r) {
        double re = 0.0, im = 0.0;
        for (std::size_t k = 0; k < K; ++k) re += A[r * S + dens[k].den] * d[k];
        for (std::size_t i = 0; i < Z; ++i) {
          re += A[r * S + zpos[i]] * z0re[p * Z + i];
          im += A[r * S + zpos[i]] * z0im[p * Z + i];
        }
        base_re[p * Fd + r] = re;
        base_im[p * Fd + r] = im;
      }
    }
  }
  // C = A_z R^{-1}: full-coordinate offset of a Gauss-Hermite node.
  Mat C(Fd * Z, 0.0);
  for (std::size_t r = 0; r < Fd; ++r)
    for (std::size_t j = 0; j < Z; ++j)
      for (std::size_t i = 0; i < Z; ++i) C[r * Z + j] += A[r * S + zpos[i]] * Rinv[i * Z + j];

  const auto& kern = simd::active_kernels();
  const simd::PolyView pv = f.view();
  const bool constant_poly = pv.nterms == 0 || (pv.nterms == 1 && pv.offsets[1] == 0);
  const double constant_value = pv.nterms == 0 ? 0.0 : pv.coef[0];
  const std::size_t NW = wgrid.size();
  const std::size_t nchunks = (NW + kChunk - 1) / kChunk;
  const std::size_t pvars = std::max(Fd, f.num_vars());
  std::vector<double> chunk_re(ND * nchunks), chunk_im(ND * nchunks);

  std::vector<double> off(Fd * kChunk), rw(Z * kChunk), wwt(kChunk), wsq(kChunk), w(Z);
  std::vector<double> yre(Fd * kChunk), yim(Fd * kChunk), zero(kChunk, 0.0);
  std::vector<double> ere(kChunk), eim(kChunk), pre(kChunk), pim(kChunk), vre(kChunk), vim(kChunk);
  std::vector<const double*> cre(pvars, zero.data()), cim(pvars, zero.data());
  std::vector<double> xre(S), xim(S);
  for (std::size_t ch = 0; ch < nchunks; ++ch) {
    const std::size_t start = ch * kChunk, cnt = std::min(kChunk, NW - start);
    for (std::size_t j = 0; j < cnt; ++j) {
      wwt[j] = wgrid.node(start + j, w.data());
      double sq = 0.0;
      for (double x : w) sq += x * x;
      wsq[j] = kPi * sq;
      for (std::size_t i = 0; i < Z; ++i) {
        double acc = 0.0;
        for (std::size_t q = i; q < Z; ++q) acc += Rinv[i * Z + q] * w[q];
        rw[i * kChunk + j] = acc;
      }
      for (std::size_t r = 0; r < Fd; ++r) {
        double acc = 0.0;
        for (std::size_t q = 0; q < Z; ++q) acc += C[r * Z + q] * w[q];
        off[r * kChunk + j] = acc;
      }
    }
    for (std::size_t p = 0; p < ND; ++p) {
      for (std::size_t r = 0; r < Fd; ++r) {
        const double br = base_re[p * Fd + r], bi = base_im[p * Fd + r];
        double* cr = yre.data() + r * kChunk;
        double* ci = yim.data() + r * kChunk;
        const double* o = off.data() + r * kChunk;
        for (std::size_t j = 0; j < cnt; ++j) {
          cr[j] = br + o[j];
          ci[j] = bi;
        }
        cre[r] = cr;
        cim[r] = ci;
      }
      kern.sum_squares_complex(cre.data(), cim.data(), Fd, cnt, ere.data(), eim.data());
      for (std::size_t j = 0; j < cnt; ++j) {
        ere[j] = -kPi * cw * ere[j] + wsq[j];
        eim[j] = -kPi * cw * eim[j];
      }
      // Phase 2 pi i sum c x_num / x_den.
      if (P.empty()) {
        for (const auto& dk : dens) {
          const std::size_t zi = zindex[dk.num];
          const double a = 2.0 * kPi * dk.c / dvals[p * K + static_cast<std::size_t>(&dk - dens.data())];
          const double zr = z0re[p * Z + zi], zim = z0im[p * Z + zi];
          const double* rwi = rw.data() + zi * kChunk;
          for (std::size_t j = 0; j < cnt; ++j) {
            ere[j] -= a * zim;
            eim[j] += a * (zr + rwi[j]);
          }
        }
      } else {
        for (std::size_t j = 0; j < cnt; ++j) {
          for (std::size_t k = 0; k < K; ++k) {
            xre[dens[k].den] = dvals[p * K + k];
            xim[dens[k].den] = 0.0;
          }
          for (std::size_t i = 0; i < Z; ++i) {
            xre[zpos[i]] = z0re[p * Z + i] + rw[i * kChunk + j];
            xim[zpos[i]] = z0im[p * Z + i];
          }
          for (std::size_t k = 0; k < s.phases.size(); ++k) {
            if (cfg.c[k] == 0.0) continue;
            const auto nrow = static_cast<std::size_t>(s.phases[k].num), drow = static_cast<std::size_t>(s.phases[k].den);
            double nr = 0, ni = 0, dr = 0, di = 0;
            for (std::size_t q = 0; q < S; ++q) {
              nr += P[nrow * S + q] * xre[q];
              ni += P[nrow * S + q] * xim[q];
              dr += P[drow * S + q] * xre[q];
              di += P[drow * S + q] * xim[q];
            }
            const std::complex<double> ph = 2.0 * kPi * cfg.c[k] * std::complex<double>(nr, ni) / std::complex<double>(dr, di);
            ere[j] -= ph.imag();
            eim[j] += ph.real();
          }
        }
      }
      if (constant_poly) {
        std::fill_n(pre.data(), cnt, constant_value);
        std::fill_n(pim.data(), cnt, 0.0);
      } else {
        kern.poly_eval_complex(pv, cre.data(), cim.data(), cnt, pre.data(), pim.data());
      }
      kern.cmul_exp(pre.data(), pim.data(), ere.data(), eim.data(), cnt, vre.data(), vim.data());
      for (std::size_t j = 0; j < cnt; ++j) {
        vre[j] *= wwt[j];
        vim[j] *= wwt[j];
      }
      chunk_re[p * nchunks + ch] = simd::pairwise_sum(vre.data(), cnt);
      chunk_im[p * nchunks + ch] = simd::pairwise_sum(vim.data(), cnt);
    }
  }
  std::vector<double> fre(ND), fim(ND), cre2(ND), cim2(ND);
  const double coarse_factor = std::pow(2.0, static_cast<double>(K));
  for (std::size_t p = 0; p < ND; ++p) {
    const double wt = jac * dweight[p];
    const double ir = simd::pairwise_sum(chunk_re.data() + p * nchunks, nchunks);
    const double ii = simd::pairwise_sum(chunk_im.data() + p * nchunks, nchunks);
    fre[p] = wt * ir;
    fim[p] = wt * ii;
    cre2[p] = coarse[p] ? coarse_factor * fre[p] : 0.0;
    cim2[p] = coarse[p] ? coarse_factor * fim[p] : 0.0;
  }
  WhittakerValue out;
  out.value = {simd::pairwise_sum(fre.data(), ND), simd::pairwise_sum(fim.data(), ND)};
  if (K > 0) {
    const std::complex<double> c2{simd::pairwise_sum(cre2.data(), ND), simd::pairwise_sum(cim2.data(), ND)};
    out.error_estimate = std::abs(c2 - out.value);
  }
  out.evaluations = evaluations;
  return out;
}

}  // namespace

WhittakerSlice loop_slice(int n, WhittakerSide side) {
  if (n < 2 || n > 3) throw InvalidArgument("loop Whittaker functionals are implemented for n = 2, 3");
  WhittakerSlice s;
  s.n = n;
  s.m = n * n;
  s.depth = 2;
  s.side = side;
  std::vector<int> pos(static_cast<std::size_t>(n * n), -1);
  for (int r = 1; r <= n; ++r) {
    for (int c = 1; c <= n; ++c) {
      if (r >= c + 2) continue;
      pos[static_cast<std::size_t>((r - 1) * n + c - 1)] = s.dim();
      s.vars.push_back(flat(n, 1, r, c));
    }
  }
  const int y = s.dim();
  s.vars.push_back(flat(n, 2, 1, n));
  auto at = [&](int r, int c) { return pos[static_cast<std::size_t>((r - 1) * n + c - 1)]; };
  for (int i = 1; i < n; ++i) {
    if (side == WhittakerSide::first) {
      s.phases.push_back({at(i, i), at(i + 1, i)});
    } else {
      s.phases.push_back({at(i + 1, i + 1), at(i + 1, i)});
    }
  }
  s.phases.push_back({side == WhittakerSide::first ? at(n, n) : at(1, 1), y});
  return s;
}

WhittakerSlice finite_slice(WhittakerSide side) {
  WhittakerSlice s;
  s.n = 3;
  s.m = 9;
  s.depth = 1;
  s.finite = true;
  s.side = side;
  std::vector<int> pos(9, -1);
  for (int r = 1; r <= 3; ++r) {
    for (int c = 1; c <= 3; ++c) {
      if (r == 3 && c == 1) continue;
      pos[static_cast<std::size_t>((r - 1) * 3 + c - 1)] = s.dim();
      s.vars.push_back(flat(3, 1, r, c));
    }
  }
  auto at = [&](int r, int c) { return pos[static_cast<std::size_t>((r - 1) * 3 + c - 1)]; };
  if (side == WhittakerSide::first) {
    s.phases = {{at(1, 1), at(2, 1)}, {at(2, 2), at(3, 2)}};
  } else {
    s.phases = {{at(2, 2), at(2, 1)}, {at(3, 3), at(3, 2)}};
  }
  return s;
}

void WhittakerConfig::validate(const WhittakerSlice& s) const {
  if (c.size() != s.phases.size())
    throw InvalidArgument("expected " + std::to_string(s.phases.size()) + " phase coefficients");
  for (double v : c)
    if (!(std::abs(v) <= 4.0)) throw InvalidArgument("phase coefficients must satisfy |c_i| <= 4");
  if (!(lambda > 0)) throw InvalidArgument("lambda must be positive");
  if (gauss_nodes < 0) throw InvalidArgument("gauss_nodes must be >= 0");
  quad.validate();
}

WhittakerValue whittaker_integral(const WhittakerSlice& s, const CompiledPoly& f, const WhittakerConfig& cfg,
                                  const std::vector<double>& M) {
  return integrate(s, f, cfg, M, {});
}

WhittakerValue phi_finite(const WhittakerConfig& cfg, const GaussPoly& f, WhittakerSide side) {
  return whittaker_integral(finite_slice(side), CompiledPoly(f, cfg.lambda), cfg);
}

WhittakerValue psi_loop(int n, const WhittakerConfig& cfg, const GaussPoly& f, WhittakerSide side) {
  return whittaker_integral(loop_slice(n, side), CompiledPoly(f, cfg.lambda), cfg);
}

UnipotentParams extract_params(const LoopMatrix& u, WhittakerSide side, bool finite) {
  const int n = u.n();
  if (!u.in_power_series()) throw InvalidArgument("unipotent element needs power series entries");
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      const Rational v = u(r, c).coeff(0);
      const bool wrong_side = side == WhittakerSide::first ? r > c : r < c;
      if ((r == c && v != 1) || (wrong_side && v != 0))
        throw InvalidArgument(side == WhittakerSide::first ? "u(0) must be upper unipotent"
                                                           : "v(0) must be lower unipotent");
    }
  }
  UnipotentParams p;
  for (int i = 0; i + 1 < n; ++i)
    p.values.push_back(side == WhittakerSide::first ? u(i, i + 1).coeff(0) : u(i + 1, i).coeff(0));
  if (!finite) p.values.push_back(side == WhittakerSide::first ? u(n - 1, 0).coeff(1) : u(0, n - 1).coeff(1));
  return p;
}

std::complex<double> character_eval(const UnipotentParams& p, const std::vector<double>& c) {
  if (c.size() != p.values.size()) throw InvalidArgument("character needs one coefficient per parameter");
  double acc = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) acc += c[i] * to_double(p.values[i]);
  return std::polar(1.0, -2.0 * kPi * acc);
}

std::vector<double> unipotent_transform(const LoopMatrix& u, WhittakerSide side, int depth) {
  const int n = u.n(), m = n * n;
  const std::size_t Fd = static_cast<std::size_t>(m * depth);
  std::vector<double> T(Fd * Fd, 0.0);
  for (int d = 1; d <= depth; ++d) {
    for (int e = 0; d + e <= depth; ++e) {
      for (int r = 1; r <= n; ++r) {
        for (int c = 1; c <= n; ++c) {
          const auto row = static_cast<std::size_t>(flat(n, d, r, c));
          for (int s = 1; s <= n; ++s) {
            // first: sum_s u_rs x_sc; second: sum_s x_rs u_cs.
            const Rational q = side == WhittakerSide::first ? u(r - 1, s - 1).coeff(e) : u(c - 1, s - 1).coeff(e);
            if (q == 0) continue;
            const auto col = static_cast<std::size_t>(side == WhittakerSide::first ? flat(n, d + e, s, c)
                                                                                    : flat(n, d + e, r, s));
            T[row * Fd + col] += to_double(q);
          }
        }
      }
    }
  }
  return T;
}

CovarianceResult whittaker_covariance(const LoopMatrix& u, const WhittakerConfig& cfg, const GaussPoly& f,
                                      WhittakerSide side, bool finite) {
  const WhittakerSlice s = finite ? finite_slice(side) : loop_slice(u.n(), side);
  if (finite && u.n() != 3) throw InvalidArgument("the finite case is GL_3");
  const UnipotentParams params = extract_params(u, side, finite);
  const std::vector<double> T = unipotent_transform(u, side, s.depth);
  const std::size_t Fd = static_cast<std::size_t>(s.full_dims()), S = static_cast<std::size_t>(s.dim());
  // The substitution must preserve the slice; Ts is its restriction.
  std::vector<bool> in_slice(Fd, false);
  for (int v : s.vars) in_slice[static_cast<std::size_t>(v)] = true;
  Mat Ts(S * S, 0.0);
  for (std::size_t j = 0; j < S; ++j) {
    const auto col = static_cast<std::size_t>(s.vars[j]);
    for (std::size_t r = 0; r < Fd; ++r) {
      if (T[r * Fd + col] != 0.0 && !in_slice[r]) throw InvalidArgument("substitution leaves the integration slice");
    }
    for (std::size_t i = 0; i < S; ++i) Ts[i * S + j] = T[static_cast<std::size_t>(s.vars[i]) * Fd + col];
  }
  if (std::abs(determinant(Ts, S) - 1.0) > 1e-12) throw InvalidArgument("substitution has Jacobian != 1 on the slice");
  const CompiledPoly F(f, cfg.lambda);
  const WhittakerValue lhs = integrate(s, F, cfg, T, {});
  const WhittakerValue base = integrate(s, F, cfg, {}, {});
  const WhittakerValue pulled = integrate(s, F, cfg, {}, invert(Ts, S));
  const std::complex<double> chi = character_eval(params, cfg.c);
  CovarianceResult r;
  r.lhs = lhs.value;
  r.rhs = chi * base.value;
  r.relerr = std::abs(r.lhs - r.rhs) / std::abs(r.rhs);
  r.change_of_variable_relerr = std::abs(pulled.value - r.rhs) / std::abs(r.rhs);
  r.lhs_error_estimate = lhs.error_estimate;
  r.rhs_error_estimate = base.error_estimate;
  r.rhs_near_zero = !(std::abs(r.rhs) > 10.0 * base.error_estimate) || std::abs(r.rhs) < 1e-300;
  return r;
}

}  // namespace loopfock
