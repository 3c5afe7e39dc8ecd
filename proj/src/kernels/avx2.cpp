// AVX2 variants of the integrator kernels. Compiled with -mavx2 only; the
// table is handed out by dispatch.cpp after a runtime CPU check.
//
// Complex arrays are interleaved (re, im), so one __m256d holds two samples.
// FMA is deliberately not used: every pointwise result must match the scalar
// reference bit-for-bit.

#include "frsne/kernels.hpp"

#include <immintrin.h>

namespace frsne::kernels {
namespace {

inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d x) { _mm256_storeu_pd(reinterpret_cast<double*>(p), x); }

// [x0, x1] -> [x0, x0, x1, x1]
inline __m256d spread_pair(const double* p) {
  return _mm256_permute4x64_pd(_mm256_castpd128_pd256(_mm_loadu_pd(p)), 0b01010000);
}

inline double hsum(__m256d x) {
  const __m128d lo = _mm256_castpd256_pd128(x);
  const __m128d hi = _mm256_extractf128_pd(x, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void abs_sq(const cplx* u, double* out, std::size_t n) {
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d a = load2(u + j);
    const __m256d b = load2(u + j + 2);
    // [|u0|^2, |u2|^2, |u1|^2, |u3|^2]
    const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
    _mm256_storeu_pd(out + j, _mm256_permute4x64_pd(h, 0b11011000));
  }
  for (; j < n; ++j) {
    const double re = u[j].real();
    const double im = u[j].imag();
    out[j] = re * re + im * im;
  }
}

void combine_potential(const double* inner, const double* outer, const double* inv_r, double scale,
                       double* v, std::size_t n) {
  const __m256d s = _mm256_set1_pd(scale);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d t = _mm256_add_pd(_mm256_mul_pd(_mm256_loadu_pd(inner + j), _mm256_loadu_pd(inv_r + j)),
                                    _mm256_loadu_pd(outer + j));
    _mm256_storeu_pd(v + j, _mm256_mul_pd(s, t));
  }
  for (; j < n; ++j) v[j] = scale * (inner[j] * inv_r[j] + outer[j]);
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4)
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(a + j), _mm256_loadu_pd(b + j)));
  double s = hsum(acc);
  for (; j < n; ++j) s += a[j] * b[j];
  return s;
}

double sum_abs_sq(const cplx* u, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d a = load2(u + j);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(a, a));
  }
  double s = hsum(acc);
  for (; j < n; ++j) {
    const double re = u[j].real();
    const double im = u[j].imag();
    s += re * re + im * im;
  }
  return s;
}

inline cplx rhs_point(cplx left, cplx mid, cplx right, double v, const RhsCoefficients& c) {
  const double lap_re = (left.real() + right.real()) - (mid.real() + mid.real());
  const double lap_im = (left.imag() + right.imag()) - (mid.imag() + mid.imag());
  const double a = -(c.friction * (v - c.vmean));
  const double b = -(c.unitary * v);
  const double re = (a * mid.real() - b * mid.imag()) - c.kin * lap_im;
  const double im = (a * mid.imag() + b * mid.real()) + c.kin * lap_re;
  return {re, im};
}

void radial_rhs(const cplx* u, const double* v, const RhsCoefficients& c, cplx* out, std::size_t n) {
  out[0] = rhs_point(-u[0], u[0], u[1], v[0], c);

  const __m256d kin = _mm256_set1_pd(c.kin);
  const __m256d fric = _mm256_set1_pd(c.friction);
  const __m256d unit = _mm256_set1_pd(c.unitary);
  const __m256d vmean = _mm256_set1_pd(c.vmean);
  const __m256d sign = _mm256_set1_pd(-0.0);

  std::size_t j = 1;
  for (; j + 3 <= n; j += 2) { // interior pairs (j, j+1) with j + 2 <= n - 1
    const __m256d l = load2(u + j - 1);
    const __m256d m = load2(u + j);
    const __m256d r = load2(u + j + 1);
    const __m256d vv = spread_pair(v + j);

    const __m256d lap = _mm256_sub_pd(_mm256_add_pd(l, r), _mm256_add_pd(m, m));
    const __m256d a = _mm256_xor_pd(_mm256_mul_pd(fric, _mm256_sub_pd(vv, vmean)), sign);
    const __m256d b = _mm256_xor_pd(_mm256_mul_pd(unit, vv), sign);

    const __m256d am = _mm256_mul_pd(a, m);                                // [a re, a im]
    const __m256d bm = _mm256_mul_pd(b, _mm256_permute_pd(m, 0b0101));     // [b im, b re]
    const __m256d kl = _mm256_mul_pd(kin, _mm256_permute_pd(lap, 0b0101)); // [k lap_im, k lap_re]
    store2(out + j, _mm256_addsub_pd(_mm256_addsub_pd(am, bm), kl));
  }
  for (; j + 1 < n; ++j) out[j] = rhs_point(u[j - 1], u[j], u[j + 1], v[j], c);

  out[n - 1] = rhs_point(u[n - 2], u[n - 1], -u[n - 1], v[n - 1], c);
}

void rk_stage(cplx* acc, cplx* stage, const cplx* base, const cplx* k, double w_acc, double w_stage,
              std::size_t n) {
  const __m256d wa = _mm256_set1_pd(w_acc);
  const __m256d ws = _mm256_set1_pd(w_stage);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d kk = load2(k + j);
    store2(acc + j, _mm256_add_pd(load2(acc + j), _mm256_mul_pd(wa, kk)));
    store2(stage + j, _mm256_add_pd(load2(base + j), _mm256_mul_pd(ws, kk)));
  }
  for (; j < n; ++j) {
    acc[j] = {acc[j].real() + w_acc * k[j].real(), acc[j].imag() + w_acc * k[j].imag()};
    stage[j] = {base[j].real() + w_stage * k[j].real(), base[j].imag() + w_stage * k[j].imag()};
  }
}

void axpy(cplx* y, const cplx* x, double w, std::size_t n) {
  const __m256d ww = _mm256_set1_pd(w);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) store2(y + j, _mm256_add_pd(load2(y + j), _mm256_mul_pd(ww, load2(x + j))));
  for (; j < n; ++j) y[j] = {y[j].real() + w * x[j].real(), y[j].imag() + w * x[j].imag()};
}

void scale(cplx* u, double s, std::size_t n) {
  const __m256d ss = _mm256_set1_pd(s);
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) store2(u + j, _mm256_mul_pd(load2(u + j), ss));
  for (; j < n; ++j) u[j] = {u[j].real() * s, u[j].imag() * s};
}

constexpr KernelTable table{Isa::avx2, abs_sq,   combine_potential, dot,  sum_abs_sq,
                            radial_rhs, rk_stage, axpy,              scale};

} // namespace

namespace detail {
const KernelTable* compiled_avx2_table() { return &table; }
} // namespace detail

} // namespace frsne::kernels
