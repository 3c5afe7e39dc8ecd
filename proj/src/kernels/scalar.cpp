#include "frsne/kernels.hpp"

namespace frsne::kernels {
namespace {

// Complex arithmetic is spelled out on real/imag parts so that the AVX2
// variant can reproduce the exact same operation sequence.

void abs_sq(const cplx* u, double* out, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double re = u[j].real();
    const double im = u[j].imag();
    out[j] = re * re + im * im;
  }
}

void combine_potential(const double* inner, const double* outer, const double* inv_r, double scale,
                       double* v, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) v[j] = scale * (inner[j] * inv_r[j] + outer[j]);
}

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) acc += a[j] * b[j];
  return acc;
}

double sum_abs_sq(const cplx* u, std::size_t n) {
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double re = u[j].real();
    const double im = u[j].imag();
    acc += re * re + im * im;
  }
  return acc;
}

inline cplx rhs_point(cplx left, cplx mid, cplx right, double v, const RhsCoefficients& c) {
  // lap = left - 2 mid + right
  const double lap_re = (left.real() + right.real()) - (mid.real() + mid.real());
  const double lap_im = (left.imag() + right.imag()) - (mid.imag() + mid.imag());
  const double a = -(c.friction * (v - c.vmean)); // real factor
  const double b = -(c.unitary * v);              // imaginary factor
  // i kin lap + (a + i b) mid
  const double re = (a * mid.real() - b * mid.imag()) - c.kin * lap_im;
  const double im = (a * mid.imag() + b * mid.real()) + c.kin * lap_re;
  return {re, im};
}

void radial_rhs(const cplx* u, const double* v, const RhsCoefficients& c, cplx* out, std::size_t n) {
  out[0] = rhs_point(-u[0], u[0], u[1], v[0], c);
  for (std::size_t j = 1; j + 1 < n; ++j) out[j] = rhs_point(u[j - 1], u[j], u[j + 1], v[j], c);
  out[n - 1] = rhs_point(u[n - 2], u[n - 1], -u[n - 1], v[n - 1], c);
}

void rk_stage(cplx* acc, cplx* stage, const cplx* base, const cplx* k, double w_acc, double w_stage,
              std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    acc[j] = {acc[j].real() + w_acc * k[j].real(), acc[j].imag() + w_acc * k[j].imag()};
    stage[j] = {base[j].real() + w_stage * k[j].real(), base[j].imag() + w_stage * k[j].imag()};
  }
}

void axpy(cplx* y, const cplx* x, double w, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j)
    y[j] = {y[j].real() + w * x[j].real(), y[j].imag() + w * x[j].imag()};
}

void scale(cplx* u, double s, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) u[j] = {u[j].real() * s, u[j].imag() * s};
}

constexpr KernelTable table{Isa::scalar, abs_sq, combine_potential, dot,  sum_abs_sq,
                            radial_rhs,  rk_stage, axpy,             scale};

} // namespace

const KernelTable& scalar_table() { return table; }

} // namespace frsne::kernels
