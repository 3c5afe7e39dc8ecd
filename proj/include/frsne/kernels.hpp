#pragma once

// Data-parallel inner loops of the radial integrator.
//
// Every kernel exists as a portable scalar reference and, on x86-64, as an
// AVX2 variant selected at runtime. Pointwise kernels are bit-identical
// across variants; reductions differ only by summation order.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace frsne::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// Coefficients of du/dt = i kin (u[j-1] - 2u[j] + u[j+1])
///                         + (-(s (V_j - vmean)) - i c V_j) u[j].
/// Ghost values are odd reflections, u[-1] = -u[0] and u[n] = -u[n-1],
/// which place the Dirichlet nodes at r = 0 and r = r_max on the staggered grid.
struct RhsCoefficients {
  double kin = 0.0;       // hbar / (2 M h^2)
  double unitary = 0.0;   // cos(alpha) / hbar
  double friction = 0.0;  // sin(alpha) / hbar
  double vmean = 0.0;     // <V>
};

struct KernelTable {
  Isa isa;

  /// out[j] = |u[j]|^2
  void (*abs_sq)(const cplx* u, double* out, std::size_t n);

  /// v[j] = scale * (inner[j] * inv_r[j] + outer[j])
  void (*combine_potential)(const double* inner, const double* outer, const double* inv_r,
                            double scale, double* v, std::size_t n);

  /// sum_j a[j] * b[j]
  double (*dot)(const double* a, const double* b, std::size_t n);

  /// sum_j |u[j]|^2
  double (*sum_abs_sq)(const cplx* u, std::size_t n);

  /// Right-hand side of the radial equation for u = r psi; n >= 2.
  void (*radial_rhs)(const cplx* u, const double* v, const RhsCoefficients& c, cplx* out,
                     std::size_t n);

  /// acc[j] += w_acc * k[j];  stage[j] = base[j] + w_stage * k[j]
  void (*rk_stage)(cplx* acc, cplx* stage, const cplx* base, const cplx* k, double w_acc,
                   double w_stage, std::size_t n);

  /// y[j] += w * x[j]
  void (*axpy)(cplx* y, const cplx* x, double w, std::size_t n);

  /// u[j] *= s
  void (*scale)(cplx* u, double s, std::size_t n);
};

const KernelTable& scalar_table();

/// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_table();

/// The table used by the integrator. Defaults to the widest supported ISA;
/// the FRSNE_ISA environment variable ("scalar" or "avx2") overrides it.
const KernelTable& active();

/// Overrides the active table; throws if the ISA is unavailable.
void select(Isa isa);

namespace detail {
const KernelTable* compiled_avx2_table();
} // namespace detail

} // namespace frsne::kernels
