#pragma once
// Data-parallel inner loops shared by the evolution and moment engines.
//
// Every kernel has a scalar reference implementation and, on x86-64 with
// AVX2+FMA, a vectorized variant.  The active implementation is selected at
// first use from cpuid, and can be overridden either programmatically with
// set_isa() or through the JCM_KERNELS environment variable ("scalar",
// "avx2").  Within one process + ISA the kernels are deterministic: fixed
// iteration order, fixed reduction tree.

#include <complex>
#include <cstddef>

namespace jcm::kernels {

enum class Isa { scalar, avx2 };

const char* isa_name(Isa);
bool isa_available(Isa);
Isa active_isa();
void set_isa(Isa);   // throws UnsupportedRegime if the ISA is not available here

// Elementwise s[i] = sin(x[i]), c[i] = cos(x[i]).  Arguments must be finite.
void sincos_batch(const double* x, double* s, double* c, std::size_t n);

// Dressed-amplitude evaluation at scaled time T:
//   e[i] = c[i] * (cos(T*gamma[i]) - i*(eta/2)*sin(T*gamma[i])/gamma[i])
//   g[i] = c[i] * (-i*kappa[i]*sin(T*gamma[i])/gamma[i])
// with c[i] = cr[i] + i*ci[i] split into (er, ei) and (gr, gi).
void evolve_amplitudes(std::size_t n, double T, double eta_half,
                       const double* gamma, const double* kappa,
                       const double* cr, const double* ci,
                       double* er, double* ei, double* gr, double* gi);

// sum_i w[i] * (a[i] + b[i] * cos(t * x[i]))
double weighted_ab_cos_sum(std::size_t n, double t, const double* w,
                           const double* a, const double* b, const double* x);

// sum_i w[i] * cos(t * x[i])
double weighted_cos_sum(std::size_t n, double t, const double* w,
                        const double* x);

// sum_i w[i] * (cos(t*xh[i])*cos(t*xl[i]) + b[i]*sin(t*xh[i])*sin(t*xl[i]))
double two_frequency_sum(std::size_t n, double t, const double* w,
                         const double* b, const double* xl, const double* xh);

// sum_i w[i] * conj(x[i]) * y[i], split complex
std::complex<double> weighted_conj_dot(std::size_t n, const double* w,
                                       const double* xr, const double* xi,
                                       const double* yr, const double* yi);

// sum_i w[i] * (xr[i]^2 + xi[i]^2)
double weighted_norm_sum(std::size_t n, const double* w,
                         const double* xr, const double* xi);

// One fixed-step classical RK4 update, in place, of the decoupled blocks
//   d/dT e_n = -i*(eta/2 * e_n + kappa_n * g_n)
//   d/dT g_n = -i*(kappa_n * e_n - eta/2 * g_n)
void rk4_step(std::size_t n, double h, double eta_half, const double* kappa,
              double* er, double* ei, double* gr, double* gi);

} // namespace jcm::kernels
