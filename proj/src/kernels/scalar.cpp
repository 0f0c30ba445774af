// Scalar reference implementations of all kernels.  These are the semantics
// the vector variants are tested against; keep them boring.

#include "table.hpp"
#include "scalar_body.hpp"

#include <cmath>

namespace jcm::kernels::detail {
namespace {

void sincos_batch_s(const double* x, double* s, double* c, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        s[i] = std::sin(x[i]);
        c[i] = std::cos(x[i]);
    }
}

void evolve_amplitudes_s(std::size_t n, double T, double eta_half,
                         const double* gamma, const double* kappa,
                         const double* cr, const double* ci,
                         double* er, double* ei, double* gr, double* gi) {
    for (std::size_t i = 0; i < n; ++i)
        evolve_one(T, eta_half, gamma[i], kappa[i], cr[i], ci[i],
                   er[i], ei[i], gr[i], gi[i]);
}

double weighted_ab_cos_sum_s(std::size_t n, double t, const double* w,
                             const double* a, const double* b, const double* x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += w[i] * (a[i] + b[i] * std::cos(t * x[i]));
    return acc;
}

double weighted_cos_sum_s(std::size_t n, double t, const double* w,
                          const double* x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += w[i] * std::cos(t * x[i]);
    return acc;
}

double two_frequency_sum_s(std::size_t n, double t, const double* w,
                           const double* b, const double* xl, const double* xh) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double cl = std::cos(t * xl[i]), sl = std::sin(t * xl[i]);
        const double ch = std::cos(t * xh[i]), sh = std::sin(t * xh[i]);
        acc += w[i] * (ch * cl + b[i] * sh * sl);
    }
    return acc;
}

std::complex<double> weighted_conj_dot_s(std::size_t n, const double* w,
                                         const double* xr, const double* xi,
                                         const double* yr, const double* yi) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        re += w[i] * (xr[i] * yr[i] + xi[i] * yi[i]);
        im += w[i] * (xr[i] * yi[i] - xi[i] * yr[i]);
    }
    return {re, im};
}

double weighted_norm_sum_s(std::size_t n, const double* w,
                           const double* xr, const double* xi) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += w[i] * (xr[i] * xr[i] + xi[i] * xi[i]);
    return acc;
}

void rk4_step_s(std::size_t n, double h, double eta_half, const double* kappa,
                double* er, double* ei, double* gr, double* gi) {
    for (std::size_t i = 0; i < n; ++i)
        rk4_one(h, eta_half, kappa[i], er[i], ei[i], gr[i], gi[i]);
}

} // namespace

const Table& scalar_table() {
    static const Table t = {
        sincos_batch_s,
        evolve_amplitudes_s,
        weighted_ab_cos_sum_s,
        weighted_cos_sum_s,
        two_frequency_sum_s,
        weighted_conj_dot_s,
        weighted_norm_sum_s,
        rk4_step_s,
    };
    return t;
}

} // namespace jcm::kernels::detail
