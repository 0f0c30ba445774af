// Runtime ISA selection.  Default preference: AVX2 when the build carries the
// AVX2 translation unit and the CPU reports avx2+fma; otherwise scalar.  The
// JCM_KERNELS environment variable ("scalar"/"avx2") overrides the default at
// startup, set_isa() at any time.

#include "jcm/kernels.hpp"
#include "jcm/errors.hpp"
#include "table.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace jcm::kernels {
namespace detail {

#ifndef JCM_WITH_AVX2
const Table& avx2_table() { return scalar_table(); }   // never selected
bool have_avx2_build() { return false; }
#endif

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa initial_isa() {
    if (const char* env = std::getenv("JCM_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
        if (std::strcmp(env, "avx2") == 0 && isa_available(Isa::avx2))
            return Isa::avx2;
        // unknown or unavailable value: fall through to autodetect
    }
    return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

const Table& table() {
    return current().load(std::memory_order_relaxed) == Isa::avx2
               ? avx2_table()
               : scalar_table();
}

} // namespace
} // namespace detail

const char* isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "?";
}

bool isa_available(Isa isa) {
    if (isa == Isa::scalar) return true;
    return detail::have_avx2_build() && detail::cpu_has_avx2();
}

Isa active_isa() { return detail::current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
    if (!isa_available(isa))
        throw UnsupportedRegime(std::string("kernel ISA not available: ") +
                                isa_name(isa));
    detail::current().store(isa, std::memory_order_relaxed);
}

void sincos_batch(const double* x, double* s, double* c, std::size_t n) {
    detail::table().sincos_batch(x, s, c, n);
}

void evolve_amplitudes(std::size_t n, double T, double eta_half,
                       const double* gamma, const double* kappa,
                       const double* cr, const double* ci,
                       double* er, double* ei, double* gr, double* gi) {
    detail::table().evolve_amplitudes(n, T, eta_half, gamma, kappa, cr, ci,
                                      er, ei, gr, gi);
}

double weighted_ab_cos_sum(std::size_t n, double t, const double* w,
                           const double* a, const double* b, const double* x) {
    return detail::table().weighted_ab_cos_sum(n, t, w, a, b, x);
}

double weighted_cos_sum(std::size_t n, double t, const double* w,
                        const double* x) {
    return detail::table().weighted_cos_sum(n, t, w, x);
}

double two_frequency_sum(std::size_t n, double t, const double* w,
                         const double* b, const double* xl, const double* xh) {
    return detail::table().two_frequency_sum(n, t, w, b, xl, xh);
}

std::complex<double> weighted_conj_dot(std::size_t n, const double* w,
                                       const double* xr, const double* xi,
                                       const double* yr, const double* yi) {
    return detail::table().weighted_conj_dot(n, w, xr, xi, yr, yi);
}

double weighted_norm_sum(std::size_t n, const double* w,
                         const double* xr, const double* xi) {
    return detail::table().weighted_norm_sum(n, w, xr, xi);
}

void rk4_step(std::size_t n, double h, double eta_half, const double* kappa,
              double* er, double* ei, double* gr, double* gi) {
    detail::table().rk4_step(n, h, eta_half, kappa, er, ei, gr, gi);
}

} // namespace jcm::kernels
