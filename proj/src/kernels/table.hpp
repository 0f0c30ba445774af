#pragma once
// Internal dispatch table: one function pointer per kernel entry point.

#include <complex>
#include <cstddef>

namespace jcm::kernels::detail {

struct Table {
    void (*sincos_batch)(const double*, double*, double*, std::size_t);
    void (*evolve_amplitudes)(std::size_t, double, double, const double*,
                              const double*, const double*, const double*,
                              double*, double*, double*, double*);
    double (*weighted_ab_cos_sum)(std::size_t, double, const double*,
                                  const double*, const double*, const double*);
    double (*weighted_cos_sum)(std::size_t, double, const double*, const double*);
    double (*two_frequency_sum)(std::size_t, double, const double*,
                                const double*, const double*, const double*);
    std::complex<double> (*weighted_conj_dot)(std::size_t, const double*,
                                              const double*, const double*,
                                              const double*, const double*);
    double (*weighted_norm_sum)(std::size_t, const double*, const double*,
                                const double*);
    void (*rk4_step)(std::size_t, double, double, const double*,
                     double*, double*, double*, double*);
};

const Table& scalar_table();
const Table& avx2_table();   // defined only when compiled in; see dispatch.cpp

bool have_avx2_build();      // true when the AVX2 translation unit is present

} // namespace jcm::kernels::detail
