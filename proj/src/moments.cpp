#include "jcm/moments.hpp"

#include "jcm/errors.hpp"
#include "jcm/kernels.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace jcm {
namespace {

// Ladder weights as direct products: orders stay small (k <= ~10), so the
// product is exact to a few ulp and cheaper than the log-Gamma route.
double lowering_weight(int n, int k) {          // sqrt((n+k)!/n!)
    double p = 1.0;
    for (int j = 1; j <= k; ++j) p *= double(n + j);
    return std::sqrt(p);
}

double falling_factorial(int n, int N) {        // n!/(n-N)!, 0 below N
    if (n < N) return 0.0;
    double p = 1.0;
    for (int j = 0; j < N; ++j) p *= double(n - j);
    return p;
}

double rising_factorial(int n, int N) {         // (n+N)!/n!
    double p = 1.0;
    for (int j = 1; j <= N; ++j) p *= double(n + j);
    return p;
}

void check_order(int k) {
    if (k < 1) throw InvalidParameter("moment order must be >= 1");
}

void check_headroom(const JointState& s, int k) {
    const int headroom = int(s.size()) - 1 - s.n_star;
    if (headroom < k)
        throw HeadroomError("moment of order " + std::to_string(k) +
                            " needs headroom >= " + std::to_string(k) +
                            ", state has " + std::to_string(headroom));
}

} // namespace

std::complex<double> field_moment(const JointState& s, int k) {
    check_order(k);
    check_headroom(s, k);
    const std::size_t len = s.size();
    const std::size_t count = len - std::size_t(k);
    std::vector<double> we(count), wg(count);
    for (std::size_t n = 0; n < count; ++n) {
        we[n] = lowering_weight(int(n), k);
        wg[n] = lowering_weight(int(n) + s.m, k);
    }
    const auto up = kernels::weighted_conj_dot(
        count, we.data(), s.er.data(), s.ei.data(), s.er.data() + k,
        s.ei.data() + k);
    const auto down = kernels::weighted_conj_dot(
        count, wg.data(), s.gr.data(), s.gi.data(), s.gr.data() + k,
        s.gi.data() + k);
    return up + down;
}

double number_moment(const JointState& s, int N) {
    check_order(N);
    const std::size_t len = s.size();
    std::vector<double> we(len), wg(len);
    for (std::size_t n = 0; n < len; ++n) {
        we[n] = falling_factorial(int(n), N);
        wg[n] = falling_factorial(int(n) + s.m, N);
    }
    return kernels::weighted_norm_sum(len, we.data(), s.er.data(),
                                      s.ei.data()) +
           kernels::weighted_norm_sum(len, wg.data(), s.gr.data(),
                                      s.gi.data());
}

double antinormal_number_moment(const JointState& s, int N) {
    check_order(N);
    const std::size_t len = s.size();
    std::vector<double> we(len), wg(len);
    for (std::size_t n = 0; n < len; ++n) {
        we[n] = rising_factorial(int(n), N);
        wg[n] = rising_factorial(int(n) + s.m, N);
    }
    return kernels::weighted_norm_sum(len, we.data(), s.er.data(),
                                      s.ei.data()) +
           kernels::weighted_norm_sum(len, wg.data(), s.gr.data(),
                                      s.gi.data());
}

double commutator_expectation(const JointState& s, int N) {
    return antinormal_number_moment(s, N) - number_moment(s, N);
}

MomentSet moment_set(const JointState& s, int N) {
    check_order(N);
    check_headroom(s, 2 * N);
    MomentSet ms;
    ms.N = N;
    ms.a_N = field_moment(s, N);
    ms.a_2N = field_moment(s, 2 * N);
    ms.adagN_aN = number_moment(s, N);
    ms.commutator_N = commutator_expectation(s, N);
    return ms;
}

namespace {

void check_closed_form_inputs(const TruncatedFieldState& field,
                              const ModelParams& params, double T) {
    validate(params);
    if (!std::isfinite(T)) throw InvalidParameter("time must be finite");
    if (!field.is_coherent())
        throw UnsupportedState(
            "closed-form field expressions require a coherent input state");
}

} // namespace

double re_a2_closed_form(const TruncatedFieldState& field,
                         const ModelParams& params, double T) {
    check_closed_form_inputs(field, params, T);
    if (field.c.size() < 3) return 0.0;   // vacuum-sized basis: <a^2> = 0
    const std::size_t count = field.c.size() - 2;
    const RabiSpectrum spec = rabi_spectrum(params, field.n_max());
    const double a2 = field.alpha * field.alpha;
    const double eta_sq_4 = 0.25 * params.eta * params.eta;

    std::vector<double> w(count), b(count);
    for (std::size_t n = 0; n < count; ++n) {
        double ratio = 1.0;   // (n+m+2)!/(n+2)!
        for (int j = int(n) + 3; j <= int(n) + params.m + 2; ++j)
            ratio *= double(j);
        const double wn = ratio *
                          intensity_function(params, double(int(n) + params.m)) *
                          intensity_function(params,
                                             double(int(n) + params.m + 2));
        w[n] = a2 * std::norm(field.c[n]);
        b[n] = (eta_sq_4 + wn) / (spec.gamma[n + 2] * spec.gamma[n]);
    }
    return kernels::two_frequency_sum(count, T, w.data(), b.data(),
                                      spec.gamma.data(),
                                      spec.gamma.data() + 2);
}

double harmonic_approx_a2(const TruncatedFieldState& field,
                          const ModelParams& params, double T) {
    check_closed_form_inputs(field, params, T);
    if (field.c.size() < 3) return 0.0;
    const std::size_t count = field.c.size() - 2;
    const RabiSpectrum spec = rabi_spectrum(params, field.n_max());
    std::vector<double> w(count), omega(count);
    for (std::size_t n = 0; n < count; ++n) {
        w[n] = std::norm(field.c[n]);
        omega[n] = spec.gamma[n + 2] - spec.gamma[n];
    }
    return mean_photon_number(field) *
           kernels::weighted_cos_sum(count, T, w.data(), omega.data());
}

} // namespace jcm
