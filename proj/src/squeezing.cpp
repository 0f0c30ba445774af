#include "jcm/squeezing.hpp"

#include "jcm/errors.hpp"
#include "jcm/moments.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace jcm {

SqueezingRecord squeezing_factors(const JointState& s, int N) {
    const MomentSet ms = moment_set(s, N);
    SqueezingRecord r;
    r.T = s.T;
    r.N = N;
    const double re_aN = ms.a_N.real(), im_aN = ms.a_N.imag();
    r.S = ms.adagN_aN + ms.a_2N.real() - 2.0 * re_aN * re_aN;
    r.Q = ms.adagN_aN - ms.a_2N.real() - 2.0 * im_aN * im_aN;
    r.commutator = ms.commutator_N;
    r.uncertainty_product = r.dx2() * r.dy2();
    return r;
}

double rescale_parameter_b(Nonlinearity kind) {
    return kind == Nonlinearity::standard ? 2.0 / 3.0 : 0.5;
}

RescaledSqueezing::RescaledSqueezing(TruncatedFieldState field,
                                     const ModelParams& params, int N)
    : prop_(std::move(field), params), N_(N) {
    if (N < 1) throw InvalidParameter("squeezing order must be >= 1");
    const double nbar = mean_photon_number(prop_.field());
    if (nbar <= 0.0)
        throw DegenerateInput(
            "rescaled squeezing undefined for zero mean photon number");
    b_ = rescale_parameter_b(params.kind);
    nbar_pow_ = std::pow(nbar, double(N));
}

double RescaledSqueezing::at(double T) const {
    const SqueezingRecord r = squeezing_factors(prop_.at(b_ / N_ * T), N_);
    return (nbar_pow_ - r.Q) / nbar_pow_;
}

SqueezingRecord RescaledSqueezing::record(double T) const {
    SqueezingRecord r = squeezing_factors(prop_.at(b_ / N_ * T), N_);
    r.V = (nbar_pow_ - r.Q) / nbar_pow_;
    r.T = T;
    return r;
}

double rescaled_squeezing(const TruncatedFieldState& field,
                          const ModelParams& params, int N, double T) {
    return RescaledSqueezing(field, params, N).at(T);
}

double mu1_exact(const ModelParams& params, int n) {
    validate(params);
    if (params.eta != 0.0)
        throw UnsupportedRegime("mu_1 is defined on resonance (eta = 0) only");
    if (n < 0) throw InvalidParameter("photon number must be >= 0");
    return (rabi_gamma(params, n + 2) - rabi_gamma(params, n)) /
           (2.0 * double(n + 1));
}

double mu1_asymptotic(const ModelParams& params, double n_bar) {
    validate(params);
    if (params.eta != 0.0)
        throw UnsupportedRegime("mu_1 is defined on resonance (eta = 0) only");
    if (params.kind != Nonlinearity::intensity_dependent)
        throw UnsupportedRegime(
            "asymptotic mu_1 derived for the intensity-dependent coupling");
    if (!(n_bar > 0.0))
        throw InvalidParameter("mean photon number must be positive");
    const double m = params.m;
    return 0.25 * (2.0 * (m + 1.0) * std::pow(n_bar, 0.5 * (m - 3.0)) +
                   (3.0 * m * m + 7.0 * m + 6.0) *
                       std::pow(n_bar, 0.5 * (m - 5.0)) +
                   ((m + 2.0) * (m + 2.0) * (m + 1.0) - 2.0 * m) *
                       std::pow(n_bar, 0.5 * (m - 7.0)));
}

double intensity_inequality_lhs(const ModelParams& params, double n_bar) {
    validate(params);
    if (params.kind != Nonlinearity::intensity_dependent)
        throw UnsupportedRegime(
            "fidelity inequality derived for the intensity-dependent coupling");
    if (!(n_bar > 0.0))
        throw InvalidParameter("mean photon number must be positive");
    const double m = params.m;
    return (3.0 * m * m + 7.0 * m + 6.0) * std::pow(n_bar, 0.5 * (m - 5.0));
}

double intensity_condition(const ModelParams& params, int N) {
    validate(params);
    if (params.m != 3)
        throw UnsupportedRegime(
            "readout-fidelity thresholds are tabulated for m = 3 only");
    if (N != 1 && N != 2)
        throw UnsupportedRegime(
            "readout-fidelity thresholds are tabulated for N in {1, 2}");
    if (params.kind == Nonlinearity::intensity_dependent)
        return N == 1 ? 54.0 : 226.0;
    return N == 1 ? 18.0 : 144.0;
}

double inversion_from_squeezing(const TruncatedFieldState& field,
                                const ModelParams& params, double T) {
    validate(params);
    if (params.m != 1)
        throw UnsupportedRegime(
            "inversion readout holds for single-photon transitions (m = 1)");
    const Propagator prop(field, params);

    constexpr double kMomentTol = 1e-12;
    for (const double probe : {0.0, std::numbers::pi / 4.0}) {
        const JointState s = prop.at(probe);
        for (const int k : {1, 2}) {
            const double mag = std::abs(field_moment(s, k));
            if (mag > kMomentTol)
                throw UnsupportedState(
                    "initial state violates the vanishing-moment rule: |<a^" +
                    std::to_string(k) + ">| = " + std::to_string(mag) +
                    " at T = " + std::to_string(probe));
        }
    }

    const double nbar0 = mean_photon_number(field);
    const double s1 = squeezing_factors(prop.at(T), 1).S;
    return 2.0 * nbar0 + 1.0 - 2.0 * s1;
}

} // namespace jcm
