#pragma once
// Nth-order quadrature squeezing factors, the rescaled factor V_N whose
// oscillation envelope mirrors the single-photon atomic inversion, the
// proportionality factor mu_1 behind that correspondence, and the
// inversion-readout identity for vanishing-moment initial states.

#include "jcm/evolution.hpp"
#include "jcm/fock.hpp"
#include "jcm/model.hpp"

#include <optional>

namespace jcm {

// For X = (a^N + a†^N)/2 and Y = (a^N - a†^N)/2i:
//   S = <a†^N a^N> + Re<a^{2N}> - 2(Re<a^N>)^2      (X variance part)
//   Q = <a†^N a^N> - Re<a^{2N}> - 2(Im<a^N>)^2      (Y variance part)
//   (dX)^2 = S/2 + C/4,  (dY)^2 = Q/2 + C/4,  C = <[a^N, a†^N]>
// Squeezing is present when S or Q is negative.
struct SqueezingRecord {
    double T = 0.0;
    int N = 1;
    double S = 0.0;
    double Q = 0.0;
    double commutator = 0.0;
    double uncertainty_product = 0.0;  // (dX)^2 (dY)^2, >= C^2/16
    std::optional<double> V;           // rescaled factor, when requested

    double dx2() const { return 0.5 * S + 0.25 * commutator; }
    double dy2() const { return 0.5 * Q + 0.25 * commutator; }
};

// Needs headroom >= 2N on the underlying state.
SqueezingRecord squeezing_factors(const JointState& s, int N);

// Time-rescaling parameter of V_N: 2/3 for the standard coupling, 1/2 for
// the intensity-dependent one.
double rescale_parameter_b(Nonlinearity kind);

// V_N(T) = (nbar^N - Q_N((b/N) T)) / nbar^N, nbar = <n(0)>.
// Throws DegenerateInput when nbar = 0 (vacuum input).
class RescaledSqueezing {
public:
    RescaledSqueezing(TruncatedFieldState field, const ModelParams& params,
                      int N);

    double at(double T) const;               // V_N(T)
    SqueezingRecord record(double T) const;  // full record, V filled, T as given

    double b() const { return b_; }
    int order() const { return N_; }
    const Propagator& propagator() const { return prop_; }

private:
    Propagator prop_;
    int N_;
    double b_;
    double nbar_pow_;  // nbar^N
};

double rescaled_squeezing(const TruncatedFieldState& field,
                          const ModelParams& params, int N, double T);

// mu_1 = (gamma_{n+2} - gamma_n) / (2(n+1)): the factor relating the Y_1
// fluctuation frequencies to the inversion's Rabi frequencies.  Defined on
// resonance only; throws UnsupportedRegime when eta != 0.
double mu1_exact(const ModelParams& params, int n);

// Large-nbar three-term expansion of mu_1 for the intensity-dependent
// coupling on resonance:
//   1/4 [ 2(m+1) nbar^{(m-3)/2} + (3m^2+7m+6) nbar^{(m-5)/2}
//         + ((m+2)^2 (m+1) - 2m) nbar^{(m-7)/2} ]
double mu1_asymptotic(const ModelParams& params, double n_bar);

// Subleading term of the expansion above; the revival-readout fidelity
// condition is lhs < 1.  Intensity-dependent kind only.
double intensity_inequality_lhs(const ModelParams& params, double n_bar);

// Pre-solved minimal mean photon numbers for faithful order-N readout at
// m = 3: intensity-dependent {N=1: 54, N=2: 226}, standard {18, 144}.
// Throws UnsupportedRegime outside the tabulated (kind, m, N) range.
double intensity_condition(const ModelParams& params, int N);

// For m = 1 and initial fields with <a(T)> = <a^2(T)> = 0 (Fock support with
// gaps >= 3), the inversion is readable from normal squeezing:
//   <sigma_z(T)> = 2 nbar(0) + 1 - 2 S_1(T)
// The vanishing-moment precondition is checked at T = 0 and a probe time;
// violations raise UnsupportedState naming the offending moment.
double inversion_from_squeezing(const TruncatedFieldState& field,
                                const ModelParams& params, double T);

} // namespace jcm
