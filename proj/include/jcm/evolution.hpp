#pragma once
// Exact closed-form time evolution of the joint atom-field state for the
// m-photon coupling model.  The initial state is the atom in its upper level
// with the field in a truncated superposition; each photon-number sector
// |+,n> / |-,n+m> evolves independently with Rabi frequency gamma_n, so the
// state at scaled time T is assembled directly without stepping.

#include "jcm/fock.hpp"
#include "jcm/model.hpp"

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace jcm {

// Joint state in the dressed sector basis, split-complex storage:
// e[n] multiplies |+, n>, g[n] multiplies |-, n+m>.
struct JointState {
    double T = 0.0;
    int m = 1;
    int n_star = 0;  // highest sector carrying real (non-headroom) weight
    std::vector<double> er, ei, gr, gi;

    std::size_t size() const { return er.size(); }
    std::complex<double> e(std::size_t n) const { return {er[n], ei[n]}; }
    std::complex<double> g(std::size_t n) const { return {gr[n], gi[n]}; }
};

// Evolution coefficients of sector n:
//   G1 = cos(T*gamma_n) - i*(eta/2)*sin(T*gamma_n)/gamma_n
//   G2 = -i*kappa_n*sin(T*gamma_n)/gamma_n
std::pair<std::complex<double>, std::complex<double>>
g1_g2(const ModelParams& params, int n, double T);

// Precomputes the Rabi spectrum and weights for repeated evaluation at many
// times.  All evaluations run through the kernel layer.
class Propagator {
public:
    Propagator(TruncatedFieldState field, const ModelParams& params);

    const ModelParams& params() const { return params_; }
    const TruncatedFieldState& field() const { return field_; }
    const RabiSpectrum& spectrum() const { return spec_; }

    JointState at(double T) const;

    // Population inversion <sigma_z>(T) by the closed-form sum
    //   sum_n P(n) * [ (eta^2/4)/gamma_n^2 + (kappa_n^2/gamma_n^2)*cos(2*T*gamma_n) ]
    // (cheaper than assembling the state when only the inversion is needed).
    double inversion(double T) const;

    // Time-independent lower bound on the inversion: the closed form with
    // every cosine at -1, sum_n P(n) * (eta^2/4 - kappa_n^2)/gamma_n^2.
    // Approaches 1 in the strong-detuning (trapping) limit.
    double inversion_floor() const;

private:
    ModelParams params_;
    TruncatedFieldState field_;
    RabiSpectrum spec_;
    std::vector<double> cr_, ci_;        // initial amplitudes, split
    std::vector<double> p_;              // photon distribution
    std::vector<double> inv_a_, inv_b_;  // per-sector inversion weights
};

// One-shot conveniences (build a Propagator internally).
JointState evolve(const TruncatedFieldState& field, const ModelParams& params,
                  double T);
double inversion_closed_form(const TruncatedFieldState& field,
                             const ModelParams& params, double T);

// Observables of an assembled state.
double atomic_inversion(const JointState& s);          // sum |e|^2 - sum |g|^2
double mean_photon(const JointState& s);               // <n>
double norm_square(const JointState& s);               // should stay 1
double f1_expectation(const JointState& s);            // <n> + (m/2)<sigma_z>

// Sampling-grid helpers: a step fine enough to resolve the fastest Rabi
// frequency in the truncated spectrum, and a uniform grid of steps+1 points
// on [0, t_max].
double default_time_step(const ModelParams& params,
                         const TruncatedFieldState& field);
std::vector<double> time_grid(double t_max, std::size_t steps);

} // namespace jcm
