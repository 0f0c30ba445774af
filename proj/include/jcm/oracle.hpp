#pragma once
// Brute-force cross-validation paths for the analytic engine: an exact 2x2
// block exponential, a blind fixed-step RK4 integrator that never sees the
// Rabi frequencies (it works from the raw block Hamiltonian), and a moment
// oracle that applies the lowering operator literally instead of using
// closed-form factorial ratios.

#include "jcm/evolution.hpp"
#include "jcm/fock.hpp"
#include "jcm/model.hpp"

#include <complex>
#include <vector>

namespace jcm {

// Per-sector interaction block M_n = [[eta/2, kappa_n], [kappa_n, -eta/2]]
// acting on (|+,n>, |-,n+m>); traceless with eigenvalues +-gamma_n.
struct BlockHamiltonian {
    double eta_half = 0.0;
    std::vector<double> kappa;  // kappa[0..n_max]
};
BlockHamiltonian block_hamiltonian(const ModelParams& params, int n_max);

// exp(-i T M_n) applied to (C_n, 0) for every sector, via the exact matrix
// exponential cos(gT) I - i (sin(gT)/g) M.  Machine-precision reference.
JointState block_propagate(const TruncatedFieldState& field,
                           const ModelParams& params, double T);

// Fixed-step classical RK4 on i d/dT psi = M psi over the full truncated
// basis, built from (eta, kappa) only.  Norm is NOT renormalized: drift is a
// diagnostic.  Requires dt <= pi/(40 gamma_max) (sampling the fastest block
// well inside its stability/accuracy region); throws InvalidStep otherwise.
JointState ode_propagate(const TruncatedFieldState& field,
                         const ModelParams& params, double T, double dt);

// One continuous integration emitting snapshots at the given nondecreasing
// times (avoids re-integrating from 0 for every sample).
std::vector<JointState> ode_trajectory(const TruncatedFieldState& field,
                                       const ModelParams& params,
                                       const std::vector<double>& times,
                                       double dt);

// Step size for a target global amplitude error at horizon T, from the RK4
// local-error model |C_n| (h gamma_n)^5 / 120 per sector and step:
//   h = (120 target / (T max_n |C_n| gamma_n^5))^{1/4}
// capped by the ode_propagate precondition.
double rk4_budget_step(const TruncatedFieldState& field,
                       const ModelParams& params, double T,
                       double target_error);

// <a^k> by literally applying the lowering operator k times to the
// photon-indexed amplitude arrays.  Same headroom contract as field_moment.
std::complex<double> moment_oracle(const JointState& s, int k);

// max over sectors of |e - e'|, |g - g'| between two states on one basis.
double max_amplitude_difference(const JointState& a, const JointState& b);

} // namespace jcm
