#pragma once
// Field moments of the evolved joint state: general <a^k>, normally and
// antinormally ordered number moments, and the closed-form / harmonic
// expressions for Re<a^2> that drive the squeezing-revival analysis.

#include "jcm/evolution.hpp"
#include "jcm/fock.hpp"
#include "jcm/model.hpp"

#include <complex>

namespace jcm {

// <a^k> = sum_n conj(e_n) e_{n+k} sqrt((n+k)!/n!)
//       + sum_n conj(g_n) g_{n+k} sqrt((n+m+k)!/(n+m)!)
// Throws HeadroomError when the state's headroom is below k (the operator
// would read past the stored range; it is never silently truncated).
std::complex<double> field_moment(const JointState& s, int k);

// <a†^N a^N>: falling-factorial weighted populations, exact on the stored
// range (diagonal, no headroom needed).
double number_moment(const JointState& s, int N);

// <a^N a†^N>: rising-factorial weighted populations.
double antinormal_number_moment(const JointState& s, int N);

// <[a^N, a†^N]> = antinormal - normal; exactly 1 for N=1 on a unit-norm state.
double commutator_expectation(const JointState& s, int N);

// All moment inputs of the order-N squeezing factors in one pass.
struct MomentSet {
    int N = 1;
    std::complex<double> a_N;      // <a^N>
    std::complex<double> a_2N;     // <a^{2N}>
    double adagN_aN = 0.0;         // <a†^N a^N>
    double commutator_N = 0.0;     // <[a^N, a†^N]>
};
MomentSet moment_set(const JointState& s, int N);   // needs headroom >= 2N

// Closed-form Re<a^2>(T) for a real coherent input:
//   alpha^2 sum_n P(n) [ cos(T g_{n+2}) cos(T g_n)
//       + (eta^2/4 + W_n) / (g_{n+2} g_n) * sin(T g_{n+2}) sin(T g_n) ]
// with W_n = ((n+m+2)!/(n+2)!) f(n+m) f(n+m+2).  Exact (it is the moment
// engine's sum regrouped), valid on and off resonance.
// Throws UnsupportedState unless the field came from a coherent spec.
double re_a2_closed_form(const TruncatedFieldState& field,
                         const ModelParams& params, double T);

// Strong-intensity harmonic approximation of the same quantity:
//   nbar * sum_n P(n) cos(T * (gamma_{n+2} - gamma_n))
double harmonic_approx_a2(const TruncatedFieldState& field,
                          const ModelParams& params, double T);

} // namespace jcm
