#pragma once
// Truncated photon-number-basis field states: coherent states cut at a
// controlled tail mass, plus arbitrary user-supplied superpositions.

#include <complex>
#include <variant>
#include <vector>

namespace jcm {

struct CoherentSpec {
    double alpha = 0.0;        // real amplitude, >= 0; mean photon alpha^2
};

struct CustomSpec {
    std::vector<std::complex<double>> amplitudes;   // c_0, c_1, ...
};

using FieldSpec = std::variant<CoherentSpec, CustomSpec>;

// Field state stored as c[0..n_max].  Indices above n_star carry negligible
// (coherent) or exactly zero (custom) weight: they are headroom so that a
// moment operator of order k <= headroom() never reads past the stored
// range.  Consumers that form moments of order k must request headroom >= k
// at construction.
struct TruncatedFieldState {
    std::vector<std::complex<double>> c;
    int n_star = 0;          // last index required to reach tail_tol
    double tail_mass = 0.0;  // probability outside the stored range
    double tail_tol = 0.0;
    double norm_factor = 1.0;  // factor applied to normalize custom input
    double alpha = -1.0;       // >= 0 iff built from a coherent spec

    int n_max() const { return int(c.size()) - 1; }
    int headroom() const { return n_max() - n_star; }
    bool is_coherent() const { return alpha >= 0.0; }
};

// Coherent state |alpha>.  The cutoff search starts at ceil(alpha^2) scale
// and extends until the cumulative Poisson tail drops below tail_tol; the
// stored range is then extended by `headroom` genuine coherent amplitudes.
// Throws InvalidParameter on alpha < 0, tail_tol outside (0, 1), or a tail
// tolerance too tight to resolve in double precision.
TruncatedFieldState coherent_amplitudes(double alpha, double tail_tol,
                                        int headroom = 0);

// Normalized custom superposition; headroom extends with exact zeros.
// Throws InvalidParameter on empty/zero/non-finite input.
TruncatedFieldState custom_state(std::vector<std::complex<double>> amplitudes,
                                 int headroom = 0);

TruncatedFieldState truncate(const FieldSpec&, double tail_tol,
                             int headroom = 0);

// P(n) = |c_n|^2 over the stored range; sums to 1 - tail_mass.
std::vector<double> photon_distribution(const TruncatedFieldState&);

// sum n P(n)
double mean_photon_number(const TruncatedFieldState&);

} // namespace jcm
