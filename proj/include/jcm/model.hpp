#pragma once
// Model parameters and the Rabi frequency spectrum of the m-photon
// Jaynes-Cummings interaction R = a^m f(n), with f = 1 (standard) or
// f = sqrt(n) (intensity-dependent).  Time is measured in units of the
// inverse coupling, detuning as eta = Delta/lambda.

#include <vector>

namespace jcm {

enum class Nonlinearity {
    standard,             // f(n) = 1
    intensity_dependent,  // f(n) = sqrt(n)
};

struct ModelParams {
    int m = 1;                                        // transition order, >= 1
    Nonlinearity kind = Nonlinearity::intensity_dependent;
    double eta = 0.0;                                 // scaled detuning, finite
};

// Throws InvalidParameter on m < 1 or non-finite eta.
void validate(const ModelParams&);

// f(x) for the configured nonlinearity (x >= 0).
double intensity_function(const ModelParams&, double x);

// kappa_n = sqrt((n+m)!/n!) * f(n+m), evaluated in the log-Gamma domain so it
// stays finite for large n.  Strictly positive for every n >= 0, m >= 1.
double coupling_kernel(const ModelParams&, int n);

// gamma_n = sqrt(eta^2/4 + kappa_n^2)
double rabi_gamma(const ModelParams&, int n);

struct RabiSpectrum {
    std::vector<double> kappa;   // kappa[0..n_max]
    std::vector<double> gamma;   // gamma[0..n_max]
};

RabiSpectrum rabi_spectrum(const ModelParams&, int n_max);

} // namespace jcm
