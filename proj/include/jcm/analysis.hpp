#pragma once
// Revival-time predictions, generalized Rabi-frequency profiles, an
// empirical envelope-based revival detector, and similarity metrics between
// observables that are expected to mirror each other.

#include "jcm/model.hpp"
#include "jcm/timeseries.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace jcm {

// Analytic revival-time estimates for the single-photon inversion.
// Intensity-dependent kind: pi * sqrt((eta/2)^2 + nbar^2) / nbar
// (exactly pi on resonance).  Standard kind: 2*pi * sqrt((eta/2)^2 + nbar).
// Both are even in eta and nondecreasing in |eta|.
double revival_time_ijcm(double eta, double n_bar);
double revival_time_sjcm(double eta, double n_bar);
double revival_time(const ModelParams& params, double n_bar);  // by kind

// Omega_n = gamma_{n+2} - gamma_n for n in [n_lo, n_hi] (inclusive): the
// beat frequencies of <a^2>, whose near-linearity in n drives the rescaled
// squeezing correspondence.
std::vector<double> rabi_frequency_profile(const ModelParams& params, int n_lo,
                                           int n_hi);

// Local oscillation amplitude: (max - min)/2 of y over a centered window of
// `window_points` samples (clamped at the boundaries).
std::vector<double> oscillation_envelope(const std::vector<double>& y,
                                         std::size_t window_points);

struct RevivalOptions {
    double period_hint = 0.0;      // analytic revival period of the signal
    double prominence_frac = 0.15; // of the envelope's global range
};

struct RevivalReport {
    double predicted_T = 0.0;              // the period hint used
    std::vector<double> detected_centers;  // strictly increasing
    std::vector<double> envelope;          // per grid point
    std::size_t window_points = 0;
    bool clean = true;  // false when neighboring revivals fail to separate
};

// Envelope peaks above the prominence threshold, refined to the centroid of
// the half-prominence region.  window = period_hint/8 grid points; peaks
// within one window of either boundary are not reported.
// Throws InsufficientData when the series is shorter than ~2 windows.
RevivalReport detect_revivals(const TimeSeries& series,
                              const std::string& column,
                              const RevivalOptions& options);

// Zero-lag Pearson correlation of two equal-length series (mean removed).
// Throws DegenerateInput when either input has zero variance.
double pattern_similarity(const std::vector<double>& a,
                          const std::vector<double>& b);

// Largest pairwise distance between corresponding detected centers.
double max_center_offset(const std::vector<double>& a,
                         const std::vector<double>& b);

} // namespace jcm
