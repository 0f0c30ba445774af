#include "jcm/analysis.hpp"

#include "jcm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

namespace jcm {

double revival_time_ijcm(double eta, double n_bar) {
    if (!(n_bar > 0.0) || !std::isfinite(n_bar) || !std::isfinite(eta))
        throw InvalidParameter("revival time needs finite eta and n_bar > 0");
    return std::numbers::pi * std::hypot(0.5 * eta, n_bar) / n_bar;
}

double revival_time_sjcm(double eta, double n_bar) {
    if (!(n_bar > 0.0) || !std::isfinite(n_bar) || !std::isfinite(eta))
        throw InvalidParameter("revival time needs finite eta and n_bar > 0");
    return 2.0 * std::numbers::pi * std::hypot(0.5 * eta, std::sqrt(n_bar));
}

double revival_time(const ModelParams& params, double n_bar) {
    validate(params);
    return params.kind == Nonlinearity::intensity_dependent
               ? revival_time_ijcm(params.eta, n_bar)
               : revival_time_sjcm(params.eta, n_bar);
}

std::vector<double> rabi_frequency_profile(const ModelParams& params, int n_lo,
                                           int n_hi) {
    validate(params);
    if (n_lo < 0 || n_hi < n_lo)
        throw InvalidParameter("profile range must satisfy 0 <= n_lo <= n_hi");
    const RabiSpectrum spec = rabi_spectrum(params, n_hi + 2);
    std::vector<double> omega(std::size_t(n_hi - n_lo) + 1);
    for (int n = n_lo; n <= n_hi; ++n)
        omega[std::size_t(n - n_lo)] =
            spec.gamma[std::size_t(n + 2)] - spec.gamma[std::size_t(n)];
    return omega;
}

std::vector<double> oscillation_envelope(const std::vector<double>& y,
                                         std::size_t window_points) {
    if (window_points < 1)
        throw InvalidParameter("envelope window must be >= 1 point");
    const std::size_t n = y.size();
    const std::size_t half = window_points / 2;
    std::vector<double> env(n);
    std::deque<std::size_t> maxq, minq;
    std::size_t pushed = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t hi = std::min(n - 1, i + half);
        while (pushed <= hi) {
            while (!maxq.empty() && y[maxq.back()] <= y[pushed]) maxq.pop_back();
            maxq.push_back(pushed);
            while (!minq.empty() && y[minq.back()] >= y[pushed]) minq.pop_back();
            minq.push_back(pushed);
            ++pushed;
        }
        const std::size_t lo = i >= half ? i - half : 0;
        while (maxq.front() < lo) maxq.pop_front();
        while (minq.front() < lo) minq.pop_front();
        env[i] = 0.5 * (y[maxq.front()] - y[minq.front()]);
    }
    return env;
}

namespace {

struct Peak {
    double center;
    double height;
    std::size_t region_lo, region_hi;  // half-prominence centroid region
};

} // namespace

RevivalReport detect_revivals(const TimeSeries& series,
                              const std::string& column,
                              const RevivalOptions& options) {
    if (!(options.period_hint > 0.0) || !std::isfinite(options.period_hint))
        throw InvalidParameter("detector needs a positive period hint");
    if (!(options.prominence_frac > 0.0) || options.prominence_frac >= 1.0)
        throw InvalidParameter("prominence fraction must lie in (0, 1)");
    validate_grid(series);
    const std::vector<double>& y = series.column(column);
    const std::vector<double>& t = series.t;
    const std::size_t n = t.size();
    if (n < 4) throw InsufficientData("series too short to detect anything");

    const double dt = t[1] - t[0];
    std::size_t w = std::size_t(
        std::max(3.0, std::round(options.period_hint / 8.0 / dt)));
    if (w % 2 == 0) ++w;
    if (n < 2 * w + 2)
        throw InsufficientData("series spans fewer than two detection windows");

    RevivalReport report;
    report.predicted_T = options.period_hint;
    report.window_points = w;
    report.envelope = oscillation_envelope(y, w);
    const std::vector<double>& env = report.envelope;

    const auto [env_min_it, env_max_it] =
        std::minmax_element(env.begin(), env.end());
    const double range = *env_max_it - *env_min_it;

    std::vector<Peak> peaks;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(env[i] > env[i - 1] && env[i] >= env[i + 1])) continue;

        // Prominence: drop to the valley floor on the side with the higher
        // base (walk until terrain exceeds the peak or the series ends).
        double lbase = env[i];
        for (std::size_t j = i; j-- > 0 && env[j] <= env[i];)
            lbase = std::min(lbase, env[j]);
        double rbase = env[i];
        for (std::size_t j = i + 1; j < n && env[j] <= env[i]; ++j)
            rbase = std::min(rbase, env[j]);
        const double prom = env[i] - std::max(lbase, rbase);
        if (prom < options.prominence_frac * range) continue;
        if (i < w || i + w > n - 1) continue;  // boundary-window exclusion

        // Centroid of the half-prominence region; the climb guard keeps the
        // region from spilling onto a neighboring higher peak.
        const double level = env[i] - 0.5 * prom;
        std::size_t a = i;
        while (a > 0 && env[a - 1] >= level &&
               env[a - 1] <= env[a] + 0.25 * prom)
            --a;
        std::size_t b = i;
        while (b + 1 < n && env[b + 1] >= level &&
               env[b + 1] <= env[b] + 0.25 * prom)
            ++b;
        double wsum = 0.0, twsum = 0.0;
        for (std::size_t j = a; j <= b; ++j) {
            const double excess = std::max(env[j] - level, 0.0);
            wsum += excess;
            twsum += t[j] * excess;
        }
        peaks.push_back({twsum / wsum, env[i], a, b});
    }

    // Merge peaks whose centroid regions overlap, keeping the taller one.
    std::vector<Peak> merged;
    for (const Peak& p : peaks) {
        if (!merged.empty() && p.region_lo <= merged.back().region_hi) {
            if (p.height > merged.back().height) merged.back() = p;
        } else {
            merged.push_back(p);
        }
    }

    for (std::size_t k = 0; k + 1 < merged.size(); ++k) {
        const std::size_t i0 = merged[k].region_hi;
        const std::size_t i1 = merged[k + 1].region_lo;
        double valley = env[i0];
        for (std::size_t j = i0; j <= i1; ++j) valley = std::min(valley, env[j]);
        if (valley > 0.5 * std::min(merged[k].height, merged[k + 1].height))
            report.clean = false;
    }

    for (const Peak& p : merged) report.detected_centers.push_back(p.center);
    return report;
}

double pattern_similarity(const std::vector<double>& a,
                          const std::vector<double>& b) {
    if (a.size() != b.size() || a.size() < 2)
        throw InvalidParameter("similarity needs two equal-length series");
    const std::size_t n = a.size();
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= double(n);
    mb /= double(n);
    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - ma, db = b[i] - mb;
        saa += da * da;
        sbb += db * db;
        sab += da * db;
    }
    if (saa == 0.0 || sbb == 0.0)
        throw DegenerateInput("correlation undefined for zero-variance input");
    return sab / std::sqrt(saa * sbb);
}

double max_center_offset(const std::vector<double>& a,
                         const std::vector<double>& b) {
    if (a.empty() || b.empty())
        throw InsufficientData("no detected centers to compare");
    const std::size_t k = std::min(a.size(), b.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

} // namespace jcm
