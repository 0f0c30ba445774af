#include "jcm/oracle.hpp"

#include "jcm/errors.hpp"
#include "jcm/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace jcm {

BlockHamiltonian block_hamiltonian(const ModelParams& params, int n_max) {
    validate(params);
    if (n_max < 0) throw InvalidParameter("n_max must be >= 0");
    BlockHamiltonian h;
    h.eta_half = 0.5 * params.eta;
    h.kappa.resize(std::size_t(n_max) + 1);
    for (int n = 0; n <= n_max; ++n)
        h.kappa[std::size_t(n)] = coupling_kernel(params, n);
    return h;
}

JointState block_propagate(const TruncatedFieldState& field,
                           const ModelParams& params, double T) {
    if (!std::isfinite(T)) throw InvalidParameter("time must be finite");
    const BlockHamiltonian h = block_hamiltonian(params, field.n_max());
    const std::size_t len = field.c.size();

    JointState s;
    s.T = T;
    s.m = params.m;
    s.n_star = field.n_star;
    s.er.resize(len);
    s.ei.resize(len);
    s.gr.resize(len);
    s.gi.resize(len);
    const double a = h.eta_half;
    for (std::size_t n = 0; n < len; ++n) {
        const double k = h.kappa[n];
        const double g = std::sqrt(a * a + k * k);
        const double x = T * g;
        const double sg = std::sin(x) / g;
        // exp(-i x/g M) = cos(x) I - i sg M, applied to (C_n, 0)
        const std::complex<double> u00(std::cos(x), -a * sg);
        const std::complex<double> u10(0.0, -k * sg);
        const std::complex<double> e = u00 * field.c[n];
        const std::complex<double> gq = u10 * field.c[n];
        s.er[n] = e.real();
        s.ei[n] = e.imag();
        s.gr[n] = gq.real();
        s.gi[n] = gq.imag();
    }
    return s;
}

namespace {

double max_gamma(const ModelParams& params, int n_max) {
    const RabiSpectrum spec = rabi_spectrum(params, n_max);
    return *std::max_element(spec.gamma.begin(), spec.gamma.end());
}

void check_step(const TruncatedFieldState& field, const ModelParams& params,
                double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw InvalidParameter("dt must be positive and finite");
    const double bound =
        std::numbers::pi / (40.0 * max_gamma(params, field.n_max()));
    if (dt > bound)
        throw InvalidStep("dt = " + std::to_string(dt) +
                          " exceeds the sampling bound " +
                          std::to_string(bound) +
                          " for the fastest sector");
}

JointState initial_state(const TruncatedFieldState& field,
                         const ModelParams& params) {
    const std::size_t len = field.c.size();
    JointState s;
    s.m = params.m;
    s.n_star = field.n_star;
    s.er.resize(len);
    s.ei.resize(len);
    s.gr.assign(len, 0.0);
    s.gi.assign(len, 0.0);
    for (std::size_t n = 0; n < len; ++n) {
        s.er[n] = field.c[n].real();
        s.ei[n] = field.c[n].imag();
    }
    return s;
}

// Advance `s` by `span` with steps of at most dt.
void integrate_segment(JointState& s, const BlockHamiltonian& h, double span,
                       double dt) {
    if (span == 0.0) return;
    const auto steps = std::size_t(std::ceil(span / dt));
    const double step = span / double(steps);
    for (std::size_t i = 0; i < steps; ++i)
        kernels::rk4_step(s.er.size(), step, h.eta_half, h.kappa.data(),
                          s.er.data(), s.ei.data(), s.gr.data(), s.gi.data());
    s.T += span;
}

} // namespace

JointState ode_propagate(const TruncatedFieldState& field,
                         const ModelParams& params, double T, double dt) {
    if (!(T >= 0.0) || !std::isfinite(T))
        throw InvalidParameter("integration horizon must be >= 0 and finite");
    check_step(field, params, dt);
    const BlockHamiltonian h = block_hamiltonian(params, field.n_max());
    JointState s = initial_state(field, params);
    integrate_segment(s, h, T, dt);
    return s;
}

std::vector<JointState> ode_trajectory(const TruncatedFieldState& field,
                                       const ModelParams& params,
                                       const std::vector<double>& times,
                                       double dt) {
    check_step(field, params, dt);
    const BlockHamiltonian h = block_hamiltonian(params, field.n_max());
    JointState s = initial_state(field, params);
    std::vector<JointState> out;
    out.reserve(times.size());
    double prev = 0.0;
    for (const double tk : times) {
        if (!(tk >= prev) || !std::isfinite(tk))
            throw InvalidParameter(
                "snapshot times must be finite, nondecreasing, and >= 0");
        integrate_segment(s, h, tk - prev, dt);
        s.T = tk;
        out.push_back(s);
        prev = tk;
    }
    return out;
}

double rk4_budget_step(const TruncatedFieldState& field,
                       const ModelParams& params, double T,
                       double target_error) {
    if (!(T > 0.0) || !(target_error > 0.0))
        throw InvalidParameter("budget step needs T > 0 and target > 0");
    validate(params);
    const RabiSpectrum spec = rabi_spectrum(params, field.n_max());
    double worst = 0.0;
    for (std::size_t n = 0; n < field.c.size(); ++n) {
        const double g = spec.gamma[n];
        worst = std::max(worst,
                         std::abs(field.c[n]) * g * g * g * g * g);
    }
    if (worst == 0.0) throw DegenerateInput("field has no amplitude");
    const double budget = std::pow(120.0 * target_error / (T * worst), 0.25);
    const double bound =
        std::numbers::pi / (40.0 * max_gamma(params, field.n_max()));
    return std::min(budget, bound);
}

std::complex<double> moment_oracle(const JointState& s, int k) {
    if (k < 1) throw InvalidParameter("moment order must be >= 1");
    const int headroom = int(s.size()) - 1 - s.n_star;
    if (headroom < k)
        throw HeadroomError("moment of order " + std::to_string(k) +
                            " needs headroom >= " + std::to_string(k) +
                            ", state has " + std::to_string(headroom));

    using cvec = std::vector<std::complex<double>>;
    const std::size_t len = s.size();
    cvec up(len), down(len + std::size_t(s.m));
    for (std::size_t n = 0; n < len; ++n) {
        up[n] = s.e(n);
        down[n + std::size_t(s.m)] = s.g(n);
    }

    const auto lower_k_times = [k](cvec v) {
        for (int pass = 0; pass < k; ++pass) {
            for (std::size_t j = 0; j + 1 < v.size(); ++j)
                v[j] = std::sqrt(double(j) + 1.0) * v[j + 1];
            v.pop_back();
        }
        return v;
    };
    const cvec up_low = lower_k_times(up);
    const cvec down_low = lower_k_times(down);

    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < up_low.size(); ++j)
        acc += std::conj(up[j]) * up_low[j];
    for (std::size_t j = 0; j < down_low.size(); ++j)
        acc += std::conj(down[j]) * down_low[j];
    return acc;
}

double max_amplitude_difference(const JointState& a, const JointState& b) {
    if (a.size() != b.size() || a.m != b.m)
        throw InvalidParameter("states live on different bases");
    double worst = 0.0;
    for (std::size_t n = 0; n < a.size(); ++n) {
        worst = std::max(worst, std::abs(a.e(n) - b.e(n)));
        worst = std::max(worst, std::abs(a.g(n) - b.g(n)));
    }
    return worst;
}

} // namespace jcm
