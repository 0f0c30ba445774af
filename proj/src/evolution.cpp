#include "jcm/evolution.hpp"

#include "jcm/errors.hpp"
#include "jcm/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace jcm {

std::pair<std::complex<double>, std::complex<double>>
g1_g2(const ModelParams& params, int n, double T) {
    validate(params);
    if (n < 0) throw InvalidParameter("photon number must be >= 0");
    if (!std::isfinite(T)) throw InvalidParameter("time must be finite");
    const double kappa = coupling_kernel(params, n);
    const double gamma = rabi_gamma(params, n);
    const double x = T * gamma;
    const double sn = std::sin(x), cs = std::cos(x);
    const double inv = 1.0 / gamma;
    return {{cs, -0.5 * params.eta * sn * inv}, {0.0, -kappa * sn * inv}};
}

Propagator::Propagator(TruncatedFieldState field, const ModelParams& params)
    : params_(params), field_(std::move(field)) {
    validate(params_);
    if (field_.c.empty()) throw InvalidParameter("field state is empty");

    const int n_max = field_.n_max();
    spec_ = rabi_spectrum(params_, n_max);

    const std::size_t len = field_.c.size();
    cr_.resize(len);
    ci_.resize(len);
    p_.resize(len);
    inv_a_.resize(len);
    inv_b_.resize(len);
    const double eta_sq_4 = 0.25 * params_.eta * params_.eta;
    for (std::size_t n = 0; n < len; ++n) {
        cr_[n] = field_.c[n].real();
        ci_[n] = field_.c[n].imag();
        p_[n] = std::norm(field_.c[n]);
        const double g2 = spec_.gamma[n] * spec_.gamma[n];
        inv_a_[n] = eta_sq_4 / g2;
        inv_b_[n] = spec_.kappa[n] * spec_.kappa[n] / g2;
    }
}

JointState Propagator::at(double T) const {
    if (!std::isfinite(T)) throw InvalidParameter("time must be finite");
    JointState s;
    s.T = T;
    s.m = params_.m;
    s.n_star = field_.n_star;
    const std::size_t len = field_.c.size();
    s.er.resize(len);
    s.ei.resize(len);
    s.gr.resize(len);
    s.gi.resize(len);
    kernels::evolve_amplitudes(len, T, 0.5 * params_.eta, spec_.gamma.data(),
                               spec_.kappa.data(), cr_.data(), ci_.data(),
                               s.er.data(), s.ei.data(), s.gr.data(),
                               s.gi.data());
    return s;
}

double Propagator::inversion(double T) const {
    if (!std::isfinite(T)) throw InvalidParameter("time must be finite");
    return kernels::weighted_ab_cos_sum(p_.size(), 2.0 * T, p_.data(),
                                        inv_a_.data(), inv_b_.data(),
                                        spec_.gamma.data());
}

double Propagator::inversion_floor() const {
    double acc = 0.0;
    for (std::size_t n = 0; n < p_.size(); ++n)
        acc += p_[n] * (inv_a_[n] - inv_b_[n]);
    return acc;
}

JointState evolve(const TruncatedFieldState& field, const ModelParams& params,
                  double T) {
    return Propagator(field, params).at(T);
}

double inversion_closed_form(const TruncatedFieldState& field,
                             const ModelParams& params, double T) {
    return Propagator(field, params).inversion(T);
}

double atomic_inversion(const JointState& s) {
    double up = 0.0, down = 0.0;
    for (std::size_t n = 0; n < s.size(); ++n) {
        up += s.er[n] * s.er[n] + s.ei[n] * s.ei[n];
        down += s.gr[n] * s.gr[n] + s.gi[n] * s.gi[n];
    }
    return up - down;
}

double mean_photon(const JointState& s) {
    double acc = 0.0;
    for (std::size_t n = 0; n < s.size(); ++n) {
        acc += double(n) * (s.er[n] * s.er[n] + s.ei[n] * s.ei[n]);
        acc += double(n + std::size_t(s.m)) *
               (s.gr[n] * s.gr[n] + s.gi[n] * s.gi[n]);
    }
    return acc;
}

double norm_square(const JointState& s) {
    double acc = 0.0;
    for (std::size_t n = 0; n < s.size(); ++n)
        acc += s.er[n] * s.er[n] + s.ei[n] * s.ei[n] + s.gr[n] * s.gr[n] +
               s.gi[n] * s.gi[n];
    return acc;
}

double f1_expectation(const JointState& s) {
    return mean_photon(s) + 0.5 * double(s.m) * atomic_inversion(s);
}

double default_time_step(const ModelParams& params,
                         const TruncatedFieldState& field) {
    validate(params);
    if (field.c.empty()) throw InvalidParameter("field state is empty");
    const RabiSpectrum spec = rabi_spectrum(params, field.n_max());
    const double gmax =
        *std::max_element(spec.gamma.begin(), spec.gamma.end());
    return std::numbers::pi / (10.0 * gmax);
}

std::vector<double> time_grid(double t_max, std::size_t steps) {
    if (!(t_max > 0.0) || !std::isfinite(t_max))
        throw InvalidParameter("t_max must be positive and finite");
    if (steps < 1) throw InvalidParameter("grid needs at least one step");
    const double dt = t_max / double(steps);
    std::vector<double> t(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) t[i] = dt * double(i);
    return t;
}

} // namespace jcm
