#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "jcm/errors.hpp"
#include "jcm/evolution.hpp"
#include "jcm/fock.hpp"
#include "jcm/model.hpp"
#include "jcm/oracle.hpp"
#include "pins.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

using namespace jcm;
using std::numbers::pi;

namespace {
ModelParams ij(int m, double eta = 0.0) {
    return {m, Nonlinearity::intensity_dependent, eta};
}
ModelParams sj(int m, double eta = 0.0) {
    return {m, Nonlinearity::standard, eta};
}
} // namespace

TEST_CASE("block Hamiltonian mirrors the model couplings") {
    ModelParams p = sj(2, 7.0);
    auto h = block_hamiltonian(p, 12);
    CHECK(h.eta_half == 3.5);
    REQUIRE(h.kappa.size() == 13);
    for (int n = 0; n <= 12; ++n)
        CHECK(h.kappa[std::size_t(n)] == coupling_kernel(p, n));
    CHECK_THROWS_AS(block_hamiltonian(p, -1), InvalidParameter);
}

TEST_CASE("matrix exponential vs analytic engine: randomized sweep") {
    std::mt19937 rng(1312);
    std::uniform_real_distribution<double> t_d(0.0, 10.0);
    std::uniform_int_distribution<int> m_d(1, 3), pick(0, 4), kind_d(0, 1),
        a_d(0, 2);
    const double etas[5] = {0.0, 1.0, 20.0, 100.0, 1000.0};
    const double alphas[3] = {0.5, 4.0, 8.0};
    for (int it = 0; it < 50; ++it) {
        ModelParams p{m_d(rng),
                      kind_d(rng) ? Nonlinearity::standard
                                  : Nonlinearity::intensity_dependent,
                      etas[pick(rng)]};
        auto f = coherent_amplitudes(alphas[a_d(rng)], 1e-12, 2);
        const double T = t_d(rng);
        const auto a = evolve(f, p, T);
        const auto b = block_propagate(f, p, T);
        // phases T * gamma_n reach ~1e5 at alpha = 8, m = 3, eta = 1000, so
        // last-ulp differences in gamma between the two routes grow to a few
        // 1e-12 in the amplitudes; tamer parameter sets sit well under 1e-12
        CHECK(max_amplitude_difference(a, b) <= 1e-11);
        CHECK(std::abs(atomic_inversion(b) -
                       inversion_closed_form(f, p, T)) <= 1e-11);
    }
}

TEST_CASE("blind RK4 on the vacuum sector reproduces -i at quarter period") {
    auto f = custom_state({{1.0, 0.0}}, 0);
    auto s = ode_propagate(f, sj(1), pi / 2, 1e-3);
    CHECK(std::abs(s.g(0) - std::complex<double>(0.0, -1.0)) < 1e-8);
    CHECK(std::abs(s.e(0)) < 1e-8);
    CHECK(s.T == pi / 2);
}

TEST_CASE("blind RK4 vs analytic engine at the pinned fixed step") {
    ModelParams p = ij(1);
    auto f = coherent_amplitudes(4.0, 1e-12, 2);
    for (auto [T, pin] : {std::pair{3.0, pins::kOdeErrT3},
                          std::pair{10.0, pins::kOdeErrT10}}) {
        const auto num = ode_propagate(f, p, T, 1e-3);
        const auto ana = evolve(f, p, T);
        const double err = max_amplitude_difference(num, ana);
        CHECK(std::abs(err / pin - 1.0) <= 0.02);
    }
    // norm is a diagnostic: it must drift (no hidden renormalization), but
    // stay within the accuracy budget of the step
    const auto num10 = ode_propagate(f, p, 10.0, 1e-3);
    const double drift = std::abs(norm_square(num10) - (1.0 - f.tail_mass));
    CHECK(drift > 1e-12);
    CHECK(drift < 1.5e-8);
}

TEST_CASE("budget-chosen step hits the target error band") {
    for (const ModelParams& p : {ij(1), ij(3, 20.0), sj(3, 20.0)}) {
        auto f = coherent_amplitudes(4.0, 1e-12, 2);
        const double h = rk4_budget_step(f, p, 10.0, 1e-9);
        const auto num = ode_propagate(f, p, 10.0, h);
        const auto ana = evolve(f, p, 10.0);
        CHECK(max_amplitude_difference(num, ana) <= 1e-8);
        CHECK(std::abs(f1_expectation(num) - f1_expectation(ana)) <= 1e-8);
    }
    // pinned step for the reference configuration
    auto f = coherent_amplitudes(4.0, 1e-12, 2);
    const double h = rk4_budget_step(f, ij(1), 10.0, 1e-9);
    CHECK(std::abs(h / 3.182e-4 - 1.0) <= 0.02);
}

TEST_CASE("budget step is capped by the sampling precondition") {
    auto f = coherent_amplitudes(4.0, 1e-12, 2);
    ModelParams p = ij(1);
    const RabiSpectrum spec = rabi_spectrum(p, f.n_max());
    double gmax = 0.0;
    for (double g : spec.gamma) gmax = std::max(gmax, g);
    const double bound = pi / (40.0 * gmax);
    CHECK(rk4_budget_step(f, p, 10.0, 1.0) == bound);  // loose target: capped
    CHECK(rk4_budget_step(f, p, 10.0, 1e-9) < bound);
    CHECK_NOTHROW(ode_propagate(f, p, 0.05, bound));
    CHECK_THROWS_AS(ode_propagate(f, p, 0.05, bound * 1.01), InvalidStep);
}

TEST_CASE("integrator input validation") {
    auto f = coherent_amplitudes(2.0, 1e-12, 2);
    ModelParams p = ij(1);
    CHECK_THROWS_AS(ode_propagate(f, p, 1.0, 0.0), InvalidParameter);
    CHECK_THROWS_AS(ode_propagate(f, p, 1.0, -1e-3), InvalidParameter);
    CHECK_THROWS_AS(ode_propagate(f, p, -1.0, 1e-3), InvalidParameter);
    CHECK_THROWS_AS(rk4_budget_step(f, p, 0.0, 1e-9), InvalidParameter);
    CHECK_THROWS_AS(rk4_budget_step(f, p, 1.0, 0.0), InvalidParameter);

    TruncatedFieldState dead;
    dead.c = {{0.0, 0.0}, {0.0, 0.0}};
    dead.n_star = 1;
    CHECK_THROWS_AS(rk4_budget_step(dead, p, 1.0, 1e-9), DegenerateInput);
}

TEST_CASE("trajectory emission matches fresh integrations") {
    auto f = coherent_amplitudes(3.0, 1e-12, 2);
    ModelParams p = sj(2, 5.0);
    const std::vector<double> times{0.0, 0.5, 0.5, 1.25, 3.0};
    const double dt = 5e-4;
    const auto traj = ode_trajectory(f, p, times, dt);
    REQUIRE(traj.size() == times.size());
    for (std::size_t k = 0; k < times.size(); ++k) {
        CHECK(traj[k].T == times[k]);
        const auto fresh = ode_propagate(f, p, times[k], dt);
        CHECK(max_amplitude_difference(traj[k], fresh) <= 1e-9);
    }
    // repeated time: literally the same state
    CHECK(max_amplitude_difference(traj[1], traj[2]) == 0.0);

    CHECK_THROWS_AS(ode_trajectory(f, p, {1.0, 0.5}, dt), InvalidParameter);
    CHECK_THROWS_AS(ode_trajectory(f, p, {-0.5}, dt), InvalidParameter);
}

TEST_CASE("moment oracle guards") {
    auto f = coherent_amplitudes(2.0, 1e-12, 1);
    auto s = evolve(f, ij(1), 0.7);
    CHECK_THROWS_AS(moment_oracle(s, 0), InvalidParameter);
    CHECK_THROWS_AS(moment_oracle(s, 2), HeadroomError);
    CHECK_NOTHROW(moment_oracle(s, 1));
}

TEST_CASE("amplitude distance") {
    auto f = coherent_amplitudes(1.0, 1e-10, 0);
    auto a = evolve(f, ij(1), 1.0);
    auto b = a;
    CHECK(max_amplitude_difference(a, b) == 0.0);
    b.gr[2] += 0.3;
    b.gi[2] -= 0.4;
    CHECK(max_amplitude_difference(a, b) == doctest::Approx(0.5).epsilon(1e-15));

    auto c = evolve(coherent_amplitudes(1.0, 1e-10, 1), ij(1), 1.0);
    CHECK_THROWS_AS(max_amplitude_difference(a, c), InvalidParameter);
    auto d = a;
    d.m = 2;
    CHECK_THROWS_AS(max_amplitude_difference(a, d), InvalidParameter);
}
