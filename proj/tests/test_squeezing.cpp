#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "jcm/errors.hpp"
#include "jcm/evolution.hpp"
#include "jcm/fock.hpp"
#include "jcm/model.hpp"
#include "jcm/squeezing.hpp"
#include "pins.hpp"

#include <cmath>
#include <numbers>
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

TEST_CASE("vacuum with the standard coupling: S_1 = Q_1 = sin^2(T)") {
    auto f = custom_state({{1.0, 0.0}}, 2);
    ModelParams p = sj(1);
    for (double T : {0.0, 0.3, 1.0, pi / 2, 2.5, 7.0}) {
        auto r = squeezing_factors(evolve(f, p, T), 1);
        const double s2 = std::sin(T) * std::sin(T);
        CHECK(std::abs(r.S - s2) <= 1e-14);
        CHECK(std::abs(r.Q - s2) <= 1e-14);
        CHECK(std::abs(r.commutator - 1.0) <= 1e-14);
        CHECK(r.uncertainty_product >= 1.0 / 16.0 - 1e-14);
    }
    auto r0 = squeezing_factors(evolve(f, p, 0.0), 1);
    CHECK(r0.uncertainty_product == 1.0 / 16.0);  // exact: (1/4)*(1/4)
    CHECK(r0.dx2() == 0.25);
    CHECK(r0.dy2() == 0.25);
}

TEST_CASE("uncertainty product never beats the commutator bound") {
    auto f = coherent_amplitudes(3.0, 1e-12, 8);
    ModelParams p = ij(2, 5.0);
    for (int N : {1, 2})
        for (int i = 0; i < 50; ++i) {
            const double T = 0.17 * i;
            auto r = squeezing_factors(evolve(f, p, T), N);
            const double bound = r.commutator * r.commutator / 16.0;
            CHECK(r.uncertainty_product >= bound - 1e-10);
        }
}

TEST_CASE("pinned Q_1 in the revival window") {
    auto f = coherent_amplitudes(8.0, 1e-12, 7);
    auto r = squeezing_factors(evolve(f, ij(3), 0.5), 1);
    CHECK(std::abs(r.Q - pins::kQ1Half) <= 1e-9);
}

TEST_CASE("rescale parameter b") {
    CHECK(rescale_parameter_b(Nonlinearity::standard) == 2.0 / 3.0);
    CHECK(rescale_parameter_b(Nonlinearity::intensity_dependent) == 0.5);
}

TEST_CASE("rescaled factor: definition, start value, and free function") {
    auto f = coherent_amplitudes(8.0, 1e-12, 7);
    ModelParams p = ij(3);
    RescaledSqueezing v(f, p, 1);
    CHECK(v.b() == 0.5);
    CHECK(v.order() == 1);
    CHECK(std::abs(v.at(0.0) - 1.0) <= 1e-10);

    const double nbar = mean_photon_number(f);
    for (double T : {0.4, 1.0, 3.7}) {
        const double q =
            squeezing_factors(evolve(f, p, v.b() / 1 * T), 1).Q;
        CHECK(std::abs(v.at(T) - (nbar - q) / nbar) <= 1e-14);
        CHECK(rescaled_squeezing(f, p, 1, T) == v.at(T));
    }

    auto rec = v.record(2.0);
    CHECK(rec.T == 2.0);
    CHECK(rec.V.has_value());
    CHECK(*rec.V == v.at(2.0));
    CHECK(std::abs(*rec.V - (nbar - rec.Q) / nbar) <= 1e-14);

    RescaledSqueezing v2(f, p, 2);
    CHECK(std::abs(v2.at(0.0) - 1.0) <= 1e-10);
    const double q2 = squeezing_factors(evolve(f, p, 0.25 * 3.0), 2).Q;
    CHECK(std::abs(v2.at(3.0) - (nbar * nbar - q2) / (nbar * nbar)) <= 1e-14);
}

TEST_CASE("rescaled factor rejects degenerate and invalid input") {
    auto vac = custom_state({{1.0, 0.0}}, 4);
    CHECK_THROWS_AS(RescaledSqueezing(vac, ij(1), 1), DegenerateInput);
    auto f = coherent_amplitudes(2.0, 1e-12, 4);
    CHECK_THROWS_AS(RescaledSqueezing(f, ij(1), 0), InvalidParameter);
}

TEST_CASE("mu_1 exact: single-photon intensity coupling gives 1/(n+1)") {
    ModelParams p = ij(1);
    for (int n = 0; n <= 200; ++n) {
        const double expect = 1.0 / double(n + 1);
        // gamma carries O(gamma * eps) log-gamma noise; after the difference
        // and the 1/(2(n+1)) division that is a flat absolute error floor.
        CHECK(std::abs(mu1_exact(p, n) - expect) <= 2e-13);
    }
}

TEST_CASE("mu_1 exact: pinned m = 3 values and approach to 2") {
    ModelParams p = ij(3);
    CHECK(std::abs(mu1_exact(p, 200) - pins::kMu1At200) <= 1e-9);
    CHECK(std::abs(mu1_exact(p, 500) - pins::kMu1At500) <= 1e-9);
    CHECK(std::abs(mu1_exact(p, 500) - 2.0) < 0.05);
    double prev = mu1_exact(p, 50);
    for (int n = 51; n <= 500; ++n) {
        const double cur = mu1_exact(p, n);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("mu_1 regime guards") {
    CHECK_THROWS_AS(mu1_exact(ij(1, 5.0), 10), UnsupportedRegime);
    CHECK_THROWS_AS(mu1_exact(ij(1), -1), InvalidParameter);
    CHECK_THROWS_AS(mu1_asymptotic(sj(3), 64.0), UnsupportedRegime);
    CHECK_THROWS_AS(mu1_asymptotic(ij(3, 2.0), 64.0), UnsupportedRegime);
    CHECK_THROWS_AS(mu1_asymptotic(ij(3), 0.0), InvalidParameter);
}

TEST_CASE("mu_1 asymptotic: dyadic value at nbar = 64, m = 3") {
    // 1/4 (8 + 54/64 + 94/4096) is exactly representable
    CHECK(mu1_asymptotic(ij(3), 64.0) == pins::kMu1Asym64);
    // The two quantities share only the leading term (their 1/nbar
    // coefficients differ by 9), so the gap must shrink like 9/nbar.
    const double d500 = mu1_asymptotic(ij(3), 500.0) - mu1_exact(ij(3), 500);
    const double d5000 = mu1_asymptotic(ij(3), 5000.0) - mu1_exact(ij(3), 5000);
    CHECK(std::abs(d500) < 10.0 / 500.0);
    CHECK(std::abs(d5000) < 10.0 / 5000.0);
    CHECK(d500 / d5000 > 9.5);
    CHECK(d500 / d5000 < 10.5);
}

TEST_CASE("readout-fidelity inequality and thresholds at m = 3") {
    CHECK(std::abs(intensity_inequality_lhs(ij(3), 54.0) - 1.0) <= 1e-15);
    CHECK(intensity_inequality_lhs(ij(3), 108.0) < 1.0);
    CHECK(intensity_inequality_lhs(ij(3), 27.0) > 1.0);
    CHECK_THROWS_AS(intensity_inequality_lhs(sj(3), 64.0), UnsupportedRegime);

    CHECK(intensity_condition(ij(3), 1) == pins::kThreshIJCMN1);
    CHECK(intensity_condition(ij(3), 2) == pins::kThreshIJCMN2);
    CHECK(intensity_condition(sj(3), 1) == pins::kThreshSJCMN1);
    CHECK(intensity_condition(sj(3), 2) == pins::kThreshSJCMN2);
    CHECK_THROWS_AS(intensity_condition(ij(1), 1), UnsupportedRegime);
    CHECK_THROWS_AS(intensity_condition(ij(3), 3), UnsupportedRegime);
}

TEST_CASE("inversion readout from normal squeezing") {
    const double r = 1.0 / std::sqrt(2.0);
    auto f = custom_state({{r, 0.0}, {0, 0}, {0, 0}, {r, 0.0}}, 4);
    for (double eta : {0.0, 20.0}) {
        ModelParams p = ij(1, eta);
        CHECK(std::abs(inversion_from_squeezing(f, p, 0.0) - 1.0) <= 1e-12);
        for (double T : {0.3, 1.1, 2.9, 6.2}) {
            const double direct = inversion_closed_form(f, p, T);
            CHECK(std::abs(inversion_from_squeezing(f, p, T) - direct) <=
                  1e-10);
        }
    }
}

TEST_CASE("inversion readout guards its preconditions") {
    const double r = 1.0 / std::sqrt(2.0);
    auto bad = custom_state({{r, 0.0}, {r, 0.0}}, 4);  // <a> != 0
    CHECK_THROWS_AS(inversion_from_squeezing(bad, ij(1), 1.0),
                    UnsupportedState);
    auto ok = custom_state({{r, 0.0}, {0, 0}, {0, 0}, {r, 0.0}}, 4);
    CHECK_THROWS_AS(inversion_from_squeezing(ok, ij(2), 1.0),
                    UnsupportedRegime);
}
