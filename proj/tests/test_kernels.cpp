#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "jcm/errors.hpp"
#include "jcm/kernels.hpp"

#include <cmath>
#include <complex>
#include <cstring>
#include <random>
#include <string>
#include <vector>

using namespace jcm::kernels;

namespace {

struct IsaGuard {
    Isa saved = active_isa();
    ~IsaGuard() { set_isa(saved); }
};

std::vector<double> rand_vec(std::mt19937& rng, std::size_t n, double lo,
                             double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v)
        x = d(rng);
    return v;
}

const std::vector<std::size_t> kSizes = {0, 1, 2, 3, 4, 5, 7, 8, 9, 31, 64, 129};

} // namespace

TEST_CASE("isa plumbing") {
    CHECK(std::string(isa_name(Isa::scalar)) == "scalar");
    CHECK(std::string(isa_name(Isa::avx2)) == "avx2");
    CHECK(isa_available(Isa::scalar));

    IsaGuard guard;
    set_isa(Isa::scalar);
    CHECK(active_isa() == Isa::scalar);
    if (isa_available(Isa::avx2)) {
        set_isa(Isa::avx2);
        CHECK(active_isa() == Isa::avx2);
    } else {
        CHECK_THROWS_AS(set_isa(Isa::avx2), jcm::UnsupportedRegime);
    }
}

TEST_CASE("sincos_batch tracks libm") {
    IsaGuard guard;
    for (Isa isa : {Isa::scalar, Isa::avx2}) {
        if (!isa_available(isa))
            continue;
        set_isa(isa);
        std::vector<double> x;
        for (int i = 0; i < 5000; ++i)
            x.push_back(-50.0 + 0.02 * i);           // moderate phases
        for (int i = 0; i < 5000; ++i)
            x.push_back(1e3 + 3999.0 * i);           // up to ~2e7
        x.push_back(1e9);                            // deep fallback range
        x.push_back(-1e9);
        std::vector<double> s(x.size()), c(x.size());
        sincos_batch(x.data(), s.data(), c.data(), x.size());
        double worst = 0.0, pyth = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            worst = std::max({worst, std::abs(s[i] - std::sin(x[i])),
                              std::abs(c[i] - std::cos(x[i]))});
            pyth = std::max(pyth, std::abs(s[i] * s[i] + c[i] * c[i] - 1.0));
        }
        CHECK(worst <= 5e-15);
        CHECK(pyth <= 1e-15);
    }
}

TEST_CASE("scalar and avx2 kernels agree") {
    if (!isa_available(Isa::avx2))
        return;
    IsaGuard guard;
    std::mt19937 rng(7741);

    for (std::size_t n : kSizes) {
        const auto w = rand_vec(rng, n, 0.0, 1.0);
        const auto a = rand_vec(rng, n, -1.0, 1.0);
        const auto b = rand_vec(rng, n, -1.0, 1.0);
        const auto x = rand_vec(rng, n, 0.1, 300.0);
        const auto x2 = rand_vec(rng, n, 0.1, 300.0);
        const auto cr = rand_vec(rng, n, -1.0, 1.0);
        const auto ci = rand_vec(rng, n, -1.0, 1.0);
        const auto yr = rand_vec(rng, n, -1.0, 1.0);
        const auto yi = rand_vec(rng, n, -1.0, 1.0);
        const double t = 2.7, eta_half = 3.0;

        set_isa(Isa::scalar);
        const double s1 = weighted_ab_cos_sum(n, t, w.data(), a.data(),
                                              b.data(), x.data());
        const double s2 = weighted_cos_sum(n, t, w.data(), x.data());
        const double s3 = two_frequency_sum(n, t, w.data(), b.data(), x.data(),
                                            x2.data());
        const auto s4 = weighted_conj_dot(n, w.data(), cr.data(), ci.data(),
                                          yr.data(), yi.data());
        const double s5 = weighted_norm_sum(n, w.data(), cr.data(), ci.data());
        std::vector<double> er_s(n), ei_s(n), gr_s(n), gi_s(n);
        evolve_amplitudes(n, t, eta_half, x.data(), x2.data(), cr.data(),
                          ci.data(), er_s.data(), ei_s.data(), gr_s.data(),
                          gi_s.data());
        std::vector<double> rer = cr, rei = ci, rgr = yr, rgi = yi;
        rk4_step(n, 1e-3, eta_half, x.data(), rer.data(), rei.data(),
                 rgr.data(), rgi.data());

        set_isa(Isa::avx2);
        CHECK(std::abs(weighted_ab_cos_sum(n, t, w.data(), a.data(), b.data(),
                                           x.data()) - s1) <= 1e-12);
        CHECK(std::abs(weighted_cos_sum(n, t, w.data(), x.data()) - s2) <=
              1e-12);
        CHECK(std::abs(two_frequency_sum(n, t, w.data(), b.data(), x.data(),
                                         x2.data()) - s3) <= 1e-12);
        const auto v4 = weighted_conj_dot(n, w.data(), cr.data(), ci.data(),
                                          yr.data(), yi.data());
        CHECK(std::abs(v4 - s4) <= 1e-12);
        CHECK(std::abs(weighted_norm_sum(n, w.data(), cr.data(), ci.data()) -
                       s5) <= 1e-12);

        std::vector<double> er_v(n), ei_v(n), gr_v(n), gi_v(n);
        evolve_amplitudes(n, t, eta_half, x.data(), x2.data(), cr.data(),
                          ci.data(), er_v.data(), ei_v.data(), gr_v.data(),
                          gi_v.data());
        std::vector<double> ver = cr, vei = ci, vgr = yr, vgi = yi;
        rk4_step(n, 1e-3, eta_half, x.data(), ver.data(), vei.data(),
                 vgr.data(), vgi.data());
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(er_v[i] - er_s[i]) <= 1e-14);
            CHECK(std::abs(ei_v[i] - ei_s[i]) <= 1e-14);
            CHECK(std::abs(gr_v[i] - gr_s[i]) <= 1e-14);
            CHECK(std::abs(gi_v[i] - gi_s[i]) <= 1e-14);
            CHECK(std::abs(ver[i] - rer[i]) <= 1e-14);
            CHECK(std::abs(vei[i] - rei[i]) <= 1e-14);
            CHECK(std::abs(vgr[i] - rgr[i]) <= 1e-14);
            CHECK(std::abs(vgi[i] - rgi[i]) <= 1e-14);
        }
    }
}

TEST_CASE("kernels match naive reference arithmetic") {
    IsaGuard guard;
    set_isa(Isa::scalar);
    std::mt19937 rng(991);
    const std::size_t n = 57;
    const auto w = rand_vec(rng, n, 0.0, 1.0);
    const auto a = rand_vec(rng, n, -1.0, 1.0);
    const auto b = rand_vec(rng, n, -1.0, 1.0);
    const auto x = rand_vec(rng, n, 0.1, 40.0);
    const auto x2 = rand_vec(rng, n, 0.1, 40.0);
    const auto cr = rand_vec(rng, n, -1.0, 1.0);
    const auto ci = rand_vec(rng, n, -1.0, 1.0);
    const double t = 1.9;

    double r1 = 0, r2 = 0, r3 = 0, r5 = 0;
    std::complex<double> r4;
    for (std::size_t i = 0; i < n; ++i) {
        r1 += w[i] * (a[i] + b[i] * std::cos(t * x[i]));
        r2 += w[i] * std::cos(t * x[i]);
        r3 += w[i] * (std::cos(t * x2[i]) * std::cos(t * x[i]) +
                      b[i] * std::sin(t * x2[i]) * std::sin(t * x[i]));
        r4 += w[i] * std::conj(std::complex<double>(cr[i], ci[i])) *
              std::complex<double>(a[i], b[i]);
        r5 += w[i] * (cr[i] * cr[i] + ci[i] * ci[i]);
    }
    CHECK(std::abs(weighted_ab_cos_sum(n, t, w.data(), a.data(), b.data(),
                                       x.data()) - r1) <= 1e-13);
    CHECK(std::abs(weighted_cos_sum(n, t, w.data(), x.data()) - r2) <= 1e-13);
    CHECK(std::abs(two_frequency_sum(n, t, w.data(), b.data(), x.data(),
                                     x2.data()) - r3) <= 1e-13);
    CHECK(std::abs(weighted_conj_dot(n, w.data(), cr.data(), ci.data(),
                                     a.data(), b.data()) -
                   r4) <= 1e-13);
    CHECK(std::abs(weighted_norm_sum(n, w.data(), cr.data(), ci.data()) - r5) <=
          1e-13);
}

TEST_CASE("rk4_step matches a std::complex reference step") {
    IsaGuard guard;
    std::mt19937 rng(4311);
    const std::size_t n = 23;
    const auto kap = rand_vec(rng, n, 0.5, 30.0);
    const auto er0 = rand_vec(rng, n, -1.0, 1.0);
    const auto ei0 = rand_vec(rng, n, -1.0, 1.0);
    const auto gr0 = rand_vec(rng, n, -1.0, 1.0);
    const auto gi0 = rand_vec(rng, n, -1.0, 1.0);
    const double h = 2e-3, a = 1.5;

    using C = std::complex<double>;
    const C mi(0.0, -1.0);
    std::vector<C> e(n), g(n);
    for (std::size_t i = 0; i < n; ++i) {
        e[i] = {er0[i], ei0[i]};
        g[i] = {gr0[i], gi0[i]};
    }
    auto fe = [&](C ev, C gv, std::size_t i) { return mi * (a * ev + kap[i] * gv); };
    auto fg = [&](C ev, C gv, std::size_t i) { return mi * (kap[i] * ev - a * gv); };
    for (std::size_t i = 0; i < n; ++i) {
        const C k1e = fe(e[i], g[i], i), k1g = fg(e[i], g[i], i);
        const C k2e = fe(e[i] + 0.5 * h * k1e, g[i] + 0.5 * h * k1g, i);
        const C k2g = fg(e[i] + 0.5 * h * k1e, g[i] + 0.5 * h * k1g, i);
        const C k3e = fe(e[i] + 0.5 * h * k2e, g[i] + 0.5 * h * k2g, i);
        const C k3g = fg(e[i] + 0.5 * h * k2e, g[i] + 0.5 * h * k2g, i);
        const C k4e = fe(e[i] + h * k3e, g[i] + h * k3g, i);
        const C k4g = fg(e[i] + h * k3e, g[i] + h * k3g, i);
        e[i] += (h / 6.0) * (k1e + 2.0 * k2e + 2.0 * k3e + k4e);
        g[i] += (h / 6.0) * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
    }

    for (Isa isa : {Isa::scalar, Isa::avx2}) {
        if (!isa_available(isa))
            continue;
        set_isa(isa);
        auto er = er0, ei = ei0, gr = gr0, gi = gi0;
        rk4_step(n, h, a, kap.data(), er.data(), ei.data(), gr.data(),
                 gi.data());
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(er[i] - e[i].real()) <= 1e-15);
            CHECK(std::abs(ei[i] - e[i].imag()) <= 1e-15);
            CHECK(std::abs(gr[i] - g[i].real()) <= 1e-15);
            CHECK(std::abs(gi[i] - g[i].imag()) <= 1e-15);
        }
    }
}

TEST_CASE("kernels are deterministic within one isa") {
    IsaGuard guard;
    std::mt19937 rng(15);
    const std::size_t n = 129;
    const auto w = rand_vec(rng, n, 0.0, 1.0);
    const auto x = rand_vec(rng, n, 0.1, 2000.0);
    for (Isa isa : {Isa::scalar, Isa::avx2}) {
        if (!isa_available(isa))
            continue;
        set_isa(isa);
        const double first = weighted_cos_sum(n, 3.1, w.data(), x.data());
        const double second = weighted_cos_sum(n, 3.1, w.data(), x.data());
        CHECK(std::memcmp(&first, &second, sizeof first) == 0);
    }
}
