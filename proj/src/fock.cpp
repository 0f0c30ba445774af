#include "jcm/fock.hpp"
#include "jcm/errors.hpp"

#include <cmath>
#include <string>

namespace jcm {
namespace {

// Compensated accumulator; the truncation bookkeeping resolves tails down to
// ~1e-14 against the unit total, well below the default 1e-12.
struct KahanSum {
    double s = 0.0, c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

constexpr double kMaxAlpha = 25.0;     // keeps exp(-alpha^2) normal
constexpr double kMinTailTol = 1e-14;  // resolvable against the unit total

} // namespace

TruncatedFieldState coherent_amplitudes(double alpha, double tail_tol,
                                        int headroom) {
    if (!(alpha >= 0.0) || !std::isfinite(alpha) || alpha > kMaxAlpha)
        throw InvalidParameter("coherent amplitude must lie in [0, " +
                               std::to_string(kMaxAlpha) + "]");
    if (!(tail_tol > 0.0) || tail_tol >= 1.0)
        throw InvalidParameter("tail tolerance must lie in (0, 1)");
    if (tail_tol < kMinTailTol)
        throw InvalidParameter(
            "tail tolerance below 1e-14 is not resolvable in double precision");
    if (headroom < 0)
        throw InvalidParameter("headroom must be >= 0");

    TruncatedFieldState st;
    st.tail_tol = tail_tol;
    st.alpha = alpha;

    if (alpha == 0.0) {
        st.c.assign(std::size_t(headroom) + 1, {0.0, 0.0});
        st.c[0] = {1.0, 0.0};
        st.n_star = 0;
        st.tail_mass = 0.0;
        return st;
    }

    const double lam = alpha * alpha;
    const int search_from = int(std::ceil(lam));
    const int hard_cap =
        search_from + int(60.0 * std::sqrt(lam + 1.0)) + 400;

    // Walk the Poisson pmf recursively until the tail clears the tolerance.
    KahanSum cum;
    double p = std::exp(-lam);
    cum.add(p);
    int n = 0;
    while (n < search_from || 1.0 - cum.s > tail_tol) {
        if (++n > hard_cap)
            throw InvalidParameter("tail tolerance unreachable within cutoff cap");
        p *= lam / n;
        cum.add(p);
    }
    st.n_star = n;

    const int n_max = st.n_star + headroom;
    st.c.resize(std::size_t(n_max) + 1);
    const double ln_alpha = std::log(alpha);
    KahanSum stored;
    for (int k = 0; k <= n_max; ++k) {
        const double amp =
            std::exp(-0.5 * lam + k * ln_alpha -
                     0.5 * std::lgamma(double(k) + 1.0));
        st.c[std::size_t(k)] = {amp, 0.0};
        stored.add(amp * amp);
    }
    st.tail_mass = std::max(0.0, 1.0 - stored.s);
    return st;
}

TruncatedFieldState custom_state(std::vector<std::complex<double>> amplitudes,
                                 int headroom) {
    if (amplitudes.empty())
        throw InvalidParameter("custom state needs at least one amplitude");
    if (headroom < 0)
        throw InvalidParameter("headroom must be >= 0");
    double norm2 = 0.0;
    for (const auto& a : amplitudes) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
            throw InvalidParameter("custom amplitudes must be finite");
        norm2 += std::norm(a);
    }
    if (norm2 <= 0.0)
        throw InvalidParameter("custom state has zero norm");

    TruncatedFieldState st;
    st.norm_factor = 1.0 / std::sqrt(norm2);
    int last = 0;
    for (int k = 0; k < int(amplitudes.size()); ++k)
        if (std::norm(amplitudes[std::size_t(k)]) > 0.0) last = k;
    amplitudes.resize(std::size_t(last) + 1);
    for (auto& a : amplitudes) a *= st.norm_factor;
    amplitudes.resize(amplitudes.size() + std::size_t(headroom), {0.0, 0.0});
    st.c = std::move(amplitudes);
    st.n_star = last;
    st.tail_mass = 0.0;
    st.tail_tol = 0.0;
    return st;
}

TruncatedFieldState truncate(const FieldSpec& spec, double tail_tol,
                             int headroom) {
    if (const auto* co = std::get_if<CoherentSpec>(&spec))
        return coherent_amplitudes(co->alpha, tail_tol, headroom);
    return custom_state(std::get<CustomSpec>(spec).amplitudes, headroom);
}

std::vector<double> photon_distribution(const TruncatedFieldState& st) {
    std::vector<double> p(st.c.size());
    for (std::size_t n = 0; n < st.c.size(); ++n) p[n] = std::norm(st.c[n]);
    return p;
}

double mean_photon_number(const TruncatedFieldState& st) {
    double nbar = 0.0;
    for (std::size_t n = 0; n < st.c.size(); ++n)
        nbar += double(n) * std::norm(st.c[n]);
    return nbar;
}

} // namespace jcm
