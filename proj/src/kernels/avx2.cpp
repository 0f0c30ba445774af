// AVX2+FMA kernel variants.  This translation unit is compiled with
// -mavx2 -mfma and must only be entered after the runtime cpuid check in
// dispatch.cpp.
//
// The vector sin/cos uses two-stage Cody-Waite reduction by pi/2 (33-bit
// split plus full-precision tail, both applied with FMA so each stage rounds
// once) and the classic double-precision polynomials on |r| <= pi/4.  That
// is accurate to a few 1e-16 absolute for |x| < 2^26, far beyond the phase
// arguments this library produces (T*gamma up to a few 1e7); lanes at or
// above 2^26 fall back to libm.

#include "table.hpp"
#include "scalar_body.hpp"

#include <immintrin.h>
#include <cmath>

namespace jcm::kernels::detail {
namespace {

constexpr double kTwoOverPi = 6.36619772367581382433e-01;
constexpr double kPio2Hi    = 1.57079632673412561417e+00;  // 33 high bits of pi/2
constexpr double kPio2Lo    = 6.07710050650619224932e-11;  // pi/2 - kPio2Hi
constexpr double kMaxFast   = 67108864.0;                  // 2^26

inline __m256d abs_pd(__m256d x) {
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
}

inline void sincos4(__m256d x, __m256d& s, __m256d& c) {
    const __m256d q =
        _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(kTwoOverPi)),
                        _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Hi), x);
    r = _mm256_fnmadd_pd(q, _mm256_set1_pd(kPio2Lo), r);

    const __m256i q64 = _mm256_cvtepi32_epi64(_mm256_cvtpd_epi32(q));
    const __m256i one64 = _mm256_set1_epi64x(1);
    const __m256i b0 = _mm256_and_si256(q64, one64);
    const __m256i b1 = _mm256_and_si256(_mm256_srli_epi64(q64, 1), one64);
    const __m256d swap =
        _mm256_castsi256_pd(_mm256_cmpeq_epi64(b0, one64));
    const __m256d sin_sign =
        _mm256_castsi256_pd(_mm256_slli_epi64(b1, 63));
    const __m256d cos_sign =
        _mm256_castsi256_pd(_mm256_slli_epi64(_mm256_xor_si256(b0, b1), 63));

    const __m256d z = _mm256_mul_pd(r, r);

    __m256d ps = _mm256_set1_pd(1.58969099521155010221e-10);
    ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(-2.50507602534068634195e-08));
    ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(2.75573137070700676789e-06));
    ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(-1.98412698298579493134e-04));
    ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(8.33333333332248946124e-03));
    ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(-1.66666666666666324348e-01));
    const __m256d sinr = _mm256_fmadd_pd(_mm256_mul_pd(z, r), ps, r);

    __m256d pc = _mm256_set1_pd(-1.13596475577881948265e-11);
    pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(2.08757232129817482790e-09));
    pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(-2.75573143513906633035e-07));
    pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(2.48015872894767294178e-05));
    pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(-1.38888888888741095749e-03));
    pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(4.16666666666666019037e-02));
    const __m256d w =
        _mm256_fnmadd_pd(z, _mm256_set1_pd(0.5), _mm256_set1_pd(1.0));
    const __m256d cosr = _mm256_fmadd_pd(_mm256_mul_pd(z, z), pc, w);

    s = _mm256_xor_pd(_mm256_blendv_pd(sinr, cosr, swap), sin_sign);
    c = _mm256_xor_pd(_mm256_blendv_pd(cosr, sinr, swap), cos_sign);
}

inline void sincos4_checked(__m256d x, __m256d& s, __m256d& c) {
    const __m256d big =
        _mm256_cmp_pd(abs_pd(x), _mm256_set1_pd(kMaxFast), _CMP_GE_OQ);
    if (_mm256_movemask_pd(big)) {
        alignas(32) double xs[4], ss[4], cc[4];
        _mm256_store_pd(xs, x);
        for (int k = 0; k < 4; ++k) {
            ss[k] = std::sin(xs[k]);
            cc[k] = std::cos(xs[k]);
        }
        s = _mm256_load_pd(ss);
        c = _mm256_load_pd(cc);
        return;
    }
    sincos4(x, s, c);
}

// fixed-order horizontal sum: (a+c) + (b+d)
inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

void sincos_batch_v(const double* x, double* s, double* c, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vs, vc;
        sincos4_checked(_mm256_loadu_pd(x + i), vs, vc);
        _mm256_storeu_pd(s + i, vs);
        _mm256_storeu_pd(c + i, vc);
    }
    for (; i < n; ++i) {
        s[i] = std::sin(x[i]);
        c[i] = std::cos(x[i]);
    }
}

void evolve_amplitudes_v(std::size_t n, double T, double eta_half,
                         const double* gamma, const double* kappa,
                         const double* cr, const double* ci,
                         double* er, double* ei, double* gr, double* gi) {
    const __m256d vT = _mm256_set1_pd(T);
    const __m256d veta = _mm256_set1_pd(eta_half);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d msign = _mm256_set1_pd(-0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d g = _mm256_loadu_pd(gamma + i);
        __m256d sn, cs;
        sincos4_checked(_mm256_mul_pd(vT, g), sn, cs);
        const __m256d snv = _mm256_mul_pd(sn, _mm256_div_pd(one, g));
        const __m256d a = _mm256_mul_pd(veta, snv);
        const __m256d b = _mm256_mul_pd(_mm256_loadu_pd(kappa + i), snv);
        const __m256d vcr = _mm256_loadu_pd(cr + i);
        const __m256d vci = _mm256_loadu_pd(ci + i);
        _mm256_storeu_pd(er + i, _mm256_fmadd_pd(vci, a, _mm256_mul_pd(vcr, cs)));
        _mm256_storeu_pd(ei + i, _mm256_fnmadd_pd(vcr, a, _mm256_mul_pd(vci, cs)));
        _mm256_storeu_pd(gr + i, _mm256_mul_pd(vci, b));
        _mm256_storeu_pd(gi + i, _mm256_xor_pd(_mm256_mul_pd(vcr, b), msign));
    }
    for (; i < n; ++i)
        evolve_one(T, eta_half, gamma[i], kappa[i], cr[i], ci[i],
                   er[i], ei[i], gr[i], gi[i]);
}

double weighted_ab_cos_sum_v(std::size_t n, double t, const double* w,
                             const double* a, const double* b, const double* x) {
    const __m256d vt = _mm256_set1_pd(t);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d sn, cs;
        sincos4_checked(_mm256_mul_pd(vt, _mm256_loadu_pd(x + i)), sn, cs);
        const __m256d term =
            _mm256_fmadd_pd(_mm256_loadu_pd(b + i), cs, _mm256_loadu_pd(a + i));
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), term, acc);
    }
    double total = hsum(acc);
    for (; i < n; ++i)
        total += w[i] * (a[i] + b[i] * std::cos(t * x[i]));
    return total;
}

double weighted_cos_sum_v(std::size_t n, double t, const double* w,
                          const double* x) {
    const __m256d vt = _mm256_set1_pd(t);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d sn, cs;
        sincos4_checked(_mm256_mul_pd(vt, _mm256_loadu_pd(x + i)), sn, cs);
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), cs, acc);
    }
    double total = hsum(acc);
    for (; i < n; ++i)
        total += w[i] * std::cos(t * x[i]);
    return total;
}

double two_frequency_sum_v(std::size_t n, double t, const double* w,
                           const double* b, const double* xl, const double* xh) {
    const __m256d vt = _mm256_set1_pd(t);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d sl, cl, sh, ch;
        sincos4_checked(_mm256_mul_pd(vt, _mm256_loadu_pd(xl + i)), sl, cl);
        sincos4_checked(_mm256_mul_pd(vt, _mm256_loadu_pd(xh + i)), sh, ch);
        const __m256d term = _mm256_fmadd_pd(
            _mm256_loadu_pd(b + i), _mm256_mul_pd(sh, sl), _mm256_mul_pd(ch, cl));
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), term, acc);
    }
    double total = hsum(acc);
    for (; i < n; ++i) {
        const double cl = std::cos(t * xl[i]), sl = std::sin(t * xl[i]);
        const double ch = std::cos(t * xh[i]), sh = std::sin(t * xh[i]);
        total += w[i] * (ch * cl + b[i] * sh * sl);
    }
    return total;
}

std::complex<double> weighted_conj_dot_v(std::size_t n, const double* w,
                                         const double* xr, const double* xi,
                                         const double* yr, const double* yi) {
    __m256d accr = _mm256_setzero_pd();
    __m256d acci = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vw = _mm256_loadu_pd(w + i);
        const __m256d vxr = _mm256_loadu_pd(xr + i);
        const __m256d vxi = _mm256_loadu_pd(xi + i);
        const __m256d vyr = _mm256_loadu_pd(yr + i);
        const __m256d vyi = _mm256_loadu_pd(yi + i);
        const __m256d re = _mm256_fmadd_pd(vxi, vyi, _mm256_mul_pd(vxr, vyr));
        const __m256d im = _mm256_fnmadd_pd(vxi, vyr, _mm256_mul_pd(vxr, vyi));
        accr = _mm256_fmadd_pd(vw, re, accr);
        acci = _mm256_fmadd_pd(vw, im, acci);
    }
    double re = hsum(accr), im = hsum(acci);
    for (; i < n; ++i) {
        re += w[i] * (xr[i] * yr[i] + xi[i] * yi[i]);
        im += w[i] * (xr[i] * yi[i] - xi[i] * yr[i]);
    }
    return {re, im};
}

double weighted_norm_sum_v(std::size_t n, const double* w,
                           const double* xr, const double* xi) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vxr = _mm256_loadu_pd(xr + i);
        const __m256d vxi = _mm256_loadu_pd(xi + i);
        const __m256d sq = _mm256_fmadd_pd(vxi, vxi, _mm256_mul_pd(vxr, vxr));
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), sq, acc);
    }
    double total = hsum(acc);
    for (; i < n; ++i)
        total += w[i] * (xr[i] * xr[i] + xi[i] * xi[i]);
    return total;
}

void rk4_step_v(std::size_t n, double h, double eta_half, const double* kappa,
                double* er, double* ei, double* gr, double* gi) {
    const __m256d va = _mm256_set1_pd(eta_half);
    const __m256d vh2 = _mm256_set1_pd(0.5 * h);
    const __m256d vh = _mm256_set1_pd(h);
    const __m256d vh6 = _mm256_set1_pd(h / 6.0);
    const __m256d two = _mm256_set1_pd(2.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vk = _mm256_loadu_pd(kappa + i);
        const __m256d e_r = _mm256_loadu_pd(er + i);
        const __m256d e_i = _mm256_loadu_pd(ei + i);
        const __m256d g_r = _mm256_loadu_pd(gr + i);
        const __m256d g_i = _mm256_loadu_pd(gi + i);

        // derivative: (a Ei + k Gi, -(a Er + k Gr), k Ei - a Gi, a Gr - k Er)
        auto der = [&](__m256d Ei, __m256d Gi) {
            return _mm256_fmadd_pd(va, Ei, _mm256_mul_pd(vk, Gi));
        };
        auto dei = [&](__m256d Er, __m256d Gr) {
            return _mm256_xor_pd(_mm256_fmadd_pd(va, Er, _mm256_mul_pd(vk, Gr)),
                                 _mm256_set1_pd(-0.0));
        };
        auto dgr = [&](__m256d Ei, __m256d Gi) {
            return _mm256_fnmadd_pd(va, Gi, _mm256_mul_pd(vk, Ei));
        };
        auto dgi = [&](__m256d Er, __m256d Gr) {
            return _mm256_fnmadd_pd(vk, Er, _mm256_mul_pd(va, Gr));
        };

        const __m256d k1er = der(e_i, g_i), k1ei = dei(e_r, g_r);
        const __m256d k1gr = dgr(e_i, g_i), k1gi = dgi(e_r, g_r);

        __m256d er2 = _mm256_fmadd_pd(vh2, k1er, e_r);
        __m256d ei2 = _mm256_fmadd_pd(vh2, k1ei, e_i);
        __m256d gr2 = _mm256_fmadd_pd(vh2, k1gr, g_r);
        __m256d gi2 = _mm256_fmadd_pd(vh2, k1gi, g_i);
        const __m256d k2er = der(ei2, gi2), k2ei = dei(er2, gr2);
        const __m256d k2gr = dgr(ei2, gi2), k2gi = dgi(er2, gr2);

        er2 = _mm256_fmadd_pd(vh2, k2er, e_r);
        ei2 = _mm256_fmadd_pd(vh2, k2ei, e_i);
        gr2 = _mm256_fmadd_pd(vh2, k2gr, g_r);
        gi2 = _mm256_fmadd_pd(vh2, k2gi, g_i);
        const __m256d k3er = der(ei2, gi2), k3ei = dei(er2, gr2);
        const __m256d k3gr = dgr(ei2, gi2), k3gi = dgi(er2, gr2);

        er2 = _mm256_fmadd_pd(vh, k3er, e_r);
        ei2 = _mm256_fmadd_pd(vh, k3ei, e_i);
        gr2 = _mm256_fmadd_pd(vh, k3gr, g_r);
        gi2 = _mm256_fmadd_pd(vh, k3gi, g_i);
        const __m256d k4er = der(ei2, gi2), k4ei = dei(er2, gr2);
        const __m256d k4gr = dgr(ei2, gi2), k4gi = dgi(er2, gr2);

        auto combine = [&](__m256d y, __m256d k1, __m256d k2, __m256d k3,
                           __m256d k4) {
            const __m256d mid = _mm256_mul_pd(two, _mm256_add_pd(k2, k3));
            const __m256d sum = _mm256_add_pd(_mm256_add_pd(k1, mid), k4);
            return _mm256_fmadd_pd(vh6, sum, y);
        };
        _mm256_storeu_pd(er + i, combine(e_r, k1er, k2er, k3er, k4er));
        _mm256_storeu_pd(ei + i, combine(e_i, k1ei, k2ei, k3ei, k4ei));
        _mm256_storeu_pd(gr + i, combine(g_r, k1gr, k2gr, k3gr, k4gr));
        _mm256_storeu_pd(gi + i, combine(g_i, k1gi, k2gi, k3gi, k4gi));
    }
    for (; i < n; ++i)
        rk4_one(h, eta_half, kappa[i], er[i], ei[i], gr[i], gi[i]);
}

} // namespace

const Table& avx2_table() {
    static const Table t = {
        sincos_batch_v,
        evolve_amplitudes_v,
        weighted_ab_cos_sum_v,
        weighted_cos_sum_v,
        two_frequency_sum_v,
        weighted_conj_dot_v,
        weighted_norm_sum_v,
        rk4_step_v,
    };
    return t;
}

bool have_avx2_build() { return true; }

} // namespace jcm::kernels::detail
