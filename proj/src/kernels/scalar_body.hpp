#pragma once
// Scalar elementwise bodies, shared between the scalar reference kernels and
// the remainder loops of the vector kernels so both paths agree bit-for-bit
// on the elements they process scalarly.

#include <cmath>
#include <cstddef>

namespace jcm::kernels::detail {

inline void evolve_one(double T, double eta_half, double gamma, double kappa,
                       double cr, double ci,
                       double& er, double& ei, double& gr, double& gi) {
    const double x = T * gamma;
    const double sn = std::sin(x);
    const double cs = std::cos(x);
    const double inv = 1.0 / gamma;
    const double a = eta_half * sn * inv;   // -Im G1
    const double b = kappa * sn * inv;      // -Im G2 / 1
    er = cr * cs + ci * a;
    ei = ci * cs - cr * a;
    gr = ci * b;
    gi = -cr * b;
}

// RK4 on one block; a = eta/2, k = kappa_n.  The derivative is
//   e' = -i(a e + k g),  g' = -i(k e - a g)
// written out in real components.
inline void rk4_one(double h, double a, double k,
                    double& er, double& ei, double& gr, double& gi) {
    const double h2 = 0.5 * h;
    const double h6 = h / 6.0;

    auto de_r = [&](double Ei, double Gi) { return a * Ei + k * Gi; };
    auto de_i = [&](double Er, double Gr) { return -(a * Er + k * Gr); };
    auto dg_r = [&](double Ei, double Gi) { return k * Ei - a * Gi; };
    auto dg_i = [&](double Er, double Gr) { return a * Gr - k * Er; };

    const double k1er = de_r(ei, gi), k1ei = de_i(er, gr);
    const double k1gr = dg_r(ei, gi), k1gi = dg_i(er, gr);

    double er2 = er + h2 * k1er, ei2 = ei + h2 * k1ei;
    double gr2 = gr + h2 * k1gr, gi2 = gi + h2 * k1gi;
    const double k2er = de_r(ei2, gi2), k2ei = de_i(er2, gr2);
    const double k2gr = dg_r(ei2, gi2), k2gi = dg_i(er2, gr2);

    er2 = er + h2 * k2er; ei2 = ei + h2 * k2ei;
    gr2 = gr + h2 * k2gr; gi2 = gi + h2 * k2gi;
    const double k3er = de_r(ei2, gi2), k3ei = de_i(er2, gr2);
    const double k3gr = dg_r(ei2, gi2), k3gi = dg_i(er2, gr2);

    er2 = er + h * k3er; ei2 = ei + h * k3ei;
    gr2 = gr + h * k3gr; gi2 = gi + h * k3gi;
    const double k4er = de_r(ei2, gi2), k4ei = de_i(er2, gr2);
    const double k4gr = dg_r(ei2, gi2), k4gi = dg_i(er2, gr2);

    er += h6 * (k1er + 2.0 * (k2er + k3er) + k4er);
    ei += h6 * (k1ei + 2.0 * (k2ei + k3ei) + k4ei);
    gr += h6 * (k1gr + 2.0 * (k2gr + k3gr) + k4gr);
    gi += h6 * (k1gi + 2.0 * (k2gi + k3gi) + k4gi);
}

} // namespace jcm::kernels::detail
