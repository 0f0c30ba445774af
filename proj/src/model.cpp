#include "jcm/model.hpp"
#include "jcm/errors.hpp"

#include <cmath>
#include <string>

namespace jcm {

void validate(const ModelParams& p) {
    if (p.m < 1)
        throw InvalidParameter("transition order m must be >= 1, got " +
                               std::to_string(p.m));
    if (!std::isfinite(p.eta))
        throw InvalidParameter("detuning eta must be finite");
}

double intensity_function(const ModelParams& p, double x) {
    if (x < 0.0)
        throw InvalidParameter("intensity function argument must be >= 0");
    return p.kind == Nonlinearity::intensity_dependent ? std::sqrt(x) : 1.0;
}

double coupling_kernel(const ModelParams& p, int n) {
    validate(p);
    if (n < 0)
        throw InvalidParameter("photon index must be >= 0, got " +
                               std::to_string(n));
    // log((n+m)!/n!) = lgamma(n+m+1) - lgamma(n+1); fold f^2(n+m) in as well
    double lg = std::lgamma(double(n) + p.m + 1.0) - std::lgamma(double(n) + 1.0);
    if (p.kind == Nonlinearity::intensity_dependent)
        lg += std::log(double(n) + p.m);
    return std::exp(0.5 * lg);
}

double rabi_gamma(const ModelParams& p, int n) {
    // hypot keeps the eta = 0 and kappa >> eta limits exact
    return std::hypot(0.5 * p.eta, coupling_kernel(p, n));
}

RabiSpectrum rabi_spectrum(const ModelParams& p, int n_max) {
    validate(p);
    if (n_max < 0)
        throw InvalidParameter("spectrum cutoff must be >= 0");
    RabiSpectrum s;
    s.kappa.resize(std::size_t(n_max) + 1);
    s.gamma.resize(std::size_t(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        s.kappa[std::size_t(n)] = coupling_kernel(p, n);
        s.gamma[std::size_t(n)] = std::hypot(0.5 * p.eta, s.kappa[std::size_t(n)]);
    }
    return s;
}

} // namespace jcm
