#include "spdc/lg_modes.hpp"
#include "spdc/errors.hpp"

#include <cmath>

namespace spdc {

void LGModeSpec::validate() const {
    if (p < 0) throw argument_error("LGModeSpec: radial index p must be >= 0");
    if (!(waist > 0)) throw argument_error("LGModeSpec: waist must be > 0");
}

complexd t_coefficient(int p, int ell, int u, double waist) {
    if (p < 0) throw argument_error("t_coefficient: p must be >= 0");
    if (u < 0 || u > p) throw argument_error("t_coefficient: u out of range [0, p]");
    if (!(waist > 0)) throw argument_error("t_coefficient: waist must be > 0");
    int al = std::abs(ell);
    // log of sqrt(p!(p+|l|)!/pi) / ((p-u)!(|l|+u)!u!)
    double lg = 0.5 * (std::lgamma(p + 1.0) + std::lgamma(p + al + 1.0) - std::log(pi))
                - std::lgamma(p - u + 1.0) - std::lgamma(al + u + 1.0) - std::lgamma(u + 1.0);
    double mag = std::exp(lg) * std::pow(waist / std::sqrt(2.0), 2 * u + al + 1);
    double sign = ((p + u) % 2 == 0) ? 1.0 : -1.0;
    // i^ell, with i^(-|l|) = conj(i^|l|)
    static const complexd ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    complexd il = ipow[((ell % 4) + 4) % 4];
    return sign * mag * il;
}

Eigen::ArrayXd t_coefficients_ell0(int p, double waist) {
    Eigen::ArrayXd t(p + 1);
    for (int u = 0; u <= p; ++u) t[u] = t_coefficient(p, 0, u, waist).real();
    return t;
}

complexd lg_amplitude(const LGModeSpec& mode, double rho, double phi) {
    mode.validate();
    if (rho < 0) throw argument_error("lg_amplitude: rho must be >= 0");
    int al = std::abs(mode.ell);
    double rho2 = rho * rho;
    // sum_u T_u rho^(2u+|l|) = rho^|l| * Horner in rho^2
    complexd acc = t_coefficient(mode.p, mode.ell, mode.p, mode.waist);
    for (int u = mode.p - 1; u >= 0; --u)
        acc = acc * rho2 + t_coefficient(mode.p, mode.ell, u, mode.waist);
    double gauss = std::exp(-rho2 * mode.waist * mode.waist / 4.0);
    complexd angular = (mode.ell == 0)
                           ? complexd(1.0, 0.0)
                           : std::exp(complexd(0.0, mode.ell * phi));
    return acc * std::pow(rho, al) * gauss * angular;
}

} // namespace spdc
