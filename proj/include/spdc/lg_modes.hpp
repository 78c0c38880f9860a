#ifndef SPDC_LG_MODES_HPP
#define SPDC_LG_MODES_HPP

#include <Eigen/Dense>

#include "spdc/common.hpp"

namespace spdc {

// One Laguerre-Gauss mode in transverse-momentum space.
// The core pipeline is restricted to ell = 0; nonzero ell is supported by
// the coefficient formula only.
struct LGModeSpec {
    int p = 0;          // radial index, >= 0
    int ell = 0;        // azimuthal index
    double waist = 0;   // beam waist w (m), > 0

    void validate() const;
};

// Polynomial coefficient T_u^{p,l} of the momentum-space LG expansion,
//   LG_p^l(rho, phi) = exp(-rho^2 w^2/4 + i l phi) sum_u T_u rho^(2u+|l|),
//   T_u^{p,l} = sqrt(p!(p+|l|)!/pi) (w/sqrt2)^(2u+|l|+1) (-1)^(p+u) i^l
//               / ((p-u)! (|l|+u)! u!).
// Factorial ratios go through lgamma, exact well beyond p = 20.
complexd t_coefficient(int p, int ell, int u, double waist);

// All T_u for ell = 0 (real in that case), u = 0..p.
Eigen::ArrayXd t_coefficients_ell0(int p, double waist);

// LG_p^l evaluated at transverse momentum (rho, phi); Horner in rho^2.
complexd lg_amplitude(const LGModeSpec& mode, double rho, double phi);

} // namespace spdc

#endif
