#ifndef SPDC_PHASE_MATCH_HPP
#define SPDC_PHASE_MATCH_HPP

#include <Eigen/Dense>

#include "spdc/common.hpp"

namespace spdc {

enum class MatchingType { TypeII_CW, Type0_Degenerate_CW, SGVM };

// Longitudinal phase-mismatch coefficients.
//
// The mismatch used throughout (global sign is immaterial, every poling
// profile here gives a longitudinal amplitude even in delta-k):
//   dk = phi + (1/u_s - 1/u_p) W_s + (1/u_i - 1/u_p) W_i
//        + (G_s/2) W_s^2 + (G_i/2) W_i^2
//        + |q_s+q_i|^2/(2 k0_p) - |q_s|^2/(2 k0_s) - |q_i|^2/(2 k0_i)
// which restricts, for a monochromatic pump (W_s = -W_i = W), to
//   dk_cw = phi + D W + G W^2 + (transverse), D = 1/u_s - 1/u_i.
struct DispersionModel {
    MatchingType matching_type = MatchingType::TypeII_CW;
    double phi_tilde = 0;  // dimensionless residual mismatch, phi_phys * L / 2
    double D = 0;          // 1/u_s - 1/u_i (s/m)
    double G_s = 0, G_i = 0;  // group-velocity dispersions (s^2/m)
    double G = 0;             // (G_s + G_i)/2
    double k0_p = 0, k0_s = 0, k0_i = 0;  // central wavenumbers (1/m)
    double u_p = 0, u_s = 0, u_i = 0;     // group velocities (m/s)

    void validate() const;
};

// chi2(z) profile on z in [-L/2, L/2].
struct PolingProfile {
    enum class Kind { Uniform, Gaussian };
    Kind kind = Kind::Uniform;
    double length = 0;  // L (m)
    double sigma = 0;   // Gaussian width (m); chi2(z) = exp(-z^2/(2 sigma^2))

    static PolingProfile uniform(double L);
    static PolingProfile gaussian(double sigma, double L);
    void validate() const;
    double chi2(double z) const;
};

using Vec2 = Eigen::Vector2d;

// phi_phys = 2 phi_tilde / L is supplied by the caller through the scalar
// offset; these functions take the physical residual phi (1/m) explicitly so
// they stay independent of L.
double delta_k_general(const DispersionModel& d, double phi, double omega_s,
                       double omega_i, const Vec2& qs, const Vec2& qi);
double delta_k_cw(const DispersionModel& d, double phi, double omega,
                  const Vec2& qs, const Vec2& qi);
// Eq.-9 form; requires an SGVM-type model.
double delta_k_sgvm(const DispersionModel& d, double phi, double omega_s,
                    double omega_i, const Vec2& qs, const Vec2& qi);

// int_{-L/2}^{L/2} chi2(z) exp(-i dk z) dz.
// Uniform: L sinc(dk L/2).  Gaussian: truncated integral via erf of complex
// argument; for sigma <= L/6 the closed form sqrt(2 pi) sigma exp(-sigma^2
// dk^2/2) is used (truncation error < 1e-9 relative).
complexd longitudinal_amplitude(const PolingProfile& poling, double delta_k);

} // namespace spdc

#endif
