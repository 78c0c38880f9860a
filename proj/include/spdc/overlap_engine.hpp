#ifndef SPDC_OVERLAP_ENGINE_HPP
#define SPDC_OVERLAP_ENGINE_HPP

#include <Eigen/Dense>
#include <string>
#include <utility>

#include "spdc/common.hpp"
#include "spdc/phase_match.hpp"

namespace spdc {

// Full source description in dimensionless focusing parameters.
//
// The spectral grid is dimensionless: for type-II (and SGVM) configs the
// grid value x maps to the signal detuning via W_s = -x/(D L) (tight
// focusing then shifts spectra toward negative x, matching the reference
// grid [-406.12, 59.14]); for degenerate type-0, x = s.sqrt(G L) W with the
// calibration s = 2 sqrt(2) (see spectral_unit_scale below).
struct SourceConfig {
    DispersionModel dispersion;
    PolingProfile poling;
    double xi_p = 0, xi_s = 0, xi_i = 0;
    double lambda_p = 0, lambda_s = 0, lambda_i = 0;  // m
    double n_p = 0, n_s = 0, n_i = 0;
    int p_max = 4;
    Eigen::ArrayXd omega_grid;  // ordered dimensionless detunings
    // Unit factor of the type-0 spectral axis relative to sqrt(G L) W.
    // Calibrated so the reference grids and filter bandwidths reproduce the
    // published type-0 results; equals sqrt(8) = axis normalized with the
    // 40 mm type-II length rather than the 5 mm type-0 crystal.
    double spectral_unit_scale = 2.8284271247461903;

    void validate() const;

    double length() const { return poling.length; }
    double phi_phys() const { return 2.0 * dispersion.phi_tilde / poling.length; }

    // Waists recovered from the focusing parameters.
    double waist_p() const;
    double waist_s() const;
    double waist_i() const;

    // Scalar frequency offset K(x) entering dk = K + transverse terms.
    double offset_from_grid(double x) const;
    // Physical signal-detuning magnitude per unit grid value (|dW/dx|),
    // used to convert grid-integrated quantities to physical bandwidth.
    double omega_per_grid_unit() const;

    Eigen::ArrayXd offsets() const;  // K over the whole grid
};

// Reference spectral grids (desk presets coarsen the step, same range).
Eigen::ArrayXd default_grid_type2(double step = 1.6);
Eigen::ArrayXd default_grid_type0(double step = 0.518);

Eigen::ArrayXd trapezoid_weights(const Eigen::ArrayXd& x);

enum class AmplitudeMethod { SliceAnalytic, DirectQuadrature };

// Frequency-resolved mode amplitudes C_{ps,pi}(W) for all radial pairs up
// to p_max (ell = 0).
//
// The (q_s, q_i) integral at fixed z is a 4D Gaussian with polynomial
// prefactor and is evaluated in closed form through the moment matrix
//   M(a,b) = int d2qs d2qi rho_s^2a rho_i^2b
//            exp(-alpha rho_s^2 - beta rho_i^2 - 2 gamma q_s.q_i),
//   alpha = a_p + a_s, beta = a_p + a_i, gamma = a_p,
//   a_p = w_p^2/4 + i z/(2 k0_p), a_{s,i} = w^2/4 - i z/(2 k0_{s,i}).
// The remaining z integral int chi2(z) I(z) exp(-i K z) dz is expanded in
// Legendre polynomials of z so the oscillatory part is exact at any K:
//   int_{-1}^{1} P_n(t) exp(-i a t) dt = 2 (-i)^n j_n(a).
class ModeAmplitudeEngine {
public:
    explicit ModeAmplitudeEngine(const SourceConfig& cfg);

    int n_pairs() const { return np_; }
    int pair_index(int p_s, int p_i) const;

    // C for one scalar offset K, all pairs.
    Eigen::VectorXcd amplitudes_at_offset(double K) const;
    // Rows = offsets, cols = pairs.
    Eigen::MatrixXcd amplitudes_at_offsets(const Eigen::ArrayXd& K) const;

    int legendre_degree() const { return degree_; }

private:
    int pmax_;
    int np_;
    int degree_;
    double half_length_;
    Eigen::MatrixXcd scaled_coeffs_;  // (degree+1) x n_pairs, includes L and (-i)^n
};

// Table of C_{ps,pi}(x) over the config's grid.
struct ModeAmplitudeTable {
    SourceConfig config;
    Eigen::MatrixXcd amplitudes;   // rows: grid index, cols: pair index
    Eigen::ArrayXd grid_weights;   // trapezoid weights of omega_grid

    int pair_index(int p_s, int p_i) const;
    Eigen::VectorXcd amplitude(int p_s, int p_i) const;
    Eigen::ArrayXd density(int p_s, int p_i) const;  // |C|^2 over the grid
};

// Single amplitude; SliceAnalytic uses the engine above, DirectQuadrature
// reduces the transverse integral to (rho_s, rho_i, theta) and integrates
// by nested adaptive quadrature to ~1e-7 relative (the oracle path).
complexd spectral_amplitude(const SourceConfig& cfg, int p_s, int p_i, double x,
                            AmplitudeMethod method = AmplitudeMethod::SliceAnalytic);

// Oracle path at an explicit scalar offset K (1/m); the z integral goes
// through longitudinal_amplitude in closed form.
complexd direct_amplitude_at_offset(const SourceConfig& cfg, int p_s, int p_i, double K);

ModeAmplitudeTable build_table(const SourceConfig& cfg);

// |int C'_a conj(C'_b) dW| of the normalized spectral amplitudes.
double normalized_overlap(const ModeAmplitudeTable& table,
                          std::pair<int, int> pair_a, std::pair<int, int> pair_b);

// Convenience constructor used by the CLI and tests: computes indices,
// dispersion, default grid, and validates. Materials are registry names.
SourceConfig make_source_config(MatchingType type, const PolingProfile& poling,
                                const std::string& mat_p, const std::string& mat_s,
                                const std::string& mat_i, double lambda_p,
                                double lambda_s, double lambda_i, double xi_p,
                                double xi_s, double xi_i, double phi_tilde,
                                int p_max = 4, double grid_step_scale = 1.0);

} // namespace spdc

#endif
