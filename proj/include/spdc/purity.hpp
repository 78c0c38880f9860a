#ifndef SPDC_PURITY_HPP
#define SPDC_PURITY_HPP

#include <Eigen/Dense>
#include <vector>

#include "spdc/overlap_engine.hpp"

namespace spdc {

struct PumpSpectrum {
    enum class Kind { Monochromatic, Gaussian };
    Kind kind = Kind::Monochromatic;
    double sigma_p = 0;  // rad/s; envelope exp(-(Ws+Wi)^2 / sigma_p^2)

    static PumpSpectrum monochromatic();
    static PumpSpectrum gaussian(double sigma_p);
    void validate() const;
};

struct JSAGrid {
    Eigen::ArrayXd omega_s_grid;  // rad/s, uniform
    Eigen::ArrayXd omega_i_grid;
    Eigen::MatrixXcd amplitude;   // rows: signal index, cols: idler index
    double sigma_p = 0;
    double config_hash = 0;       // provenance only
};

struct PurityResult {
    double purity = 0;
    std::vector<double> schmidt_coefficients;  // descending, sum 1
    double sigma_p_used = 0;
    bool unimodal_warning = false;  // golden search saw a non-unimodal shape
};

enum class JsaMethod { SliceEngine, DirectQuadrature };

// Window of the (Ws, Wi) plane used for Schmidt decompositions: centered on
// the phase-matching ridge, half-width window_std standard widths of the
// 1D phase-matching profile. The +-4-std default under-covers the ringing
// tails of the truncated Gaussian poling and inflates purity, hence 8.
struct JsaWindow {
    double center = 0;  // antidiagonal position of the PM ridge (rad/s)
    double radius = 0;  // half-width (rad/s)
    double pm_std = 0;  // standard width of the PM profile
};
JsaWindow jsa_window(const SourceConfig& cfg, double window_std = 8.0);

// JSA under SGVM with a Gaussian pump: amplitude = pump envelope times
// C00 at the Eq.-9 scalar offset. SliceEngine exploits that C00 depends on
// (Ws, Wi) only through that scalar; DirectQuadrature is the oracle path.
JSAGrid build_jsa(const SourceConfig& cfg, const PumpSpectrum& pump, int n_grid,
                  JsaMethod method = JsaMethod::SliceEngine,
                  double window_std = 8.0);

// Schmidt purity P = sum_k lambda_k^2 from the SVD of the amplitude matrix.
PurityResult schmidt_purity(const JSAGrid& jsa, int rank_cap = 64);

// Golden-section maximization of purity over log10(sigma_p). The default
// interval spans one decade either side of the analytic matched bandwidth
// of the Gaussian-poling profile, sigma_p* = 2 sqrt(2) / (sigma |D|).
struct BandwidthInterval {
    double log10_lo = 0, log10_hi = 0;
    bool use_default = true;
};
PurityResult optimize_pump_bandwidth(const SourceConfig& cfg, int n_grid = 320,
                                     BandwidthInterval interval = {},
                                     double window_std = 8.0);

double matched_pump_bandwidth(const SourceConfig& cfg);

} // namespace spdc

#endif
