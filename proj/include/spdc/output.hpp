#ifndef SPDC_OUTPUT_HPP
#define SPDC_OUTPUT_HPP

#include <ostream>
#include <string>
#include <vector>

#include "spdc/config.hpp"
#include "spdc/metrics.hpp"
#include "spdc/purity.hpp"
#include "spdc/sweep.hpp"

namespace spdc {

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

struct OutputHeader {
    std::string tool_version;
    std::string config_hash;
    std::string preset;
};

void write_header(std::ostream& os, const OutputHeader& h, const std::string& columns);

// (p_s, p_i, omega_dimensionless, re_C, im_C)
void write_table_csv(std::ostream& os, const ModeAmplitudeTable& table, const OutputHeader& h);

// (xi_p, xi_s, phi_tilde, filter_width, S2, S1_s, S1_i, H_s, H_i, H, B)
struct MetricsRow {
    double xi_p, xi_s, phi_tilde, filter_width;
    EfficiencyReport report;
};
void write_metrics_csv(std::ostream& os, const std::vector<MetricsRow>& rows,
                       const OutputHeader& h);

// (xi_p, xi_s, phi_tilde, B, H)
void write_sweep_csv(std::ostream& os, const SweepResult& sweep, const OutputHeader& h);

// strategy curves
void write_curve_csv(std::ostream& os, const std::vector<CurvePoint>& curve,
                     const OutputHeader& h);

// overlap matrix of the normalized spectral amplitudes
void write_overlap_csv(std::ostream& os, const Eigen::MatrixXd& overlap,
                       const std::vector<std::pair<int, int>>& pairs, const OutputHeader& h);

// (omega_s, omega_i, re, im)
void write_jsa_csv(std::ostream& os, const JSAGrid& jsa, const OutputHeader& h);

std::string fits_json(const std::vector<TradeoffFit>& fits, const OutputHeader& h);
std::string purity_json(const PurityResult& result, const OutputHeader& h);
std::string scaling_json(const ScalingResult& result, bool filtered, const OutputHeader& h);

} // namespace spdc

#endif
