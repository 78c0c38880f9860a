#ifndef SPDC_CONFIG_HPP
#define SPDC_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spdc/metrics.hpp"
#include "spdc/overlap_engine.hpp"
#include "spdc/sweep.hpp"

namespace spdc {

enum class Preset { Desk, Paper };

struct PurityOptions {
    int n_grid = 320;
    double window_std = 8.0;
    std::optional<double> log10_sigma_p_lo;
    std::optional<double> log10_sigma_p_hi;
};

struct ScalingOptions {
    std::vector<double> lengths;  // m
    bool filtered = false;
};

struct SweepOptions {
    double log10_xi_min = -2.0;
    double log10_xi_max = 1.0;
    double log10_xi_step = 0.2;  // desk default; paper preset uses 0.05
    std::vector<double> phi_values{0.0};
    std::vector<double> b_targets;
    double band_half_width = 0.02;
};

// Everything a run needs, parsed from one JSON config file.
struct RunSetup {
    SourceConfig source;
    FilterWindow filter = FilterWindow::none();
    SweepOptions sweep;
    PurityOptions purity;
    ScalingOptions scaling;
    std::uint64_t config_hash = 0;  // over the canonicalized config text
    std::string canonical_text;
};

// Strict parser: unknown keys are hard errors, duplicate keys are parse
// errors, violated invariants name the invariant. preset fills grid/step
// defaults that the file leaves unset.
RunSetup parse_config(const std::string& text, Preset preset);
RunSetup load_config(const std::string& path, Preset preset);

std::uint64_t fnv1a_hash(const std::string& text);
std::string hash_hex(std::uint64_t h);

} // namespace spdc

#endif
