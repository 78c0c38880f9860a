#ifndef SPDC_SWEEP_HPP
#define SPDC_SWEEP_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "spdc/metrics.hpp"
#include "spdc/overlap_engine.hpp"

namespace spdc {

// Completed-cell progress callback; counts are monotone, no ordering
// guarantee among worker threads.
using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

struct SweepGrid {
    Eigen::ArrayXd log10_xi_p;
    Eigen::ArrayXd log10_xi_s;         // xi_i = xi_s throughout
    std::vector<double> phi_values;    // single entry for type-II

    static Eigen::ArrayXd log_axis(double lo, double hi, double step);
};

struct SweepResult {
    SweepGrid grid;
    std::vector<Eigen::MatrixXd> S2_maps;  // one per phi; (i_xi_p, i_xi_s)
    std::vector<Eigen::MatrixXd> H_maps;
    std::vector<Eigen::MatrixXd> B_maps;   // S2 / S2_max over everything swept
    double S2_max = 0;
    int argmax_phi = 0, argmax_p = 0, argmax_s = 0;
    std::uint64_t config_hash = 0;

    // re-normalize B against an external maximum (e.g. APNLC against the
    // PPNLC sweep maximum)
    void normalize_to(double S2_reference);
};

SweepResult grid_sweep(const SourceConfig& base, const SweepGrid& grid,
                       const FilterWindow& filter = FilterWindow::none(),
                       int threads = 0, const ProgressFn& progress = {});

struct CurvePoint {
    double B_target = 0;   // requested B (max-H strategy) or 0
    double B = 0, H = 0;   // achieved values, exactly the map entries
    double log10_xi_p = 0, log10_xi_s = 0;
    double phi = 0;
    int band_doublings = 0;  // >0 means the B band had to be widened
};

// Orange curve of the reference analysis: fix xi_s, maximize B over xi_p.
std::vector<CurvePoint> strategy_fixed_collection(const SweepResult& sweep);
// Cyan curve: fix xi_p, maximize B over xi_s.
std::vector<CurvePoint> strategy_fixed_pump(const SweepResult& sweep);
// Red curve: best H among cells with |B - target| <= band; empty bands are
// doubled up to three times.
std::vector<CurvePoint> strategy_max_H_at_B(const SweepResult& sweep,
                                            const std::vector<double>& B_targets,
                                            double band_half_width = 0.02);

enum class FitTarget { H, Log10XiP, Log10XiS };

struct TradeoffFit {
    FitTarget target = FitTarget::H;
    std::array<double, 4> alpha{};  // f(B) = a0 + a1 B + a2 B^2 + a3 B^3
    double residual_rms = 0;
    double eval(double B) const {
        return alpha[0] + B * (alpha[1] + B * (alpha[2] + B * alpha[3]));
    }
};

TradeoffFit fit_tradeoff(const std::vector<CurvePoint>& curve, FitTarget target);

struct ScalingResult {
    double exponent = 0;
    double std_error = 0;
    std::vector<std::pair<double, double>> points;  // (L, S2 in physical units)
};

// S2 vs crystal length at fixed focusing parameters (waists rescale with L).
// filtered=true applies a narrow rectangular filter (fixed physical width,
// centered per length on the P00 peak).
ScalingResult length_scaling(const SourceConfig& base, const std::vector<double>& lengths,
                             bool filtered);

} // namespace spdc

#endif
