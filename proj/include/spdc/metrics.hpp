#ifndef SPDC_METRICS_HPP
#define SPDC_METRICS_HPP

#include <limits>

#include "spdc/overlap_engine.hpp"

namespace spdc {

// Rectangular spectral window on the dimensionless grid axis, given in
// signal-arm coordinates; the idler arm carries the mirrored window so each
// arm's filter sits on its own spectrum. With a monochromatic pump all
// three integrals (pairs, both singles) then restrict to the same window;
// for windows centered at x = 0 this is identical to applying one common
// window to both arms.
struct FilterWindow {
    enum class Kind { None, Rect };
    Kind kind = Kind::None;
    double center = 0;
    double width = 0;

    static FilterWindow none();
    static FilterWindow rect(double center, double width);
    void validate() const;
};

struct EfficiencyReport {
    double S2 = 0;             // relative pair collection
    double S1_s = 0, S1_i = 0; // relative singles
    double H_s = 0, H_i = 0;   // heralding efficiencies
    double H = 0;              // sqrt(H_s H_i)
    double B = std::numeric_limits<double>::quiet_NaN();  // set by sweeps
};

// Integral of the piecewise-linear interpolant of y over [a, b] clipped to
// the grid; fractional end cells are weighted exactly.
double windowed_trapezoid(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y,
                          double a, double b);

double pair_collection(const ModeAmplitudeTable& table, const FilterWindow& filter);

enum class Arm { Signal, Idler };
double singles(const ModeAmplitudeTable& table, Arm arm, const FilterWindow& filter);

EfficiencyReport heralding(const ModeAmplitudeTable& table, const FilterWindow& filter);

double relative_brightness(double S2, double S2_max);

} // namespace spdc

#endif
