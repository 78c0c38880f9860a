#include "spdc/metrics.hpp"
#include "spdc/errors.hpp"

#include <algorithm>
#include <cmath>

namespace spdc {

FilterWindow FilterWindow::none() { return FilterWindow{}; }

FilterWindow FilterWindow::rect(double center, double width) {
    FilterWindow f;
    f.kind = Kind::Rect;
    f.center = center;
    f.width = width;
    f.validate();
    return f;
}

void FilterWindow::validate() const {
    if (kind == Kind::Rect && !(width > 0))
        throw argument_error("FilterWindow: Rect width must be > 0");
}

double windowed_trapezoid(const Eigen::ArrayXd& x, const Eigen::ArrayXd& y,
                          double a, double b) {
    Eigen::Index n = x.size();
    double lo = std::max(a, x[0]), hi = std::min(b, x[n - 1]);
    if (!(lo < hi)) return 0.0;
    double acc = 0.0;
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        double cl = std::max(lo, x[k]), cr = std::min(hi, x[k + 1]);
        if (!(cl < cr)) continue;
        double h = x[k + 1] - x[k];
        auto lin = [&](double t) { return y[k] + (y[k + 1] - y[k]) * (t - x[k]) / h; };
        acc += 0.5 * (lin(cl) + lin(cr)) * (cr - cl);
    }
    return acc;
}

namespace {

// Integration domain on the signal grid axis. The idler arm carries the
// mirrored window (each arm's filter sits on its own spectrum), so pairs
// and both singles integrate over the same window.
struct Domain {
    double lo, hi;
    bool empty;
};

Domain domain_for(const ModeAmplitudeTable& t, const FilterWindow& f) {
    const Eigen::ArrayXd& x = t.config.omega_grid;
    Domain d{x[0], x[x.size() - 1], false};
    if (f.kind == FilterWindow::Kind::None) return d;
    d.lo = std::max(d.lo, f.center - 0.5 * f.width);
    d.hi = std::min(d.hi, f.center + 0.5 * f.width);
    d.empty = !(d.lo < d.hi);
    return d;
}

} // namespace

double pair_collection(const ModeAmplitudeTable& table, const FilterWindow& filter) {
    filter.validate();
    Domain d = domain_for(table, filter);
    if (d.empty) throw empty_support_error("pair_collection: filter window disjoint from grid");
    Eigen::ArrayXd p00 = table.density(0, 0);
    return windowed_trapezoid(table.config.omega_grid, p00, d.lo, d.hi);
}

double singles(const ModeAmplitudeTable& table, Arm arm, const FilterWindow& filter) {
    filter.validate();
    Domain d = domain_for(table, filter);
    if (d.empty) throw empty_support_error("singles: filter window disjoint from grid");
    int pmax = table.config.p_max;
    Eigen::ArrayXd sum = Eigen::ArrayXd::Zero(table.config.omega_grid.size());
    for (int p = 0; p <= pmax; ++p)
        sum += (arm == Arm::Signal) ? table.density(0, p) : table.density(p, 0);
    return windowed_trapezoid(table.config.omega_grid, sum, d.lo, d.hi);
}

EfficiencyReport heralding(const ModeAmplitudeTable& table, const FilterWindow& filter) {
    EfficiencyReport r;
    r.S2 = pair_collection(table, filter);
    r.S1_s = singles(table, Arm::Signal, filter);
    r.S1_i = singles(table, Arm::Idler, filter);
    if (!(r.S1_s > 0) || !(r.S1_i > 0))
        throw degenerate_input_error("heralding: zero singles");
    r.H_s = r.S2 / r.S1_i;
    r.H_i = r.S2 / r.S1_s;
    r.H = std::sqrt(r.H_s * r.H_i);
    return r;
}

double relative_brightness(double S2, double S2_max) {
    if (!(S2 > 0)) throw argument_error("relative_brightness: S2 must be > 0");
    if (S2 > S2_max)
        throw argument_error("relative_brightness: S2 exceeds the sweep maximum");
    return S2 / S2_max;
}

} // namespace spdc
