#include "spdc/purity.hpp"
#include "spdc/errors.hpp"
#include "spdc/quadrature.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace spdc {

PumpSpectrum PumpSpectrum::monochromatic() { return PumpSpectrum{}; }

PumpSpectrum PumpSpectrum::gaussian(double sigma_p) {
    PumpSpectrum p;
    p.kind = Kind::Gaussian;
    p.sigma_p = sigma_p;
    p.validate();
    return p;
}

void PumpSpectrum::validate() const {
    if (kind == Kind::Gaussian && !(sigma_p > 0))
        throw argument_error("PumpSpectrum: sigma_p must be > 0");
}

namespace {

void require_sgvm(const SourceConfig& cfg) {
    if (cfg.dispersion.matching_type != MatchingType::SGVM)
        throw mismatch_type_error("purity: config must use an SGVM dispersion model");
}

// Eq.-9 scalar offset at (Ws, Wi), transverse part excluded.
double sgvm_offset(const SourceConfig& cfg, double ws, double wi) {
    const DispersionModel& d = cfg.dispersion;
    return cfg.phi_phys() + 0.5 * d.D * (wi - ws) + 0.5 * d.G_s * ws * ws
           + 0.5 * d.G_i * wi * wi;
}

} // namespace

JsaWindow jsa_window(const SourceConfig& cfg, double window_std) {
    require_sgvm(cfg);
    ModeAmplitudeEngine engine(cfg);
    // 1D profile along the antidiagonal Ws = -w, Wi = +w
    const DispersionModel& d = cfg.dispersion;
    double span = 120.0 / (std::abs(d.D) * cfg.length() / 2.0);
    int n = 4001;
    Eigen::ArrayXd w(n), g(n);
    Eigen::ArrayXd K(n);
    for (int k = 0; k < n; ++k) {
        w[k] = -span + 2.0 * span * k / (n - 1);
        K[k] = sgvm_offset(cfg, -w[k], w[k]);
    }
    Eigen::MatrixXcd c = engine.amplitudes_at_offsets(K);
    g = c.col(engine.pair_index(0, 0)).array().abs2();
    double norm = g.sum();
    double mean = (g * w).sum() / norm;
    double var = (g * (w - mean).square()).sum() / norm;
    JsaWindow win;
    win.pm_std = std::sqrt(var);
    win.center = mean;
    win.radius = window_std * win.pm_std;
    return win;
}

JSAGrid build_jsa(const SourceConfig& cfg, const PumpSpectrum& pump, int n_grid,
                  JsaMethod method, double window_std) {
    require_sgvm(cfg);
    pump.validate();
    if (pump.kind != PumpSpectrum::Kind::Gaussian)
        throw argument_error("build_jsa: Gaussian pump spectrum required");
    if (n_grid < 8) throw argument_error("build_jsa: n_grid too small");

    JsaWindow win = jsa_window(cfg, window_std);
    JSAGrid jsa;
    jsa.sigma_p = pump.sigma_p;
    jsa.omega_s_grid.resize(n_grid);
    jsa.omega_i_grid.resize(n_grid);
    for (int k = 0; k < n_grid; ++k) {
        double t = 2.0 * k / (n_grid - 1.0) - 1.0;
        jsa.omega_s_grid[k] = -win.center + win.radius * t;
        jsa.omega_i_grid[k] = win.center + win.radius * t;
    }
    jsa.amplitude.resize(n_grid, n_grid);

    if (method == JsaMethod::SliceEngine) {
        ModeAmplitudeEngine engine(cfg);
        Eigen::ArrayXd K(n_grid * n_grid);
        for (int a = 0; a < n_grid; ++a)
            for (int b = 0; b < n_grid; ++b)
                K[a * n_grid + b] = sgvm_offset(cfg, jsa.omega_s_grid[a], jsa.omega_i_grid[b]);
        Eigen::MatrixXcd c = engine.amplitudes_at_offsets(K);
        int i00 = engine.pair_index(0, 0);
        for (int a = 0; a < n_grid; ++a)
            for (int b = 0; b < n_grid; ++b)
                jsa.amplitude(a, b) = c(a * n_grid + b, i00);
    } else {
        // oracle: adaptive transverse quadrature per cell
        for (int a = 0; a < n_grid; ++a)
            for (int b = 0; b < n_grid; ++b) {
                double K = sgvm_offset(cfg, jsa.omega_s_grid[a], jsa.omega_i_grid[b]);
                jsa.amplitude(a, b) = direct_amplitude_at_offset(cfg, 0, 0, K);
            }
    }

    for (int a = 0; a < n_grid; ++a)
        for (int b = 0; b < n_grid; ++b) {
            double s = jsa.omega_s_grid[a] + jsa.omega_i_grid[b];
            jsa.amplitude(a, b) *= std::exp(-s * s / (pump.sigma_p * pump.sigma_p));
        }
    return jsa;
}

PurityResult schmidt_purity(const JSAGrid& jsa, int rank_cap) {
    if (!(jsa.amplitude.norm() > 0))
        throw degenerate_input_error("schmidt_purity: zero JSA");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(jsa.amplitude);
    Eigen::ArrayXd sv = svd.singularValues().array();
    Eigen::ArrayXd lam = sv.square();
    double total = lam.sum();
    if (!(total > 0) || !std::isfinite(total))
        throw numeric_error("schmidt_purity: SVD failed", 0.0, 1.0);
    lam /= total;
    PurityResult r;
    int keep = std::min<int>(rank_cap, static_cast<int>(lam.size()));
    r.schmidt_coefficients.assign(lam.data(), lam.data() + keep);
    r.purity = lam.square().sum();
    r.sigma_p_used = jsa.sigma_p;
    return r;
}

double matched_pump_bandwidth(const SourceConfig& cfg) {
    require_sgvm(cfg);
    if (cfg.poling.kind == PolingProfile::Kind::Gaussian)
        return 2.0 * std::sqrt(2.0) / (cfg.poling.sigma * std::abs(cfg.dispersion.D));
    // uniform poling: match the sinc main-lobe std instead
    return 2.0 * std::sqrt(2.0) * 2.0 / (cfg.poling.length * std::abs(cfg.dispersion.D));
}

PurityResult optimize_pump_bandwidth(const SourceConfig& cfg, int n_grid,
                                     BandwidthInterval interval, double window_std) {
    require_sgvm(cfg);
    double lo, hi;
    if (interval.use_default) {
        double center = std::log10(matched_pump_bandwidth(cfg));
        lo = center - 1.0;
        hi = center + 1.0;
    } else {
        lo = interval.log10_lo;
        hi = interval.log10_hi;
    }
    auto purity_of = [&](double log_sp) {
        JSAGrid jsa = build_jsa(cfg, PumpSpectrum::gaussian(std::pow(10.0, log_sp)), n_grid,
                                JsaMethod::SliceEngine, window_std);
        return schmidt_purity(jsa).purity;
    };
    GoldenResult g = golden_maximize(purity_of, lo, hi, 0.01);
    JSAGrid best = build_jsa(cfg, PumpSpectrum::gaussian(std::pow(10.0, g.x)), n_grid,
                             JsaMethod::SliceEngine, window_std);
    PurityResult r = schmidt_purity(best);
    r.unimodal_warning = !g.unimodal;
    return r;
}

} // namespace spdc
