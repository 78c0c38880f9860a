#include <doctest.h>

#include <cmath>

#include "spdc/common.hpp"
#include "spdc/errors.hpp"
#include "spdc/lg_modes.hpp"
#include "spdc/metrics.hpp"
#include "spdc/overlap_engine.hpp"
#include "spdc/quadrature.hpp"

using namespace spdc;

namespace {

SourceConfig type2_cfg(double xi_p, double xi_s, double phi = 0.0, bool gaussian = false,
                       double step_scale = 2.0, int p_max = 4) {
    PolingProfile poling = gaussian ? PolingProfile::gaussian(0.01, 0.04)
                                    : PolingProfile::uniform(0.04);
    return make_source_config(MatchingType::TypeII_CW, poling, "ktp_y", "ktp_y", "ktp_z",
                              405e-9, 810e-9, 810e-9, xi_p, xi_s, xi_s, phi, p_max, step_scale);
}

SourceConfig type0_cfg(double xi_p, double xi_s, double phi, double step_scale = 1.0) {
    return make_source_config(MatchingType::Type0_Degenerate_CW, PolingProfile::uniform(5e-3),
                              "ktp_z", "ktp_z", "ktp_z", 405e-9, 810e-9, 810e-9, xi_p, xi_s,
                              xi_s, phi, 4, step_scale);
}

// Fixed-order 3D Gauss-Legendre evaluation of the transverse overlap for
// every radial pair at once; independent of the slice expansion. Converges
// spectrally thanks to the Gaussian mode envelopes.
Eigen::MatrixXd direct_all_pairs(const SourceConfig& cfg, double x, int nr = 280, int nt = 140) {
    int pmax = cfg.p_max;
    double K = cfg.offset_from_grid(x);
    double w_p = cfg.waist_p(), w_s = cfg.waist_s(), w_i = cfg.waist_i();
    const DispersionModel& d = cfg.dispersion;
    std::vector<Eigen::ArrayXd> ts, ti;
    for (int p = 0; p <= pmax; ++p) {
        ts.push_back(t_coefficients_ell0(p, w_s));
        ti.push_back(t_coefficients_ell0(p, w_i));
    }
    auto horner = [](const Eigen::ArrayXd& c, double r2) {
        double acc = c[c.size() - 1];
        for (Eigen::Index u = c.size() - 2; u >= 0; --u) acc = acc * r2 + c[u];
        return acc;
    };
    GaussLegendre gr = gauss_legendre(nr), gt = gauss_legendre(nt);
    double rs_cut = 20.0 / std::sqrt(0.5 * (w_s * w_s + w_p * w_p));
    double ri_cut = 20.0 / std::sqrt(0.5 * (w_i * w_i + w_p * w_p));
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(pmax + 1, pmax + 1);
    for (int a = 0; a < nr; ++a) {
        double rs = 0.5 * rs_cut * (gr.nodes[a] + 1.0), wrs = gr.weights[a] * 0.5 * rs_cut;
        double rs2 = rs * rs;
        for (int b = 0; b < nr; ++b) {
            double ri = 0.5 * ri_cut * (gr.nodes[b] + 1.0), wri = gr.weights[b] * 0.5 * ri_cut;
            double ri2 = ri * ri;
            double th_int = 0.0;
            for (int c = 0; c < nt; ++c) {
                double th = 0.5 * pi * (gt.nodes[c] + 1.0);
                double qp2 = rs2 + ri2 + 2.0 * rs * ri * std::cos(th);
                double dk = K + qp2 / (2.0 * d.k0_p) - rs2 / (2.0 * d.k0_s) - ri2 / (2.0 * d.k0_i);
                th_int += gt.weights[c] * 0.5 * pi
                          * longitudinal_amplitude(cfg.poling, dk).real()
                          * std::exp(-qp2 * w_p * w_p / 4.0);
            }
            th_int *= 2.0;  // theta symmetric about pi
            double base = wrs * wri * th_int * rs * ri
                          * std::exp(-rs2 * w_s * w_s / 4.0 - ri2 * w_i * w_i / 4.0);
            for (int ps = 0; ps <= pmax; ++ps)
                for (int pi_ = 0; pi_ <= pmax; ++pi_)
                    acc(ps, pi_) += base * horner(ts[ps], rs2) * horner(ti[pi_], ri2);
        }
    }
    return acc * 2.0 * pi * (w_p / std::sqrt(2.0 * pi));
}

} // namespace

TEST_CASE("plane-wave limit reproduces the sinc^2 spectrum within 1%") {
    SourceConfig cfg = type2_cfg(0.02, 0.02, 0.0, false, 1.0, 0);
    ModeAmplitudeEngine eng(cfg);
    double peak = std::norm(eng.amplitudes_at_offset(cfg.offset_from_grid(0.0))[0]);
    for (double x = -20.0; x <= 20.0; x += 1.0) {
        double val = std::norm(eng.amplitudes_at_offset(cfg.offset_from_grid(x))[0]) / peak;
        double ref = sinc(x / 2.0) * sinc(x / 2.0);
        CHECK(std::abs(val - ref) < 0.01);
    }
}

TEST_CASE("plane-wave limit: sinc zero suppressed below 1e-2 of peak") {
    SourceConfig cfg = type2_cfg(0.02, 0.02, 0.0, false, 1.0, 0);
    ModeAmplitudeEngine eng(cfg);
    double peak = std::norm(eng.amplitudes_at_offset(cfg.offset_from_grid(0.0))[0]);
    double at_zero = std::norm(eng.amplitudes_at_offset(cfg.offset_from_grid(2.0 * pi))[0]);
    CHECK(at_zero / peak < 1e-2);
}

TEST_CASE("slice amplitudes are essentially real for symmetric poling") {
    for (double xi : {0.3, 2.8}) {
        SourceConfig cfg = type2_cfg(xi, xi);
        ModeAmplitudeTable t = build_table(cfg);
        double scale = t.amplitudes.cwiseAbs().maxCoeff();
        CHECK(t.amplitudes.imag().cwiseAbs().maxCoeff() < 1e-9 * scale);
    }
}

TEST_CASE("slice vs fixed-order direct quadrature across the test matrix") {
    // all radial pairs, xi in {0.02, 0.3, 2.8, 10}, both poling profiles
    for (bool gaussian : {false, true}) {
        int nr = gaussian ? 180 : 240, nt = gaussian ? 90 : 120;
        for (double xi : {0.02, 0.3, 2.8, 10.0}) {
            SourceConfig cfg = type2_cfg(xi, xi, 0.0, gaussian);
            ModeAmplitudeEngine eng(cfg);
            for (double x : {-3.0, -25.0}) {
                Eigen::VectorXcd slice = eng.amplitudes_at_offset(cfg.offset_from_grid(x));
                Eigen::MatrixXd direct = direct_all_pairs(cfg, x, nr, nt);
                double scale = direct.cwiseAbs().maxCoeff();
                for (int ps = 0; ps <= 4; ++ps)
                    for (int pi_ = 0; pi_ <= 4; ++pi_) {
                        double s = slice[eng.pair_index(ps, pi_)].real();
                        double dd = direct(ps, pi_);
                        CHECK(std::abs(s - dd) < 1e-4 * std::max(std::abs(dd), 1e-2 * scale));
                    }
            }
        }
    }
}

TEST_CASE("slice vs direct quadrature for type-0") {
    SourceConfig cfg = type0_cfg(3.55, 3.98, 1.125);
    ModeAmplitudeEngine eng(cfg);
    for (double x : {0.0, 6.0}) {
        Eigen::VectorXcd slice = eng.amplitudes_at_offset(cfg.offset_from_grid(x));
        Eigen::MatrixXd direct = direct_all_pairs(cfg, x);
        double scale = direct.cwiseAbs().maxCoeff();
        for (int ps = 0; ps <= 4; ++ps)
            for (int pi_ = 0; pi_ <= 4; ++pi_) {
                double s = slice[eng.pair_index(ps, pi_)].real();
                double dd = direct(ps, pi_);
                CHECK(std::abs(s - dd) < 1e-4 * std::max(std::abs(dd), 1e-2 * scale));
            }
    }
}

TEST_CASE("adaptive DirectQuadrature agrees with SliceAnalytic at spot points") {
    SourceConfig cfg = type2_cfg(2.8, 2.8);
    struct Pt { int ps, pi; double x; };
    const Pt pts[10] = {{0, 0, -2.0}, {0, 0, -18.0}, {0, 1, -6.0}, {1, 0, -6.0}, {1, 1, -12.0},
                        {0, 2, -2.0}, {2, 1, -20.0}, {0, 3, -9.0}, {3, 3, -14.0}, {4, 0, -4.0}};
    double scale = 0.0;
    for (const auto& p : pts)
        scale = std::max(scale,
                         std::abs(spectral_amplitude(cfg, p.ps, p.pi, p.x).real()));
    for (const auto& p : pts) {
        complexd s = spectral_amplitude(cfg, p.ps, p.pi, p.x, AmplitudeMethod::SliceAnalytic);
        complexd dd = spectral_amplitude(cfg, p.ps, p.pi, p.x, AmplitudeMethod::DirectQuadrature);
        CHECK(std::abs(s.real() - dd.real())
              < 1e-4 * std::max(std::abs(dd.real()), 1e-2 * scale));
    }
}

TEST_CASE("p_max = 0 table contains exactly the fundamental row") {
    SourceConfig cfg = type2_cfg(0.3, 0.3, 0.0, false, 2.0, 0);
    ModeAmplitudeTable t = build_table(cfg);
    CHECK(t.amplitudes.cols() == 1);
    CHECK(t.amplitudes.rows() == cfg.omega_grid.size());
}

TEST_CASE("symmetric degenerate type-0 table is symmetric under arm exchange") {
    SourceConfig cfg = type0_cfg(1.0, 2.0, 0.875, 4.0);
    ModeAmplitudeTable t = build_table(cfg);
    double scale = t.amplitudes.cwiseAbs().maxCoeff();
    for (int ps = 0; ps <= 4; ++ps)
        for (int pi_ = 0; pi_ < ps; ++pi_) {
            Eigen::VectorXcd a = t.amplitude(ps, pi_), b = t.amplitude(pi_, ps);
            CHECK((a - b).cwiseAbs().maxCoeff() < 1e-6 * scale);
        }
}

TEST_CASE("tight focusing: fundamental mode central, higher modes shifted and suppressed") {
    SourceConfig cfg = type2_cfg(2.8, 2.8);
    ModeAmplitudeTable t = build_table(cfg);
    Eigen::Index k00, k03;
    double m00 = t.density(0, 0).maxCoeff(&k00);
    double m03 = t.density(0, 3).maxCoeff(&k03);
    CHECK(m00 > m03);                      // suppressed
    double x00 = cfg.omega_grid[k00], x03 = cfg.omega_grid[k03];
    CHECK(std::abs(x03) > std::abs(x00));  // shifted outward
}

TEST_CASE("normalized overlap: self-overlap is one") {
    SourceConfig cfg = type2_cfg(0.3, 0.3);
    ModeAmplitudeTable t = build_table(cfg);
    CHECK(normalized_overlap(t, {0, 1}, {0, 1}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("normalized overlap obeys Cauchy-Schwarz") {
    SourceConfig cfg = type2_cfg(1.0, 0.4);
    ModeAmplitudeTable t = build_table(cfg);
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b)
            CHECK(normalized_overlap(t, {0, a}, {0, b}) <= 1.0 + 1e-10);
}

TEST_CASE("loose focusing: near-unity spectral overlap") {
    SourceConfig cfg = type2_cfg(0.02, 0.02);
    ModeAmplitudeTable t = build_table(cfg);
    CHECK(normalized_overlap(t, {0, 0}, {0, 1}) > 0.95);
}

TEST_CASE("tight focusing: near spectral orthogonality") {
    SourceConfig cfg = type2_cfg(2.8, 2.8);
    ModeAmplitudeTable t = build_table(cfg);
    CHECK(normalized_overlap(t, {0, 0}, {0, 1}) < 0.3);
}

TEST_CASE("plane-wave separability at xi = 0.005") {
    SourceConfig cfg = type2_cfg(0.005, 0.005);
    ModeAmplitudeTable t = build_table(cfg);
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; b <= 4; ++b)
            CHECK(normalized_overlap(t, {0, a}, {0, b}) > 0.99);
}

TEST_CASE("grid refinement changes metrics by less than 0.2%") {
    for (double xi : {0.02, 2.8}) {
        SourceConfig coarse = type2_cfg(xi, xi, 0.0, false, 2.0);
        SourceConfig fine = type2_cfg(xi, xi, 0.0, false, 1.0);
        EfficiencyReport rc = heralding(build_table(coarse), FilterWindow::none());
        EfficiencyReport rf = heralding(build_table(fine), FilterWindow::none());
        CHECK(std::abs(rc.S2 - rf.S2) / rf.S2 < 2e-3);
        CHECK(std::abs(rc.H - rf.H) / rf.H < 2e-3);
    }
    EfficiencyReport rc = heralding(build_table(type0_cfg(3.55, 3.98, 0.875, 4.0)),
                                    FilterWindow::none());
    EfficiencyReport rf = heralding(build_table(type0_cfg(3.55, 3.98, 0.875, 1.0)),
                                    FilterWindow::none());
    CHECK(std::abs(rc.S2 - rf.S2) / rf.S2 < 2e-3);
    CHECK(std::abs(rc.H - rf.H) / rf.H < 2e-3);
}

TEST_CASE("spectral_amplitude validates indices") {
    SourceConfig cfg = type2_cfg(0.3, 0.3);
    CHECK_THROWS_AS(spectral_amplitude(cfg, 5, 0, 0.0), argument_error);
    CHECK_THROWS_AS(spectral_amplitude(cfg, 0, -1, 0.0), argument_error);
}

TEST_CASE("config validation catches bad grids and parameters") {
    SourceConfig cfg = type2_cfg(0.3, 0.3);
    SourceConfig bad = cfg;
    bad.xi_p = 0.0;
    CHECK_THROWS_AS(bad.validate(), argument_error);
    bad = cfg;
    bad.omega_grid = Eigen::ArrayXd::Zero(3);  // not strictly increasing
    CHECK_THROWS_AS(bad.validate(), argument_error);
    bad = cfg;
    bad.lambda_s = 800e-9;  // breaks energy conservation
    CHECK_THROWS_AS(bad.validate(), argument_error);
}
