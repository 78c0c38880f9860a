#include <doctest.h>

#include <cmath>

#include "spdc/errors.hpp"
#include "spdc/purity.hpp"

using namespace spdc;

namespace {

SourceConfig sgvm_cfg(double xi_p, double xi_s) {
    double L = 0.04;
    return make_source_config(MatchingType::SGVM, PolingProfile::gaussian(L / 4.0, L), "ktp_y",
                              "ktp_y", "ktp_z", 405e-9, 810e-9, 810e-9, xi_p, xi_s, xi_s, 0.0,
                              4, 2.0);
}

JSAGrid two_gaussian_jsa(double sigma_plus, double sigma_minus, int n = 257, double span = 12.0) {
    JSAGrid jsa;
    jsa.omega_s_grid.resize(n);
    jsa.omega_i_grid.resize(n);
    for (int k = 0; k < n; ++k) {
        double v = -span + 2.0 * span * k / (n - 1.0);
        jsa.omega_s_grid[k] = v;
        jsa.omega_i_grid[k] = v;
    }
    jsa.amplitude.resize(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            double wp = (jsa.omega_s_grid[a] + jsa.omega_i_grid[b]) / std::sqrt(2.0);
            double wm = (jsa.omega_s_grid[a] - jsa.omega_i_grid[b]) / std::sqrt(2.0);
            jsa.amplitude(a, b) =
                std::exp(-wp * wp / (sigma_plus * sigma_plus) - wm * wm / (sigma_minus * sigma_minus));
        }
    jsa.sigma_p = 1.0;
    return jsa;
}

} // namespace

TEST_CASE("separable JSA has unit purity and a single Schmidt mode") {
    JSAGrid jsa = two_gaussian_jsa(2.0, 2.0);  // equal widths: exactly separable
    PurityResult r = schmidt_purity(jsa);
    CHECK(r.purity == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.schmidt_coefficients[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r.schmidt_coefficients[1] < 1e-6);
}

TEST_CASE("two-gaussian JSA reproduces the analytic Schmidt purity") {
    // P = 2 s+ s- / (s+^2 + s-^2); regression value 0.6 for widths (1, 3)
    JSAGrid jsa = two_gaussian_jsa(1.0, 3.0);
    PurityResult r = schmidt_purity(jsa);
    CHECK(r.purity == doctest::Approx(0.6).epsilon(1e-6));
}

TEST_CASE("schmidt coefficients are normalized and purity consistent") {
    JSAGrid jsa = two_gaussian_jsa(1.0, 2.5);
    PurityResult r = schmidt_purity(jsa, 64);
    double sum = 0, sum2 = 0;
    double prev = 1e300;
    for (double l : r.schmidt_coefficients) {
        CHECK(l >= 0.0);
        CHECK(l <= prev);
        prev = l;
        sum += l;
        sum2 += l * l;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r.purity == doctest::Approx(sum2).epsilon(1e-10));
}

TEST_CASE("purity is invariant under scaling and transpose") {
    JSAGrid jsa = two_gaussian_jsa(1.0, 3.0);
    PurityResult base = schmidt_purity(jsa);
    JSAGrid scaled = jsa;
    scaled.amplitude *= complexd(0.3, 1.7);
    CHECK(schmidt_purity(scaled).purity == doctest::Approx(base.purity).epsilon(1e-12));
    JSAGrid transposed = jsa;
    transposed.amplitude = jsa.amplitude.transpose().eval();
    CHECK(schmidt_purity(transposed).purity == doctest::Approx(base.purity).epsilon(1e-12));
}

TEST_CASE("zero JSA is rejected") {
    JSAGrid jsa = two_gaussian_jsa(1.0, 1.0);
    jsa.amplitude.setZero();
    CHECK_THROWS_AS(schmidt_purity(jsa), degenerate_input_error);
}

TEST_CASE("build_jsa requires an SGVM model and a Gaussian pump") {
    SourceConfig cfg = make_source_config(MatchingType::TypeII_CW, PolingProfile::uniform(0.04),
                                          "ktp_y", "ktp_y", "ktp_z", 405e-9, 810e-9, 810e-9,
                                          1.0, 1.0, 1.0, 0.0, 4, 2.0);
    CHECK_THROWS_AS(build_jsa(cfg, PumpSpectrum::gaussian(1e12), 32), mismatch_type_error);
    SourceConfig s = sgvm_cfg(1.0, 1.0);
    CHECK_THROWS_AS(build_jsa(s, PumpSpectrum::monochromatic(), 32), argument_error);
}

TEST_CASE("narrow pump concentrates the JSA on the antidiagonal") {
    SourceConfig cfg = sgvm_cfg(0.5, 0.5);
    double matched = matched_pump_bandwidth(cfg);
    JSAGrid jsa = build_jsa(cfg, PumpSpectrum::gaussian(matched / 300.0), 41);
    // off-antidiagonal corners must be negligible vs the antidiagonal
    double diag = 0, corner = 0;
    int n = 41;
    for (int k = 0; k < n; ++k) diag = std::max(diag, std::abs(jsa.amplitude(k, n - 1 - k)));
    corner = std::max(std::abs(jsa.amplitude(0, 0)), std::abs(jsa.amplitude(n - 1, n - 1)));
    CHECK(corner < 1e-6 * diag);
}

TEST_CASE("slice-engine JSA matches the direct-quadrature oracle") {
    SourceConfig cfg = sgvm_cfg(1.4, 1.4);
    PumpSpectrum pump = PumpSpectrum::gaussian(matched_pump_bandwidth(cfg));
    JSAGrid fast = build_jsa(cfg, pump, 17, JsaMethod::SliceEngine);
    JSAGrid oracle = build_jsa(cfg, pump, 17, JsaMethod::DirectQuadrature);
    double scale = oracle.amplitude.cwiseAbs().maxCoeff();
    double worst = (fast.amplitude - oracle.amplitude).cwiseAbs().maxCoeff();
    CHECK(worst < 1e-5 * scale);
}

TEST_CASE("purity converges in grid resolution") {
    SourceConfig cfg = sgvm_cfg(1.0, 1.0);
    PumpSpectrum pump = PumpSpectrum::gaussian(matched_pump_bandwidth(cfg));
    double p1 = schmidt_purity(build_jsa(cfg, pump, 256)).purity;
    double p2 = schmidt_purity(build_jsa(cfg, pump, 512)).purity;
    CHECK(std::abs(p1 - p2) < 1e-3);
}

TEST_CASE("optimizer recovers the analytic matched bandwidth") {
    // for a Gaussian-poled profile at loose focusing the matched pump width
    // is 2 sqrt2 / (sigma |D|); the optimum must land within a few percent
    SourceConfig cfg = sgvm_cfg(0.02, 0.02);
    PurityResult r = optimize_pump_bandwidth(cfg, 192);
    double matched = matched_pump_bandwidth(cfg);
    CHECK(r.sigma_p_used / matched > 0.85);
    CHECK(r.sigma_p_used / matched < 1.18);
    CHECK(r.purity > 0.99);
}

TEST_CASE("loose focusing yields purity above 0.99") {
    SourceConfig cfg = sgvm_cfg(0.006, 0.006);
    PurityResult r = optimize_pump_bandwidth(cfg, 256);
    CHECK(r.purity > 0.99);
}

TEST_CASE("tight focusing degrades the optimized purity below 0.99") {
    SourceConfig cfg = sgvm_cfg(2.8, 2.8);
    PurityResult r = optimize_pump_bandwidth(cfg, 256);
    CHECK(r.purity < 0.99);
}

TEST_CASE("synthetic double-gaussian family: optimizer finds the matched width") {
    // pump exp(-(ws+wi)^2/sp^2) times PM exp(-(wi-ws)^2 sp_m^2 ...): the
    // optimum is sp* = sqrt2 * B where B is the antidiagonal 1/e half-width
    double B = 3.7;
    auto purity_of = [&](double sp) {
        int n = 257;
        JSAGrid jsa;
        jsa.omega_s_grid.resize(n);
        jsa.omega_i_grid.resize(n);
        double span = 6.0 * std::max(B, sp / std::sqrt(2.0));
        for (int k = 0; k < n; ++k) {
            double v = -span + 2.0 * span * k / (n - 1.0);
            jsa.omega_s_grid[k] = v;
            jsa.omega_i_grid[k] = v;
        }
        jsa.amplitude.resize(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                double s = jsa.omega_s_grid[a] + jsa.omega_i_grid[b];
                double m = jsa.omega_s_grid[a] - jsa.omega_i_grid[b];
                jsa.amplitude(a, b) = std::exp(-s * s / (sp * sp) - m * m / (2.0 * B * B));
            }
        jsa.sigma_p = sp;
        return schmidt_purity(jsa).purity;
    };
    double expect = std::sqrt(2.0) * B;
    // golden search over one decade around an offset guess
    double best_sp = 0, best_p = -1;
    for (double sp = 0.3 * expect; sp <= 3.0 * expect; sp *= 1.02) {
        double p = purity_of(sp);
        if (p > best_p) {
            best_p = p;
            best_sp = sp;
        }
    }
    CHECK(std::abs(best_sp - expect) / expect < 0.02);
    CHECK(best_p == doctest::Approx(1.0).epsilon(1e-6));
}
