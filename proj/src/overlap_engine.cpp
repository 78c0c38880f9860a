#include "spdc/overlap_engine.hpp"
#include "spdc/errors.hpp"
#include "spdc/lg_modes.hpp"
#include "spdc/materials.hpp"
#include "spdc/quadrature.hpp"

#include <cmath>
#include <functional>

namespace spdc {

void SourceConfig::validate() const {
    poling.validate();
    dispersion.validate();
    if (!(xi_p > 0 && xi_s > 0 && xi_i > 0))
        throw argument_error("SourceConfig: focusing parameters must be > 0");
    if (!(lambda_p > 0 && lambda_s > 0 && lambda_i > 0))
        throw argument_error("SourceConfig: wavelengths must be > 0");
    double lhs = 1.0 / lambda_p, rhs = 1.0 / lambda_s + 1.0 / lambda_i;
    if (std::abs(lhs - rhs) > 1e-9 * lhs)
        throw argument_error("SourceConfig: energy conservation 1/lp = 1/ls + 1/li violated");
    if (p_max < 0 || p_max > 20)
        throw argument_error("SourceConfig: p_max must be in [0, 20]");
    if (omega_grid.size() < 2)
        throw argument_error("SourceConfig: omega_grid needs at least two nodes");
    for (Eigen::Index k = 1; k < omega_grid.size(); ++k)
        if (!(omega_grid[k] > omega_grid[k - 1]))
            throw argument_error("SourceConfig: omega_grid must be strictly increasing");
    if (dispersion.matching_type != MatchingType::Type0_Degenerate_CW && dispersion.D == 0.0)
        throw argument_error("SourceConfig: type-II/SGVM grid mapping needs D != 0");
    if (dispersion.matching_type == MatchingType::Type0_Degenerate_CW && !(dispersion.G > 0))
        throw argument_error("SourceConfig: type-0 grid mapping needs G > 0");
}

double SourceConfig::waist_p() const { return waist_from_xi(poling, lambda_p, n_p, xi_p); }
double SourceConfig::waist_s() const { return waist_from_xi(poling, lambda_s, n_s, xi_s); }
double SourceConfig::waist_i() const { return waist_from_xi(poling, lambda_i, n_i, xi_i); }

double SourceConfig::omega_per_grid_unit() const {
    double L = poling.length;
    if (dispersion.matching_type == MatchingType::Type0_Degenerate_CW)
        return 1.0 / (spectral_unit_scale * std::sqrt(dispersion.G * L));
    return 1.0 / (std::abs(dispersion.D) * L);
}

double SourceConfig::offset_from_grid(double x) const {
    double L = poling.length;
    double phi = phi_phys();
    if (dispersion.matching_type == MatchingType::Type0_Degenerate_CW) {
        double omega = x / (spectral_unit_scale * std::sqrt(dispersion.G * L));
        return phi + dispersion.G * omega * omega;
    }
    // spectra shift toward negative x under tight focusing
    double omega = -x / (dispersion.D * L);
    return phi + dispersion.D * omega + dispersion.G * omega * omega;
}

Eigen::ArrayXd SourceConfig::offsets() const {
    Eigen::ArrayXd K(omega_grid.size());
    for (Eigen::Index k = 0; k < omega_grid.size(); ++k) K[k] = offset_from_grid(omega_grid[k]);
    return K;
}

Eigen::ArrayXd default_grid_type2(double step) {
    int n = static_cast<int>(std::floor((59.14 + 406.12) / step + 1e-9)) + 1;
    Eigen::ArrayXd g(n);
    for (int k = 0; k < n; ++k) g[k] = -406.12 + step * k;
    return g;
}

Eigen::ArrayXd default_grid_type0(double step) {
    int n = static_cast<int>(std::floor((35.065 + 41.157) / step + 1e-9)) + 1;
    Eigen::ArrayXd g(n);
    for (int k = 0; k < n; ++k) g[k] = -41.157 + step * k;
    return g;
}

int ModeAmplitudeEngine::pair_index(int p_s, int p_i) const {
    if (p_s < 0 || p_s > pmax_ || p_i < 0 || p_i > pmax_)
        throw argument_error("pair_index: radial index out of range");
    return p_s * (pmax_ + 1) + p_i;
}

namespace {

// M(a,b) for all a,b <= pmax at one z slice.
// M(a,b) = pi^2 sum_j (-1)^j C(b,j) a!/(a-j)! (a+b-j)!
//          beta^(a-j) alpha^(b-j) / Delta^(a+b-j+1),   Delta = alpha beta - gamma^2
Eigen::MatrixXcd moment_matrix(complexd alpha, complexd beta, complexd gamma, int pmax) {
    Eigen::MatrixXcd M(pmax + 1, pmax + 1);
    complexd Delta = alpha * beta - gamma * gamma;
    complexd dinv = 1.0 / Delta;
    // powers of (beta/Delta), (alpha/Delta), and 1/Delta
    Eigen::VectorXcd bp(pmax + 1), ap(pmax + 1), dp(2 * pmax + 2);
    bp[0] = ap[0] = complexd(1, 0);
    for (int k = 1; k <= pmax; ++k) {
        bp[k] = bp[k - 1] * (beta * dinv);
        ap[k] = ap[k - 1] * (alpha * dinv);
    }
    dp[0] = complexd(1, 0);
    for (int k = 1; k <= 2 * pmax + 1; ++k) dp[k] = dp[k - 1] * dinv;
    auto fact = [](int n) {
        double f = 1.0;
        for (int k = 2; k <= n; ++k) f *= k;
        return f;
    };
    auto comb = [&](int n, int k) { return fact(n) / (fact(k) * fact(n - k)); };
    for (int a = 0; a <= pmax; ++a)
        for (int b = 0; b <= pmax; ++b) {
            complexd s(0, 0);
            int jm = std::min(a, b);
            for (int j = 0; j <= jm; ++j) {
                double coef = comb(b, j) * (fact(a) / fact(a - j)) * fact(a + b - j);
                if (j % 2 == 1) coef = -coef;
                s += coef * bp[a - j] * ap[b - j] * dp[j + 1];
            }
            M(a, b) = pi * pi * s;
        }
    return M;
}

} // namespace

ModeAmplitudeEngine::ModeAmplitudeEngine(const SourceConfig& cfg) {
    cfg.validate();
    pmax_ = cfg.p_max;
    np_ = (pmax_ + 1) * (pmax_ + 1);
    half_length_ = 0.5 * cfg.length();

    double xi_max = std::max({cfg.xi_p, cfg.xi_s, cfg.xi_i});
    degree_ = std::max(64, static_cast<int>(std::ceil(8.0 * xi_max)) + 16);
    int n_gl = degree_ + 32;

    double w_p = cfg.waist_p(), w_s = cfg.waist_s(), w_i = cfg.waist_i();
    Eigen::ArrayXd ts[21], ti[21];
    for (int p = 0; p <= pmax_; ++p) {
        ts[p] = t_coefficients_ell0(p, w_s);
        ti[p] = t_coefficients_ell0(p, w_i);
    }
    double pump_pref = w_p / std::sqrt(2.0 * pi);

    GaussLegendre gl = gauss_legendre(n_gl);
    // slice amplitudes chi2(z) I_{ps,pi}(z) at the quadrature nodes
    Eigen::MatrixXcd slices(n_gl, np_);
    const DispersionModel& d = cfg.dispersion;
    for (int k = 0; k < n_gl; ++k) {
        double z = half_length_ * gl.nodes[k];
        complexd a_p(w_p * w_p / 4.0, z / (2.0 * d.k0_p));
        complexd a_s(w_s * w_s / 4.0, -z / (2.0 * d.k0_s));
        complexd a_i(w_i * w_i / 4.0, -z / (2.0 * d.k0_i));
        Eigen::MatrixXcd M = moment_matrix(a_p + a_s, a_p + a_i, a_p, pmax_);
        double chi = cfg.poling.chi2(z);
        for (int ps = 0; ps <= pmax_; ++ps)
            for (int pi_ = 0; pi_ <= pmax_; ++pi_) {
                complexd acc(0, 0);
                for (int us = 0; us <= ps; ++us)
                    for (int ui = 0; ui <= pi_; ++ui)
                        acc += ts[ps][us] * ti[pi_][ui] * M(us, ui);
                slices(k, ps * (pmax_ + 1) + pi_) = pump_pref * chi * acc;
            }
    }

    // Legendre coefficients c_n = (2n+1)/2 sum_k w_k P_n(t_k) f(t_k)
    Eigen::MatrixXd P = legendre_table(gl.nodes, degree_);
    Eigen::MatrixXcd proj = P.transpose() * (gl.weights.matrix().asDiagonal() * slices);
    scaled_coeffs_.resize(degree_ + 1, np_);
    static const complexd mi[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};  // (-i)^n
    for (int n = 0; n <= degree_; ++n)
        scaled_coeffs_.row(n) = proj.row(n) * ((2.0 * n + 1.0) / 2.0) * mi[n % 4]
                                * (2.0 * half_length_);
}

Eigen::VectorXcd ModeAmplitudeEngine::amplitudes_at_offset(double K) const {
    double a = K * half_length_;
    Eigen::ArrayXd j = spherical_bessel_array(std::abs(a), degree_);
    if (a < 0)  // j_n even/odd with parity of n under a -> -a, amplitude conjugates
        for (int n = 1; n <= degree_; n += 2) j[n] = -j[n];
    return scaled_coeffs_.transpose() * j.matrix();
}

Eigen::MatrixXcd ModeAmplitudeEngine::amplitudes_at_offsets(const Eigen::ArrayXd& K) const {
    Eigen::MatrixXd J(K.size(), degree_ + 1);
    for (Eigen::Index r = 0; r < K.size(); ++r) {
        double a = K[r] * half_length_;
        Eigen::ArrayXd j = spherical_bessel_array(std::abs(a), degree_);
        if (a < 0)
            for (int n = 1; n <= degree_; n += 2) j[n] = -j[n];
        J.row(r) = j.matrix().transpose();
    }
    return J * scaled_coeffs_;
}

int ModeAmplitudeTable::pair_index(int p_s, int p_i) const {
    if (p_s < 0 || p_s > config.p_max || p_i < 0 || p_i > config.p_max)
        throw argument_error("ModeAmplitudeTable: radial index out of range");
    return p_s * (config.p_max + 1) + p_i;
}

Eigen::VectorXcd ModeAmplitudeTable::amplitude(int p_s, int p_i) const {
    return amplitudes.col(pair_index(p_s, p_i));
}

Eigen::ArrayXd ModeAmplitudeTable::density(int p_s, int p_i) const {
    return amplitudes.col(pair_index(p_s, p_i)).array().abs2();
}

Eigen::ArrayXd trapezoid_weights(const Eigen::ArrayXd& x) {
    Eigen::Index n = x.size();
    Eigen::ArrayXd w = Eigen::ArrayXd::Zero(n);
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        double h = 0.5 * (x[k + 1] - x[k]);
        w[k] += h;
        w[k + 1] += h;
    }
    return w;
}

ModeAmplitudeTable build_table(const SourceConfig& cfg) {
    cfg.validate();
    ModeAmplitudeEngine engine(cfg);
    ModeAmplitudeTable t;
    t.config = cfg;
    t.amplitudes = engine.amplitudes_at_offsets(cfg.offsets());
    t.grid_weights = trapezoid_weights(cfg.omega_grid);
    return t;
}

complexd spectral_amplitude(const SourceConfig& cfg, int p_s, int p_i, double x,
                            AmplitudeMethod method) {
    cfg.validate();
    if (p_s < 0 || p_s > cfg.p_max || p_i < 0 || p_i > cfg.p_max)
        throw argument_error("spectral_amplitude: radial index out of range");
    double K = cfg.offset_from_grid(x);
    if (method == AmplitudeMethod::SliceAnalytic) {
        ModeAmplitudeEngine engine(cfg);
        return engine.amplitudes_at_offset(K)[engine.pair_index(p_s, p_i)];
    }
    return direct_amplitude_at_offset(cfg, p_s, p_i, K);
}

complexd direct_amplitude_at_offset(const SourceConfig& cfg, int p_s, int p_i, double K) {
    // reduce to (rho_s, rho_i, theta) by azimuthal symmetry; the z integral
    // is longitudinal_amplitude in closed form
    double w_p = cfg.waist_p(), w_s = cfg.waist_s(), w_i = cfg.waist_i();
    Eigen::ArrayXd tpoly_s = t_coefficients_ell0(p_s, w_s);
    Eigen::ArrayXd tpoly_i = t_coefficients_ell0(p_i, w_i);
    const DispersionModel& d = cfg.dispersion;
    auto horner = [](const Eigen::ArrayXd& c, double r2) {
        double acc = c[c.size() - 1];
        for (Eigen::Index u = c.size() - 2; u >= 0; --u) acc = acc * r2 + c[u];
        return acc;
    };
    double rs_cut = 16.0 / std::sqrt(0.5 * (w_s * w_s + w_p * w_p));
    double ri_cut = 16.0 / std::sqrt(0.5 * (w_i * w_i + w_p * w_p));

    std::function<double(double)> outer = [&](double rs) {
        double rs2 = rs * rs;
        std::function<double(double)> mid = [&](double ri) {
            double ri2 = ri * ri;
            std::function<double(double)> inner = [&](double th) {
                double qp2 = rs2 + ri2 + 2.0 * rs * ri * std::cos(th);
                double dk = K + qp2 / (2.0 * d.k0_p) - rs2 / (2.0 * d.k0_s) - ri2 / (2.0 * d.k0_i);
                return longitudinal_amplitude(cfg.poling, dk).real()
                       * std::exp(-qp2 * w_p * w_p / 4.0);
            };
            double th_int;
            try {
                th_int = 2.0 * adaptive_gk(inner, 0.0, pi, 1e-9, 2000);
            } catch (const numeric_error& e) {
                th_int = 2.0 * e.estimate;
            }
            return th_int * horner(tpoly_i, ri2) * std::exp(-ri2 * w_i * w_i / 4.0) * ri;
        };
        double mid_int;
        try {
            mid_int = adaptive_gk(mid, 0.0, ri_cut, 1e-8, 3000);
        } catch (const numeric_error& e) {
            mid_int = e.estimate;
        }
        return mid_int * horner(tpoly_s, rs2) * std::exp(-rs2 * w_s * w_s / 4.0) * rs;
    };
    double result = adaptive_gk(outer, 0.0, rs_cut, 1e-7, 3000);
    return complexd(2.0 * pi * (w_p / std::sqrt(2.0 * pi)) * result, 0.0);
}

double normalized_overlap(const ModeAmplitudeTable& table, std::pair<int, int> pair_a,
                          std::pair<int, int> pair_b) {
    Eigen::VectorXcd ca = table.amplitude(pair_a.first, pair_a.second);
    Eigen::VectorXcd cb = table.amplitude(pair_b.first, pair_b.second);
    const Eigen::ArrayXd& w = table.grid_weights;
    double na = (w * ca.array().abs2()).sum();
    double nb = (w * cb.array().abs2()).sum();
    if (!(na > 0) || !(nb > 0))
        throw degenerate_input_error("normalized_overlap: zero-norm spectral amplitude");
    complexd ov = (w.cast<complexd>() * ca.array() * cb.array().conjugate()).sum();
    return std::abs(ov) / std::sqrt(na * nb);
}

SourceConfig make_source_config(MatchingType type, const PolingProfile& poling,
                                const std::string& mat_p, const std::string& mat_s,
                                const std::string& mat_i, double lambda_p, double lambda_s,
                                double lambda_i, double xi_p, double xi_s, double xi_i,
                                double phi_tilde, int p_max, double grid_step_scale) {
    const MaterialModel& mp = material_by_name(mat_p);
    const MaterialModel& ms = material_by_name(mat_s);
    const MaterialModel& mi = material_by_name(mat_i);
    SourceConfig cfg;
    cfg.poling = poling;
    cfg.dispersion = dispersion_from_material(mp, ms, mi, lambda_p, lambda_s, lambda_i, type);
    cfg.dispersion.phi_tilde = phi_tilde;
    cfg.lambda_p = lambda_p;
    cfg.lambda_s = lambda_s;
    cfg.lambda_i = lambda_i;
    cfg.n_p = refractive_index(mp, lambda_p);
    cfg.n_s = refractive_index(ms, lambda_s);
    cfg.n_i = refractive_index(mi, lambda_i);
    cfg.xi_p = xi_p;
    cfg.xi_s = xi_s;
    cfg.xi_i = xi_i;
    cfg.p_max = p_max;
    cfg.omega_grid = (type == MatchingType::Type0_Degenerate_CW)
                         ? default_grid_type0(0.518 * grid_step_scale)
                         : default_grid_type2(1.6 * grid_step_scale);
    cfg.validate();
    return cfg;
}

} // namespace spdc
