#include "spdc/sweep.hpp"
#include "spdc/errors.hpp"
#include "spdc/materials.hpp"

#include <Eigen/QR>
#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace spdc {

Eigen::ArrayXd SweepGrid::log_axis(double lo, double hi, double step) {
    int n = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
    Eigen::ArrayXd a(n);
    for (int k = 0; k < n; ++k) a[k] = lo + step * k;
    return a;
}

void SweepResult::normalize_to(double S2_reference) {
    if (!(S2_reference > 0)) throw argument_error("normalize_to: reference must be > 0");
    B_maps.clear();
    for (const auto& m : S2_maps) B_maps.push_back(m / S2_reference);
}

namespace {

SourceConfig cell_config(const SourceConfig& base, double xi_p, double xi_s, double phi) {
    SourceConfig c = base;
    c.xi_p = xi_p;
    c.xi_s = xi_s;
    c.xi_i = xi_s;
    c.dispersion.phi_tilde = phi;
    return c;
}

} // namespace

SweepResult grid_sweep(const SourceConfig& base, const SweepGrid& grid,
                       const FilterWindow& filter, int threads, const ProgressFn& progress) {
    if (grid.log10_xi_p.size() == 0 || grid.log10_xi_s.size() == 0 || grid.phi_values.empty())
        throw argument_error("grid_sweep: empty grid");
    const int np = static_cast<int>(grid.log10_xi_p.size());
    const int ns = static_cast<int>(grid.log10_xi_s.size());
    const int nphi = static_cast<int>(grid.phi_values.size());

    SweepResult r;
    r.grid = grid;
    r.S2_maps.assign(nphi, Eigen::MatrixXd::Zero(np, ns));
    r.H_maps.assign(nphi, Eigen::MatrixXd::Zero(np, ns));

    const std::size_t total = static_cast<std::size_t>(np) * ns;
    std::atomic<std::size_t> next{0}, done{0};
    std::mutex progress_mutex;

    int nthreads = threads > 0 ? threads
                               : static_cast<int>(std::thread::hardware_concurrency());
    if (nthreads < 1) nthreads = 1;
    nthreads = std::min<int>(nthreads, static_cast<int>(total));

    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&]() {
        for (;;) {
            std::size_t idx = next.fetch_add(1);
            if (idx >= total) return;
            int ip = static_cast<int>(idx / ns);
            int is = static_cast<int>(idx % ns);
            try {
                SourceConfig c = cell_config(base, std::pow(10.0, grid.log10_xi_p[ip]),
                                             std::pow(10.0, grid.log10_xi_s[is]),
                                             grid.phi_values[0]);
                // slices depend on the waists only; phi enters through the
                // scalar offsets, so one engine serves every phi value
                ModeAmplitudeEngine engine(c);
                ModeAmplitudeTable table;
                table.config = c;
                table.grid_weights = trapezoid_weights(c.omega_grid);
                for (int f = 0; f < nphi; ++f) {
                    table.config.dispersion.phi_tilde = grid.phi_values[f];
                    table.amplitudes = engine.amplitudes_at_offsets(table.config.offsets());
                    EfficiencyReport rep = heralding(table, filter);
                    r.S2_maps[f](ip, is) = rep.S2;
                    r.H_maps[f](ip, is) = rep.H;
                }
            } catch (...) {
                std::lock_guard<std::mutex> lk(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
            std::size_t d = ++done;
            if (progress) {
                std::lock_guard<std::mutex> lk(progress_mutex);
                progress(d, total);
            }
        }
    };

    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);

    r.S2_max = 0;
    for (int f = 0; f < nphi; ++f)
        for (int ip = 0; ip < np; ++ip)
            for (int is = 0; is < ns; ++is)
                if (r.S2_maps[f](ip, is) > r.S2_max) {
                    r.S2_max = r.S2_maps[f](ip, is);
                    r.argmax_phi = f;
                    r.argmax_p = ip;
                    r.argmax_s = is;
                }
    r.normalize_to(r.S2_max);
    return r;
}

namespace {

std::vector<CurvePoint> strategy_fixed_axis(const SweepResult& sweep, bool fix_collection) {
    const Eigen::MatrixXd& B = sweep.B_maps[sweep.argmax_phi];
    const Eigen::MatrixXd& H = sweep.H_maps[sweep.argmax_phi];
    double phi = sweep.grid.phi_values[sweep.argmax_phi];
    std::vector<CurvePoint> curve;
    int np = static_cast<int>(B.rows()), ns = static_cast<int>(B.cols());
    if (fix_collection) {
        for (int is = 0; is < ns; ++is) {
            int best = 0;
            for (int ip = 1; ip < np; ++ip)
                if (B(ip, is) > B(best, is)) best = ip;  // ties keep smaller xi_p
            curve.push_back({0, B(best, is), H(best, is), sweep.grid.log10_xi_p[best],
                             sweep.grid.log10_xi_s[is], phi, 0});
        }
    } else {
        for (int ip = 0; ip < np; ++ip) {
            int best = 0;
            for (int is = 1; is < ns; ++is)
                if (B(ip, is) > B(ip, best)) best = is;
            curve.push_back({0, B(ip, best), H(ip, best), sweep.grid.log10_xi_p[ip],
                             sweep.grid.log10_xi_s[best], phi, 0});
        }
    }
    return curve;
}

} // namespace

std::vector<CurvePoint> strategy_fixed_collection(const SweepResult& sweep) {
    return strategy_fixed_axis(sweep, true);
}

std::vector<CurvePoint> strategy_fixed_pump(const SweepResult& sweep) {
    return strategy_fixed_axis(sweep, false);
}

std::vector<CurvePoint> strategy_max_H_at_B(const SweepResult& sweep,
                                            const std::vector<double>& B_targets,
                                            double band_half_width) {
    std::vector<CurvePoint> curve;
    int nphi = static_cast<int>(sweep.grid.phi_values.size());
    int np = static_cast<int>(sweep.grid.log10_xi_p.size());
    int ns = static_cast<int>(sweep.grid.log10_xi_s.size());
    for (double target : B_targets) {
        if (!(target > 0 && target <= 1.0))
            throw argument_error("strategy_max_H_at_B: targets must lie in (0, 1]");
        double band = band_half_width;
        int doublings = 0;
        CurvePoint best;
        bool found = false;
        for (;;) {
            for (int f = 0; f < nphi; ++f)
                for (int ip = 0; ip < np; ++ip)
                    for (int is = 0; is < ns; ++is) {
                        double b = sweep.B_maps[f](ip, is);
                        if (std::abs(b - target) > band) continue;
                        double h = sweep.H_maps[f](ip, is);
                        if (!found || h > best.H) {
                            best = {target, b, h, sweep.grid.log10_xi_p[ip],
                                    sweep.grid.log10_xi_s[is], sweep.grid.phi_values[f],
                                    doublings};
                            found = true;
                        }
                    }
            if (found || doublings >= 3) break;
            band *= 2.0;
            ++doublings;
        }
        if (!found)
            throw empty_support_error("strategy_max_H_at_B: no cells near B target after 3 doublings");
        curve.push_back(best);
    }
    return curve;
}

TradeoffFit fit_tradeoff(const std::vector<CurvePoint>& curve, FitTarget target) {
    if (curve.size() < 8)
        throw argument_error("fit_tradeoff: need at least 8 curve points");
    double bmin = 1e30, bmax = -1e30;
    for (const auto& c : curve) {
        bmin = std::min(bmin, c.B);
        bmax = std::max(bmax, c.B);
    }
    if (bmin > 0.10 || bmax < 0.90)
        throw argument_error("fit_tradeoff: curve must span B in [0.05, 1]");
    Eigen::MatrixXd V(curve.size(), 4);
    Eigen::VectorXd y(curve.size());
    for (std::size_t k = 0; k < curve.size(); ++k) {
        double b = curve[k].B;
        V(k, 0) = 1.0;
        V(k, 1) = b;
        V(k, 2) = b * b;
        V(k, 3) = b * b * b;
        switch (target) {
            case FitTarget::H: y[k] = curve[k].H; break;
            case FitTarget::Log10XiP: y[k] = curve[k].log10_xi_p; break;
            case FitTarget::Log10XiS: y[k] = curve[k].log10_xi_s; break;
        }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(V);
    if (qr.rank() < 4) throw numeric_error("fit_tradeoff: rank-deficient design matrix", 0, 0);
    Eigen::VectorXd a = qr.solve(y);
    TradeoffFit fit;
    fit.target = target;
    for (int k = 0; k < 4; ++k) fit.alpha[k] = a[k];
    fit.residual_rms = std::sqrt((V * a - y).squaredNorm() / curve.size());
    return fit;
}

ScalingResult length_scaling(const SourceConfig& base, const std::vector<double>& lengths,
                             bool filtered) {
    if (lengths.size() < 3)
        throw argument_error("length_scaling: need at least 3 lengths");
    double lmin = 1e30, lmax = 0;
    for (double L : lengths) {
        if (!(L > 0)) throw argument_error("length_scaling: lengths must be > 0");
        lmin = std::min(lmin, L);
        lmax = std::max(lmax, L);
    }
    if (lmax < 4.0 * lmin)
        throw argument_error("length_scaling: lengths must span at least a factor 4");

    auto config_at = [&](double L) {
        SourceConfig c = base;
        c.poling.length = L;
        if (c.poling.kind == PolingProfile::Kind::Gaussian)
            c.poling.sigma = base.poling.sigma / base.poling.length * L;
        return c;
    };

    // fixed physical filter width: a small fraction of the narrowest
    // (longest-crystal) phase-matching bandwidth
    double width_phys = 0;
    if (filtered) {
        SourceConfig c = config_at(lmax);
        ModeAmplitudeTable t = build_table(c);
        Eigen::ArrayXd p = t.density(0, 0);
        double norm = p.sum();
        double mean = (p * c.omega_grid).sum() / norm;
        double std_x = std::sqrt((p * (c.omega_grid - mean).square()).sum() / norm);
        width_phys = 0.1 * std_x * c.omega_per_grid_unit();
    }

    ScalingResult r;
    Eigen::MatrixXd X(lengths.size(), 2);
    Eigen::VectorXd y(lengths.size());
    for (std::size_t k = 0; k < lengths.size(); ++k) {
        SourceConfig c = config_at(lengths[k]);
        ModeAmplitudeTable t = build_table(c);
        FilterWindow f = FilterWindow::none();
        if (filtered) {
            Eigen::ArrayXd p = t.density(0, 0);
            Eigen::Index pk;
            p.maxCoeff(&pk);
            double w_grid = width_phys / c.omega_per_grid_unit();
            f = FilterWindow::rect(c.omega_grid[pk], w_grid);
        }
        double s2 = pair_collection(t, f) * c.omega_per_grid_unit();
        r.points.emplace_back(lengths[k], s2);
        X(k, 0) = 1.0;
        X(k, 1) = std::log(lengths[k]);
        y[k] = std::log(s2);
    }
    Eigen::Vector2d beta = (X.transpose() * X).ldlt().solve(X.transpose() * y);
    r.exponent = beta[1];
    Eigen::VectorXd res = y - X * beta;
    double s2res = res.squaredNorm() / std::max<double>(1, lengths.size() - 2);
    Eigen::Matrix2d cov = s2res * (X.transpose() * X).inverse();
    r.std_error = std::sqrt(cov(1, 1));
    return r;
}

} // namespace spdc
