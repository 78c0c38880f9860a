#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

#include "spdc/config.hpp"
#include "spdc/errors.hpp"
#include "spdc/output.hpp"
#include "spdc/purity.hpp"
#include "spdc/sweep.hpp"
#include "spdc/version.hpp"

namespace fs = std::filesystem;
using namespace spdc;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::string preset = "desk";
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "JSON config file")->required();
    cmd->add_option("--out", o.out_dir, "output directory");
    cmd->add_option("--preset", o.preset, "desk|paper")->check(CLI::IsMember({"desk", "paper"}));
    cmd->add_option("--threads", o.threads, "worker thread count (0 = hardware)");
}

Preset preset_of(const CommonOpts& o) {
    return o.preset == "paper" ? Preset::Paper : Preset::Desk;
}

OutputHeader header_of(const RunSetup& setup, const CommonOpts& o) {
    return {tool_version, hash_hex(setup.config_hash), o.preset};
}

std::ofstream open_out(const CommonOpts& o, const std::string& name) {
    fs::create_directories(o.out_dir);
    std::ofstream f(fs::path(o.out_dir) / name, std::ios::binary);
    if (!f) throw config_error("cannot open output file " + name);
    return f;
}

SweepGrid sweep_grid_of(const RunSetup& setup) {
    SweepGrid g;
    g.log10_xi_p = SweepGrid::log_axis(setup.sweep.log10_xi_min, setup.sweep.log10_xi_max,
                                       setup.sweep.log10_xi_step);
    g.log10_xi_s = g.log10_xi_p;
    g.phi_values = setup.sweep.phi_values;
    return g;
}

ProgressFn progress_printer(std::size_t every = 64) {
    return [every](std::size_t done, std::size_t total) {
        if (done % every == 0 || done == total)
            std::cerr << "\r" << done << "/" << total << " cells" << (done == total ? "\n" : "")
                      << std::flush;
    };
}

int run_spectrum(const CommonOpts& o) {
    RunSetup setup = load_config(o.config_path, preset_of(o));
    ModeAmplitudeTable table = build_table(setup.source);
    auto f = open_out(o, "table.csv");
    write_table_csv(f, table, header_of(setup, o));
    return 0;
}

int run_overlap(const CommonOpts& o) {
    RunSetup setup = load_config(o.config_path, preset_of(o));
    ModeAmplitudeTable table = build_table(setup.source);
    int pmax = setup.source.p_max;
    std::vector<std::pair<int, int>> pairs;
    for (int p = 0; p <= pmax; ++p) pairs.emplace_back(0, p);
    Eigen::MatrixXd ov(pairs.size(), pairs.size());
    for (std::size_t a = 0; a < pairs.size(); ++a)
        for (std::size_t b = 0; b < pairs.size(); ++b)
            ov(a, b) = normalized_overlap(table, pairs[a], pairs[b]);
    auto f = open_out(o, "overlap.csv");
    write_overlap_csv(f, ov, pairs, header_of(setup, o));
    return 0;
}

int run_sweep(const CommonOpts& o) {
    RunSetup setup = load_config(o.config_path, preset_of(o));
    SweepResult sweep = grid_sweep(setup.source, sweep_grid_of(setup), setup.filter, o.threads,
                                   progress_printer());
    auto f = open_out(o, "sweep.csv");
    write_sweep_csv(f, sweep, header_of(setup, o));
    return 0;
}

int run_tradeoff(const CommonOpts& o) {
    RunSetup setup = load_config(o.config_path, preset_of(o));
    SweepResult sweep = grid_sweep(setup.source, sweep_grid_of(setup), setup.filter, o.threads,
                                   progress_printer());
    auto orange = strategy_fixed_collection(sweep);
    auto cyan = strategy_fixed_pump(sweep);
    auto red = strategy_max_H_at_B(sweep, setup.sweep.b_targets, setup.sweep.band_half_width);
    OutputHeader h = header_of(setup, o);
    {
        auto f = open_out(o, "curve_fixed_collection.csv");
        write_curve_csv(f, orange, h);
    }
    {
        auto f = open_out(o, "curve_fixed_pump.csv");
        write_curve_csv(f, cyan, h);
    }
    {
        auto f = open_out(o, "curve_max_h.csv");
        write_curve_csv(f, red, h);
    }
    std::vector<TradeoffFit> fits = {fit_tradeoff(red, FitTarget::H),
                                     fit_tradeoff(red, FitTarget::Log10XiP),
                                     fit_tradeoff(red, FitTarget::Log10XiS)};
    auto f = open_out(o, "fits.json");
    f << fits_json(fits, h);
    return 0;
}

int run_purity(const CommonOpts& o, bool dump_jsa) {
    RunSetup setup = load_config(o.config_path, preset_of(o));
    BandwidthInterval interval;
    if (setup.purity.log10_sigma_p_lo && setup.purity.log10_sigma_p_hi) {
        interval.use_default = false;
        interval.log10_lo = *setup.purity.log10_sigma_p_lo;
        interval.log10_hi = *setup.purity.log10_sigma_p_hi;
    }
    PurityResult r = optimize_pump_bandwidth(setup.source, setup.purity.n_grid, interval,
                                             setup.purity.window_std);
    OutputHeader h = header_of(setup, o);
    {
        auto f = open_out(o, "purity.json");
        f << purity_json(r, h);
    }
    if (dump_jsa) {
        JSAGrid jsa = build_jsa(setup.source, PumpSpectrum::gaussian(r.sigma_p_used),
                                setup.purity.n_grid, JsaMethod::SliceEngine,
                                setup.purity.window_std);
        auto f = open_out(o, "jsa.csv");
        write_jsa_csv(f, jsa, h);
    }
    return 0;
}

int run_scaling(const CommonOpts& o) {
    RunSetup setup = load_config(o.config_path, preset_of(o));
    ScalingResult r = length_scaling(setup.source, setup.scaling.lengths, setup.scaling.filtered);
    auto f = open_out(o, "scaling.json");
    f << scaling_json(r, setup.scaling.filtered, header_of(setup, o));
    return 0;
}

// reads a curve CSV produced by `tradeoff` and refits the cubics
int run_fit(const CommonOpts& o, const std::string& curve_path) {
    RunSetup setup = load_config(o.config_path, preset_of(o));
    std::ifstream in(curve_path);
    if (!in) throw config_error("cannot open curve file: " + curve_path);
    std::vector<CurvePoint> curve;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        CurvePoint c;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf,%d", &c.B_target, &c.B, &c.H,
                        &c.log10_xi_p, &c.log10_xi_s, &c.phi, &c.band_doublings) == 7)
            curve.push_back(c);
    }
    std::vector<TradeoffFit> fits = {fit_tradeoff(curve, FitTarget::H),
                                     fit_tradeoff(curve, FitTarget::Log10XiP),
                                     fit_tradeoff(curve, FitTarget::Log10XiS)};
    auto f = open_out(o, "fits.json");
    f << fits_json(fits, header_of(setup, o));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frequency-resolved LG-mode analysis of bulk-crystal SPDC sources"};
    app.require_subcommand(1);

    CommonOpts o;
    bool dump_jsa = false;
    std::string curve_path;

    auto* spectrum = app.add_subcommand("spectrum", "mode-amplitude table over the spectral grid");
    add_common(spectrum, o);
    auto* overlap = app.add_subcommand("overlap", "normalized spectral-overlap matrix");
    add_common(overlap, o);
    auto* sweep = app.add_subcommand("sweep", "B and H maps over the focusing grid");
    add_common(sweep, o);
    auto* tradeoff = app.add_subcommand("tradeoff", "optimization strategies and cubic fits");
    add_common(tradeoff, o);
    auto* purity = app.add_subcommand("purity", "pump-bandwidth-optimized spectral purity");
    add_common(purity, o);
    purity->add_flag("--dump-jsa", dump_jsa, "also write the optimized JSA grid");
    auto* scaling = app.add_subcommand("scaling", "crystal-length scaling exponent");
    add_common(scaling, o);
    auto* fit = app.add_subcommand("fit", "cubic trade-off fits from a curve CSV");
    add_common(fit, o);
    fit->add_option("--curve", curve_path, "curve CSV from `tradeoff`")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (spectrum->parsed()) return run_spectrum(o);
        if (overlap->parsed()) return run_overlap(o);
        if (sweep->parsed()) return run_sweep(o);
        if (tradeoff->parsed()) return run_tradeoff(o);
        if (purity->parsed()) return run_purity(o, dump_jsa);
        if (scaling->parsed()) return run_scaling(o);
        if (fit->parsed()) return run_fit(o, curve_path);
    } catch (const std::exception& e) {
        std::cerr << "{\"error\":\"" << typeid(e).name() << "\",\"what\":\"" << e.what()
                  << "\"}\n";
        return 1;
    }
    return 2;
}
