#include "spdc/config.hpp"
#include "spdc/errors.hpp"
#include "spdc/materials.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

using nlohmann::json;

namespace spdc {

std::uint64_t fnv1a_hash(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = digits[h & 0xf];
        h >>= 4;
    }
    return s;
}

namespace {

json parse_with_duplicate_check(const std::string& text) {
    std::vector<std::set<std::string>> key_stack;
    json::parser_callback_t cb = [&](int /*depth*/, json::parse_event_t event,
                                     json& parsed) -> bool {
        switch (event) {
            case json::parse_event_t::object_start:
                key_stack.emplace_back();
                break;
            case json::parse_event_t::object_end:
                key_stack.pop_back();
                break;
            case json::parse_event_t::key: {
                std::string k = parsed.get<std::string>();
                if (!key_stack.back().insert(k).second)
                    throw config_error("duplicate key '" + k + "' in config");
                break;
            }
            default:
                break;
        }
        return true;
    };
    try {
        return json::parse(text, cb, true, /*ignore_comments=*/true);
    } catch (const json::exception& e) {
        throw config_error(std::string("config parse error: ") + e.what());
    }
}

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key()))
            throw config_error("unknown key '" + it.key() + "' in " + where);
}

double get_num(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw config_error("missing key '" + key + "' in " + where);
    if (!obj[key].is_number()) throw config_error("key '" + key + "' in " + where + " must be a number");
    return obj[key].get<double>();
}

double get_num_or(const json& obj, const std::string& key, double fallback) {
    if (!obj.contains(key)) return fallback;
    return obj[key].get<double>();
}

} // namespace

RunSetup parse_config(const std::string& text, Preset preset) {
    json j = parse_with_duplicate_check(text);
    if (!j.is_object()) throw config_error("config root must be a JSON object");

    check_keys(j, "config root",
               {"matching", "poling", "wavelengths_nm", "materials", "xi", "phi_tilde",
                "p_max", "omega_grid", "filter", "sweep", "purity", "scaling"});

    RunSetup setup;

    std::string matching = j.value("matching", std::string("type2"));
    MatchingType type;
    if (matching == "type2") type = MatchingType::TypeII_CW;
    else if (matching == "type0") type = MatchingType::Type0_Degenerate_CW;
    else if (matching == "sgvm") type = MatchingType::SGVM;
    else throw config_error("matching must be one of: type2, type0, sgvm");

    bool type0 = (type == MatchingType::Type0_Degenerate_CW);

    // poling defaults: 40 mm uniform (type2/sgvm), 5 mm uniform (type0);
    // sgvm defaults to the Gaussian profile with sigma = L/4
    PolingProfile poling;
    double default_L = type0 ? 5e-3 : 40e-3;
    std::string profile = (type == MatchingType::SGVM) ? "gaussian" : "uniform";
    double length_mm = default_L * 1e3, sigma_mm = default_L * 1e3 / 4.0;
    if (j.contains("poling")) {
        const json& p = j["poling"];
        check_keys(p, "poling", {"profile", "length_mm", "sigma_mm"});
        profile = p.value("profile", profile);
        length_mm = get_num_or(p, "length_mm", length_mm);
        sigma_mm = get_num_or(p, "sigma_mm", length_mm / 4.0);
    }
    if (profile == "uniform") poling = PolingProfile::uniform(length_mm * 1e-3);
    else if (profile == "gaussian") poling = PolingProfile::gaussian(sigma_mm * 1e-3, length_mm * 1e-3);
    else throw config_error("poling.profile must be 'uniform' or 'gaussian'");

    double lp = 405.0, ls = 810.0, li = 0.0;
    if (j.contains("wavelengths_nm")) {
        const json& w = j["wavelengths_nm"];
        check_keys(w, "wavelengths_nm", {"pump", "signal", "idler"});
        lp = get_num_or(w, "pump", lp);
        ls = get_num_or(w, "signal", ls);
        li = get_num_or(w, "idler", 0.0);
    }
    if (li == 0.0) li = 1.0 / (1.0 / lp - 1.0 / ls);  // energy conservation

    std::string mat_p = type0 ? "ktp_z" : "ktp_y";
    std::string mat_s = type0 ? "ktp_z" : "ktp_y";
    std::string mat_i = "ktp_z";
    if (j.contains("materials")) {
        const json& m = j["materials"];
        check_keys(m, "materials", {"pump", "signal", "idler"});
        mat_p = m.value("pump", mat_p);
        mat_s = m.value("signal", mat_s);
        mat_i = m.value("idler", mat_i);
    }

    double xi_p = 1.0, xi_s = 1.0, xi_i = 0.0;
    if (j.contains("xi")) {
        const json& x = j["xi"];
        check_keys(x, "xi", {"pump", "signal", "idler"});
        xi_p = get_num(x, "pump", "xi");
        xi_s = get_num(x, "signal", "xi");
        xi_i = get_num_or(x, "idler", 0.0);
    }
    if (xi_i == 0.0) xi_i = xi_s;

    double phi_tilde = j.value("phi_tilde", 0.0);
    int p_max = j.value("p_max", 4);

    // desk coarsening per matching type, chosen so the grid-refinement
    // invariant (< 0.2% metric change on refinement) holds: the type-II
    // sinc lobes alias at 4x
    double step_scale = 1.0;
    if (preset == Preset::Desk) step_scale = type0 ? 4.0 : 2.0;
    try {
        setup.source = make_source_config(type, poling, mat_p, mat_s, mat_i, lp * 1e-9,
                                          ls * 1e-9, li * 1e-9, xi_p, xi_s, xi_i, phi_tilde,
                                          p_max, step_scale);
    } catch (const argument_error& e) {
        throw config_error(std::string("config invariant violated: ") + e.what());
    }

    if (j.contains("omega_grid")) {
        const json& g = j["omega_grid"];
        check_keys(g, "omega_grid", {"min", "max", "step"});
        double gmin = get_num(g, "min", "omega_grid");
        double gmax = get_num(g, "max", "omega_grid");
        double gstep = get_num(g, "step", "omega_grid");
        if (!(gstep > 0) || !(gmax > gmin))
            throw config_error("config invariant violated: omega_grid must be increasing with step > 0");
        int n = static_cast<int>(std::floor((gmax - gmin) / gstep + 1e-9)) + 1;
        if (n < 2) throw config_error("config invariant violated: omega_grid needs at least two nodes");
        setup.source.omega_grid.resize(n);
        for (int k = 0; k < n; ++k) setup.source.omega_grid[k] = gmin + gstep * k;
        try {
            setup.source.validate();
        } catch (const argument_error& e) {
            throw config_error(std::string("config invariant violated: ") + e.what());
        }
    }

    if (j.contains("filter")) {
        const json& f = j["filter"];
        check_keys(f, "filter", {"kind", "center", "width"});
        std::string kind = f.value("kind", std::string("rect"));
        if (kind == "none") setup.filter = FilterWindow::none();
        else if (kind == "rect") {
            try {
                setup.filter = FilterWindow::rect(get_num_or(f, "center", 0.0),
                                                  get_num(f, "width", "filter"));
            } catch (const argument_error& e) {
                throw config_error(std::string("config invariant violated: ") + e.what());
            }
        } else throw config_error("filter.kind must be 'none' or 'rect'");
    }

    setup.sweep.log10_xi_step = (preset == Preset::Desk) ? 0.2 : 0.05;
    if (type0) {
        setup.sweep.phi_values.clear();
        for (double f = -1.125; f <= 2.375 + 1e-9; f += 0.25) setup.sweep.phi_values.push_back(f);
    } else {
        setup.sweep.phi_values = {phi_tilde};
    }
    for (double b = 0.05; b <= 1.0 + 1e-9; b += 0.05) setup.sweep.b_targets.push_back(b);
    if (j.contains("sweep")) {
        const json& s = j["sweep"];
        check_keys(s, "sweep",
                   {"log10_xi_min", "log10_xi_max", "log10_xi_step", "phi_values",
                    "b_targets", "band_half_width"});
        setup.sweep.log10_xi_min = get_num_or(s, "log10_xi_min", setup.sweep.log10_xi_min);
        setup.sweep.log10_xi_max = get_num_or(s, "log10_xi_max", setup.sweep.log10_xi_max);
        setup.sweep.log10_xi_step = get_num_or(s, "log10_xi_step", setup.sweep.log10_xi_step);
        setup.sweep.band_half_width = get_num_or(s, "band_half_width", 0.02);
        if (s.contains("phi_values"))
            setup.sweep.phi_values = s["phi_values"].get<std::vector<double>>();
        if (s.contains("b_targets"))
            setup.sweep.b_targets = s["b_targets"].get<std::vector<double>>();
    }

    if (j.contains("purity")) {
        const json& p = j["purity"];
        check_keys(p, "purity", {"n_grid", "window_std", "log10_sigma_p_lo", "log10_sigma_p_hi"});
        setup.purity.n_grid = static_cast<int>(get_num_or(p, "n_grid", 320));
        setup.purity.window_std = get_num_or(p, "window_std", 8.0);
        if (p.contains("log10_sigma_p_lo")) setup.purity.log10_sigma_p_lo = p["log10_sigma_p_lo"].get<double>();
        if (p.contains("log10_sigma_p_hi")) setup.purity.log10_sigma_p_hi = p["log10_sigma_p_hi"].get<double>();
    }

    if (j.contains("scaling")) {
        const json& s = j["scaling"];
        check_keys(s, "scaling", {"lengths_mm", "filtered"});
        if (s.contains("lengths_mm"))
            for (double L : s["lengths_mm"].get<std::vector<double>>())
                setup.scaling.lengths.push_back(L * 1e-3);
        setup.scaling.filtered = s.value("filtered", false);
    }
    if (setup.scaling.lengths.empty()) {
        double L0 = setup.source.poling.length;
        for (double f : {0.25, 0.5, 1.0, 2.0}) setup.scaling.lengths.push_back(L0 * f);
    }

    setup.canonical_text = j.dump();
    setup.config_hash = fnv1a_hash(setup.canonical_text);
    return setup;
}

RunSetup load_config(const std::string& path, Preset preset) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), preset);
}

} // namespace spdc
