#include "spdc/output.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>

namespace spdc {

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_header(std::ostream& os, const OutputHeader& h, const std::string& columns) {
    os << "# spdcmodes " << h.tool_version << "\n";
    os << "# config_hash " << h.config_hash << "\n";
    os << "# preset " << h.preset << "\n";
    os << "# columns: " << columns << "\n";
}

void write_table_csv(std::ostream& os, const ModeAmplitudeTable& table, const OutputHeader& h) {
    write_header(os, h, "p_s,p_i,omega_dimensionless,re_C,im_C");
    int pmax = table.config.p_max;
    for (int ps = 0; ps <= pmax; ++ps)
        for (int pi_ = 0; pi_ <= pmax; ++pi_) {
            Eigen::VectorXcd c = table.amplitude(ps, pi_);
            for (Eigen::Index k = 0; k < table.config.omega_grid.size(); ++k)
                os << ps << ',' << pi_ << ',' << format_double(table.config.omega_grid[k])
                   << ',' << format_double(c[k].real()) << ',' << format_double(c[k].imag())
                   << '\n';
        }
}

void write_metrics_csv(std::ostream& os, const std::vector<MetricsRow>& rows,
                       const OutputHeader& h) {
    write_header(os, h, "xi_p,xi_s,phi_tilde,filter_width,S2,S1_s,S1_i,H_s,H_i,H,B");
    for (const auto& r : rows) {
        os << format_double(r.xi_p) << ',' << format_double(r.xi_s) << ','
           << format_double(r.phi_tilde) << ',' << format_double(r.filter_width) << ','
           << format_double(r.report.S2) << ',' << format_double(r.report.S1_s) << ','
           << format_double(r.report.S1_i) << ',' << format_double(r.report.H_s) << ','
           << format_double(r.report.H_i) << ',' << format_double(r.report.H) << ','
           << format_double(r.report.B) << '\n';
    }
}

void write_sweep_csv(std::ostream& os, const SweepResult& sweep, const OutputHeader& h) {
    write_header(os, h, "xi_p,xi_s,phi_tilde,B,H");
    for (std::size_t f = 0; f < sweep.grid.phi_values.size(); ++f)
        for (Eigen::Index ip = 0; ip < sweep.grid.log10_xi_p.size(); ++ip)
            for (Eigen::Index is = 0; is < sweep.grid.log10_xi_s.size(); ++is)
                os << format_double(std::pow(10.0, sweep.grid.log10_xi_p[ip])) << ','
                   << format_double(std::pow(10.0, sweep.grid.log10_xi_s[is])) << ','
                   << format_double(sweep.grid.phi_values[f]) << ','
                   << format_double(sweep.B_maps[f](ip, is)) << ','
                   << format_double(sweep.H_maps[f](ip, is)) << '\n';
}

void write_curve_csv(std::ostream& os, const std::vector<CurvePoint>& curve,
                     const OutputHeader& h) {
    write_header(os, h, "B_target,B,H,log10_xi_p,log10_xi_s,phi_tilde,band_doublings");
    for (const auto& c : curve)
        os << format_double(c.B_target) << ',' << format_double(c.B) << ','
           << format_double(c.H) << ',' << format_double(c.log10_xi_p) << ','
           << format_double(c.log10_xi_s) << ',' << format_double(c.phi) << ','
           << c.band_doublings << '\n';
}

void write_overlap_csv(std::ostream& os, const Eigen::MatrixXd& overlap,
                       const std::vector<std::pair<int, int>>& pairs, const OutputHeader& h) {
    write_header(os, h, "pair_a_ps,pair_a_pi,pair_b_ps,pair_b_pi,overlap");
    for (Eigen::Index a = 0; a < overlap.rows(); ++a)
        for (Eigen::Index b = 0; b < overlap.cols(); ++b)
            os << pairs[a].first << ',' << pairs[a].second << ',' << pairs[b].first << ','
               << pairs[b].second << ',' << format_double(overlap(a, b)) << '\n';
}

void write_jsa_csv(std::ostream& os, const JSAGrid& jsa, const OutputHeader& h) {
    write_header(os, h, "omega_s,omega_i,re,im");
    for (Eigen::Index a = 0; a < jsa.omega_s_grid.size(); ++a)
        for (Eigen::Index b = 0; b < jsa.omega_i_grid.size(); ++b)
            os << format_double(jsa.omega_s_grid[a]) << ',' << format_double(jsa.omega_i_grid[b])
               << ',' << format_double(jsa.amplitude(a, b).real()) << ','
               << format_double(jsa.amplitude(a, b).imag()) << '\n';
}

namespace {

nlohmann::json header_json(const OutputHeader& h) {
    return {{"tool_version", h.tool_version}, {"config_hash", h.config_hash}, {"preset", h.preset}};
}

const char* target_name(FitTarget t) {
    switch (t) {
        case FitTarget::H: return "H";
        case FitTarget::Log10XiP: return "log10_xi_p";
        case FitTarget::Log10XiS: return "log10_xi_s";
    }
    return "?";
}

} // namespace

std::string fits_json(const std::vector<TradeoffFit>& fits, const OutputHeader& h) {
    nlohmann::json j;
    j["meta"] = header_json(h);
    for (const auto& f : fits) {
        nlohmann::json e;
        e["alpha"] = {f.alpha[0], f.alpha[1], f.alpha[2], f.alpha[3]};
        e["residual_rms"] = f.residual_rms;
        j["fits"][target_name(f.target)] = e;
    }
    return j.dump(2) + "\n";
}

std::string purity_json(const PurityResult& r, const OutputHeader& h) {
    nlohmann::json j;
    j["meta"] = header_json(h);
    j["purity"] = r.purity;
    j["sigma_p_used"] = r.sigma_p_used;
    j["unimodal_warning"] = r.unimodal_warning;
    j["schmidt_coefficients"] = r.schmidt_coefficients;
    return j.dump(2) + "\n";
}

std::string scaling_json(const ScalingResult& r, bool filtered, const OutputHeader& h) {
    nlohmann::json j;
    j["meta"] = header_json(h);
    j["exponent"] = r.exponent;
    j["std_error"] = r.std_error;
    j["filtered"] = filtered;
    for (const auto& p : r.points)
        j["points"].push_back({{"length_m", p.first}, {"S2_physical", p.second}});
    return j.dump(2) + "\n";
}

} // namespace spdc
