#include "spdc/materials.hpp"
#include "spdc/common.hpp"
#include "spdc/errors.hpp"

#include <array>
#include <cmath>

namespace spdc {

void MaterialModel::check_range(double lambda) const {
    if (lambda < lambda_min || lambda > lambda_max)
        throw argument_error("material '" + name + "': wavelength outside valid Sellmeier range");
}

namespace {

// KTP principal-axis Sellmeier sets, lambda in um.
// Kato & Takaoka, Appl. Opt. 41, 5040 (2002).
const MaterialModel ktp_y{
    "ktp_y", 'y', 3.45018, 0.04341, 0.04597, 16.98825, 39.43799,
    400e-9, 1700e-9, "Kato & Takaoka, Appl. Opt. 41, 5040 (2002), n_y"};
const MaterialModel ktp_z{
    "ktp_z", 'z', 4.59423, 0.06206, 0.04763, 110.80672, 86.12171,
    400e-9, 1700e-9, "Kato & Takaoka, Appl. Opt. 41, 5040 (2002), n_z"};

} // namespace

const MaterialModel& material_by_name(const std::string& name) {
    if (name == "ktp_y") return ktp_y;
    if (name == "ktp_z") return ktp_z;
    throw argument_error("unknown material '" + name + "' (known: ktp_y, ktp_z)");
}

double refractive_index(const MaterialModel& m, double lambda) {
    m.check_range(lambda);
    double l2 = lambda * lambda * 1e12;  // um^2
    double n2 = m.A + m.B / (l2 - m.C) + m.D / (l2 - m.E);
    return std::sqrt(n2);
}

double dn_dlambda(const MaterialModel& m, double lambda) {
    m.check_range(lambda);
    double lu = lambda * 1e6;
    double l2 = lu * lu;
    double dn2 = -2.0 * lu * (m.B / ((l2 - m.C) * (l2 - m.C)) + m.D / ((l2 - m.E) * (l2 - m.E)));
    return dn2 / (2.0 * refractive_index(m, lambda)) * 1e6;  // per meter
}

double d2n_dlambda2(const MaterialModel& m, double lambda) {
    m.check_range(lambda);
    double lu = lambda * 1e6;
    double l2 = lu * lu;
    auto term = [&](double B, double C) {
        double d = l2 - C;
        return B * (6.0 * l2 + 2.0 * C) / (d * d * d);
    };
    double n = refractive_index(m, lambda);
    double dn2 = -2.0 * lu * (m.B / ((l2 - m.C) * (l2 - m.C)) + m.D / ((l2 - m.E) * (l2 - m.E)));
    double d2n2 = term(m.B, m.C) + term(m.D, m.E);
    // n'' = (n2'' - 2 n'^2) / (2 n), n' = n2' / (2 n)
    double dn = dn2 / (2.0 * n);
    return (d2n2 - 2.0 * dn * dn) / (2.0 * n) * 1e12;  // per meter^2
}

double group_index(const MaterialModel& m, double lambda) {
    return refractive_index(m, lambda) - lambda * dn_dlambda(m, lambda);
}

namespace {

double k_of_omega(const MaterialModel& m, double omega) {
    double lambda = 2.0 * pi * c_light / omega;
    return refractive_index(m, lambda) * omega / c_light;
}

// Central difference with one Richardson step; halves h until the two
// extrapolants agree to 1e-6 relative.
template <typename F>
double richardson_derivative(const F& diff, double h0) {
    double prev = 0.0;
    bool have_prev = false;
    double h = h0;
    for (int it = 0; it < 12; ++it) {
        double dh = diff(h), dh2 = diff(h / 2.0);
        double extrap = (4.0 * dh2 - dh) / 3.0;
        if (have_prev && std::abs(extrap - prev) <= 1e-6 * std::abs(extrap)) return extrap;
        prev = extrap;
        have_prev = true;
        h /= 2.0;
    }
    throw numeric_error("richardson_derivative: no convergence", prev, std::abs(prev) * 1e-5);
}

} // namespace

double inverse_group_velocity_fd(const MaterialModel& m, double lambda) {
    double w0 = 2.0 * pi * c_light / lambda;
    auto diff = [&](double h) { return (k_of_omega(m, w0 + h) - k_of_omega(m, w0 - h)) / (2.0 * h); };
    return richardson_derivative(diff, w0 * 1e-3);
}

double gvd_fd(const MaterialModel& m, double lambda) {
    double w0 = 2.0 * pi * c_light / lambda;
    double k0 = k_of_omega(m, w0);
    auto diff = [&](double h) {
        return (k_of_omega(m, w0 + h) - 2.0 * k0 + k_of_omega(m, w0 - h)) / (h * h);
    };
    return richardson_derivative(diff, w0 * 2e-3);
}

DispersionModel dispersion_from_material(const MaterialModel& mp, const MaterialModel& ms,
                                         const MaterialModel& mi, double lambda_p,
                                         double lambda_s, double lambda_i, MatchingType type) {
    if (std::abs(1.0 / lambda_p - 1.0 / lambda_s - 1.0 / lambda_i) > 1e-9 / lambda_p)
        throw argument_error("dispersion_from_material: 1/lp = 1/ls + 1/li violated");
    DispersionModel d;
    d.matching_type = type;
    d.k0_p = 2.0 * pi * refractive_index(mp, lambda_p) / lambda_p;
    d.k0_s = 2.0 * pi * refractive_index(ms, lambda_s) / lambda_s;
    d.k0_i = 2.0 * pi * refractive_index(mi, lambda_i) / lambda_i;
    double ivs = inverse_group_velocity_fd(ms, lambda_s);
    double ivi = inverse_group_velocity_fd(mi, lambda_i);
    double ivp = inverse_group_velocity_fd(mp, lambda_p);
    d.u_p = 1.0 / ivp;
    d.u_s = 1.0 / ivs;
    d.u_i = 1.0 / ivi;
    d.G_s = gvd_fd(ms, lambda_s);
    d.G_i = gvd_fd(mi, lambda_i);
    d.G = 0.5 * (d.G_s + d.G_i);
    d.D = ivs - ivi;
    if (type == MatchingType::Type0_Degenerate_CW) {
        // degenerate co-polarized arms: D must vanish up to roundoff
        if (std::abs(d.D) > 1e-6 * std::abs(ivs))
            throw argument_error("dispersion_from_material: Type0 degenerate config has D != 0");
        d.D = 0.0;
    }
    if (type == MatchingType::SGVM) {
        // u_p enters no mismatch formula once SGVM holds; pin it to the
        // exact matching point so the model invariant is satisfied.
        d.u_p = 2.0 / (ivs + ivi);
    }
    d.validate();
    return d;
}

double xi_from_waist(const PolingProfile& poling, double lambda, double n, double waist) {
    if (!(waist > 0)) throw argument_error("xi_from_waist: waist must be > 0");
    if (poling.kind == PolingProfile::Kind::Gaussian)
        return poling.sigma * lambda / (std::sqrt(2.0 * pi) * n * waist * waist);
    return poling.length * lambda / (2.0 * pi * n * waist * waist);
}

double waist_from_xi(const PolingProfile& poling, double lambda, double n, double xi) {
    if (!(xi > 0)) throw argument_error("waist_from_xi: xi must be > 0");
    if (poling.kind == PolingProfile::Kind::Gaussian)
        return std::sqrt(poling.sigma * lambda / (std::sqrt(2.0 * pi) * n * xi));
    return std::sqrt(poling.length * lambda / (2.0 * pi * n * xi));
}

} // namespace spdc
