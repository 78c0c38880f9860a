#include "spdc/phase_match.hpp"
#include "spdc/errors.hpp"

#include <cmath>

namespace spdc {

void DispersionModel::validate() const {
    if (!(k0_p > 0 && k0_s > 0 && k0_i > 0))
        throw argument_error("DispersionModel: central wavenumbers must be > 0");
    if (matching_type == MatchingType::Type0_Degenerate_CW && D != 0.0)
        throw argument_error("DispersionModel: Type0_Degenerate_CW requires D = 0 exactly");
    if (matching_type == MatchingType::SGVM) {
        double lhs = 2.0 / u_p, rhs = 1.0 / u_s + 1.0 / u_i;
        if (std::abs(lhs - rhs) > 1e-9 * std::abs(rhs))
            throw argument_error("DispersionModel: SGVM requires 2/u_p = 1/u_s + 1/u_i within 1e-9 relative");
    }
}

PolingProfile PolingProfile::uniform(double L) {
    PolingProfile p;
    p.kind = Kind::Uniform;
    p.length = L;
    p.validate();
    return p;
}

PolingProfile PolingProfile::gaussian(double sigma, double L) {
    PolingProfile p;
    p.kind = Kind::Gaussian;
    p.length = L;
    p.sigma = sigma;
    p.validate();
    return p;
}

void PolingProfile::validate() const {
    if (!(length > 0)) throw argument_error("PolingProfile: L must be > 0");
    if (kind == Kind::Gaussian && !(sigma > 0 && sigma <= length / 2))
        throw argument_error("PolingProfile: Gaussian requires 0 < sigma <= L/2");
}

double PolingProfile::chi2(double z) const {
    if (kind == Kind::Uniform) return 1.0;
    return std::exp(-z * z / (2.0 * sigma * sigma));
}

static double transverse_terms(const DispersionModel& d, const Vec2& qs, const Vec2& qi) {
    Vec2 qp = qs + qi;
    return qp.squaredNorm() / (2.0 * d.k0_p) - qs.squaredNorm() / (2.0 * d.k0_s)
           - qi.squaredNorm() / (2.0 * d.k0_i);
}

double delta_k_general(const DispersionModel& d, double phi, double omega_s,
                       double omega_i, const Vec2& qs, const Vec2& qi) {
    double ls = 1.0 / d.u_s - 1.0 / d.u_p;
    double li = 1.0 / d.u_i - 1.0 / d.u_p;
    return phi + ls * omega_s + li * omega_i + 0.5 * d.G_s * omega_s * omega_s
           + 0.5 * d.G_i * omega_i * omega_i + transverse_terms(d, qs, qi);
}

double delta_k_cw(const DispersionModel& d, double phi, double omega,
                  const Vec2& qs, const Vec2& qi) {
    return phi + d.D * omega + d.G * omega * omega + transverse_terms(d, qs, qi);
}

double delta_k_sgvm(const DispersionModel& d, double phi, double omega_s,
                    double omega_i, const Vec2& qs, const Vec2& qi) {
    if (d.matching_type != MatchingType::SGVM)
        throw mismatch_type_error("delta_k_sgvm: dispersion model is not SGVM");
    return phi + 0.5 * d.D * (omega_i - omega_s) + 0.5 * d.G_s * omega_s * omega_s
           + 0.5 * d.G_i * omega_i * omega_i + transverse_terms(d, qs, qi);
}

// exp(-v^2) Re[erf(u + iv)] via Abramowitz-Stegun 7.1.29, with the
// exp(-k^2/4 - v^2) cosh(kv) products combined analytically into
// exp(-(v -+ k/2)^2) so every term stays bounded at any v. Terms whose
// exponents underflow are skipped without evaluating exp.
static double expv2_re_erf(double u, double v) {
    const double cut = 40.0;  // exp(-1600) == 0 in double
    double av = std::abs(v);
    double ev2 = (av < cut) ? std::exp(-v * v) : 0.0;
    double acc = ev2 * std::erf(u);
    double eu2 = std::exp(-u * u);
    if (eu2 == 0.0) return acc;
    double c2uv = std::cos(2.0 * u * v), s2uv = std::sin(2.0 * u * v);
    acc += eu2 / (2.0 * pi * u) * ev2 * (1.0 - c2uv);
    int kmax = static_cast<int>(2.0 * av + 2.0 * cut) + 1;
    double sum = 0.0;
    for (int k = 1; k <= kmax; ++k) {
        double dp = v - 0.5 * k, dm = v + 0.5 * k;
        bool has_p = std::abs(dp) < cut, has_m = std::abs(dm) < cut;
        bool has_e = (0.25 * k * k + v * v) < cut * cut;
        if (!has_p && !has_m && !has_e) {
            if (0.5 * k > av + cut) break;  // all later terms underflow too
            continue;
        }
        double cp = has_p ? std::exp(-dp * dp) : 0.0;
        double cm = has_m ? std::exp(-dm * dm) : 0.0;
        double ek = has_e ? std::exp(-0.25 * k * k - v * v) : 0.0;
        sum += (2.0 * u * ek - u * (cp + cm) * c2uv + 0.5 * k * (cp - cm) * s2uv)
               / (k * k + 4.0 * u * u);
    }
    acc += (2.0 / pi) * eu2 * sum;
    return acc;
}

complexd longitudinal_amplitude(const PolingProfile& poling, double delta_k) {
    poling.validate();
    if (poling.kind == PolingProfile::Kind::Uniform)
        return complexd(poling.length * sinc(delta_k * poling.length / 2.0), 0.0);
    double sigma = poling.sigma, L = poling.length;
    if (sigma <= L / 6.0)
        return complexd(std::sqrt(2.0 * pi) * sigma * std::exp(-0.5 * sigma * sigma * delta_k * delta_k), 0.0);
    double u = L / (2.0 * std::sqrt(2.0) * sigma);
    double v = sigma * delta_k / std::sqrt(2.0);
    return complexd(std::sqrt(2.0 * pi) * sigma * expv2_re_erf(u, v), 0.0);
}

} // namespace spdc
