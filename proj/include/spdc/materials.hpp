#ifndef SPDC_MATERIALS_HPP
#define SPDC_MATERIALS_HPP

#include <string>

#include "spdc/phase_match.hpp"

namespace spdc {

// Sellmeier model n^2(lambda) = A + B/(lambda^2 - C) + D/(lambda^2 - E),
// lambda in micrometers. Covers the KTP principal axes used here.
struct MaterialModel {
    std::string name;
    char axis = 'z';  // principal axis, 'y' or 'z'
    double A = 0, B = 0, C = 0, D = 0, E = 0;
    double lambda_min = 0;  // valid range (m)
    double lambda_max = 0;
    std::string citation;

    void check_range(double lambda) const;
};

// Registry addressable by the names used in config files ("ktp_y", "ktp_z").
const MaterialModel& material_by_name(const std::string& name);

double refractive_index(const MaterialModel& m, double lambda);

// Analytic derivatives of the Sellmeier rational form.
double dn_dlambda(const MaterialModel& m, double lambda);
double d2n_dlambda2(const MaterialModel& m, double lambda);

// Group index n_g = n - lambda dn/dlambda (analytic route).
double group_index(const MaterialModel& m, double lambda);

// dk/domega and d2k/domega2 on k(omega) = n(omega) omega / c by central
// finite differences with Richardson extrapolation to 1e-6 relative.
double inverse_group_velocity_fd(const MaterialModel& m, double lambda);
double gvd_fd(const MaterialModel& m, double lambda);

// Assemble the full dispersion model for a (pump, signal, idler) triple.
// For Type0_Degenerate_CW, |D| is asserted below threshold and zeroed.
DispersionModel dispersion_from_material(const MaterialModel& mp,
                                         const MaterialModel& ms,
                                         const MaterialModel& mi,
                                         double lambda_p, double lambda_s,
                                         double lambda_i, MatchingType type);

// xi = L lambda / (2 pi n w^2)            (uniform poling)
// xi = sigma lambda / (sqrt(2 pi) n w^2)  (Gaussian poling, effective length)
double xi_from_waist(const PolingProfile& poling, double lambda, double n, double waist);
double waist_from_xi(const PolingProfile& poling, double lambda, double n, double xi);

} // namespace spdc

#endif
