#ifndef SPDC_COMMON_HPP
#define SPDC_COMMON_HPP

#include <cmath>
#include <complex>

namespace spdc {

inline constexpr double c_light = 299792458.0;  // m/s
inline constexpr double pi = 3.14159265358979323846;

using complexd = std::complex<double>;

// sin(x)/x with the removable singularity handled by series for small |x|.
inline double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
    }
    return std::sin(x) / x;
}

} // namespace spdc

#endif
