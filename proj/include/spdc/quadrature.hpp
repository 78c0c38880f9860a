#ifndef SPDC_QUADRATURE_HPP
#define SPDC_QUADRATURE_HPP

#include <Eigen/Dense>
#include <functional>

namespace spdc {

// Gauss-Legendre rule on [-1, 1]; nodes ascending, symmetric about 0.
struct GaussLegendre {
    Eigen::ArrayXd nodes;
    Eigen::ArrayXd weights;
};
GaussLegendre gauss_legendre(int n);

// P_0..P_nmax evaluated at x, one column per degree.
Eigen::MatrixXd legendre_table(const Eigen::ArrayXd& x, int nmax);

// Spherical Bessel j_0..j_nmax at a >= 0, by Miller's downward recurrence.
// Exact small-a and a=0 limits. Used for the oscillatory Legendre moments
//   int_{-1}^{1} P_n(t) exp(-i a t) dt = 2 (-i)^n j_n(a).
Eigen::ArrayXd spherical_bessel_array(double a, int nmax);

// Adaptive Gauss-Kronrod 15(7) on [a, b]; converges when the error estimate
// drops below max(rel_tol |I|, abs_tol). Throws numeric_error (with the
// running estimate) if the interval budget is exhausted first.
double adaptive_gk(const std::function<double(double)>& f, double a, double b,
                   double rel_tol, int max_intervals = 4000, double abs_tol = 0.0);

// Golden-section maximization of f on [lo, hi]; stops when the bracket
// shrinks below rel_tol * |hi - lo|. Returns (argmax, max, unimodal_flag);
// the flag is false if the best interior sample is below both endpoints.
struct GoldenResult {
    double x;
    double value;
    bool unimodal;
};
GoldenResult golden_maximize(const std::function<double(double)>& f,
                             double lo, double hi, double rel_tol = 0.01);

} // namespace spdc

#endif
