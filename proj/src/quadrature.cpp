#include "spdc/quadrature.hpp"
#include "spdc/common.hpp"
#include "spdc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace spdc {

GaussLegendre gauss_legendre(int n) {
    if (n < 1) throw argument_error("gauss_legendre: n must be >= 1");
    GaussLegendre r;
    r.nodes.resize(n);
    r.weights.resize(n);
    // Newton iteration from the Chebyshev-based initial guess.
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;  // exact center node
    return r;
}

Eigen::MatrixXd legendre_table(const Eigen::ArrayXd& x, int nmax) {
    Eigen::MatrixXd P(x.size(), nmax + 1);
    P.col(0).setOnes();
    if (nmax >= 1) P.col(1) = x.matrix();
    for (int n = 1; n < nmax; ++n)
        P.col(n + 1) = ((2.0 * n + 1.0) * x * P.col(n).array() - n * P.col(n - 1).array()).matrix() / (n + 1.0);
    return P;
}

Eigen::ArrayXd spherical_bessel_array(double a, int nmax) {
    Eigen::ArrayXd j(nmax + 1);
    if (a < 1e-8) {
        // j_n(a) ~ a^n / (2n+1)!!, only the first few are nonzero at double precision
        j.setZero();
        j[0] = 1.0 - a * a / 6.0;
        if (nmax >= 1) j[1] = a / 3.0;
        if (nmax >= 2) j[2] = a * a / 15.0;
        return j;
    }
    // Downward (Miller) recurrence from a start order safely above both nmax and a.
    int nstart = nmax + 16 + static_cast<int>(1.2 * a);
    double jp = 0.0;        // j_{n+1}
    double jc = 1e-280;     // j_n (arbitrary seed)
    std::vector<double> tmp(nmax + 1, 0.0);
    for (int n = nstart; n >= 1; --n) {
        double jm = (2.0 * n + 1.0) / a * jc - jp;
        jp = jc;
        jc = jm;
        if (n - 1 <= nmax) tmp[n - 1] = jc;
        // rescale to avoid overflow of the unnormalized recurrence
        if (std::abs(jc) > 1e250) {
            jc *= 1e-250;
            jp *= 1e-250;
            for (auto& v : tmp) v *= 1e-250;
        }
    }
    // Normalize against the closed forms; prefer whichever is away from a zero.
    double j0 = std::sin(a) / a;
    double j1 = std::sin(a) / (a * a) - std::cos(a) / a;
    double scale;
    if (std::abs(j0) >= std::abs(j1) && tmp[0] != 0.0)
        scale = j0 / tmp[0];
    else if (nmax >= 1 && tmp[1] != 0.0)
        scale = j1 / tmp[1];
    else
        scale = j0 / tmp[0];
    for (int n = 0; n <= nmax; ++n) j[n] = tmp[n] * scale;
    if (nmax >= 1) j[1] = j1;
    j[0] = j0;
    return j;
}

namespace {

// Gauss-Kronrod 15-point nodes/weights (7-point Gauss embedded), [-1, 1].
const double gk_nodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898,  0.0,                0.207784955007898,
     0.405845151377397,  0.586087235467691,  0.741531185599394,
     0.864864423359769,  0.949107912342759,  0.991455371120813};
const double gk_wk[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
const double gk_wg[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const std::function<double(double)>& f, double a, double b) {
    double h = 0.5 * (b - a), c = 0.5 * (a + b);
    double ik = 0.0, ig = 0.0;
    for (int i = 0; i < 15; ++i) {
        double fx = f(c + h * gk_nodes[i]);
        ik += gk_wk[i] * fx;
        if (i % 2 == 1) ig += gk_wg[i / 2] * fx;
    }
    ik *= h;
    ig *= h;
    double err = std::pow(200.0 * std::abs(ik - ig), 1.5);
    return {a, b, ik, std::min(err, std::abs(ik - ig) * 200.0)};
}

} // namespace

double adaptive_gk(const std::function<double(double)>& f, double a, double b,
                   double rel_tol, int max_intervals, double abs_tol) {
    std::priority_queue<Segment> q;
    Segment s0 = gk15(f, a, b);
    double total = s0.value, toterr = s0.error;
    q.push(s0);
    int n = 1;
    auto converged = [&]() {
        return toterr <= std::max(rel_tol * std::abs(total), abs_tol);
    };
    while (!converged() && n < max_intervals) {
        Segment s = q.top();
        q.pop();
        double mid = 0.5 * (s.a + s.b);
        Segment l = gk15(f, s.a, mid), r = gk15(f, mid, s.b);
        total += l.value + r.value - s.value;
        toterr += l.error + r.error - s.error;
        q.push(l);
        q.push(r);
        ++n;
    }
    if (!converged())
        throw numeric_error("adaptive_gk: no convergence after max refinement", total, toterr);
    return total;
}

GoldenResult golden_maximize(const std::function<double(double)>& f,
                             double lo, double hi, double rel_tol) {
    const double gr = 0.6180339887498949;
    double a = lo, b = hi;
    double flo = f(lo), fhi = f(hi);
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    double best_interior = std::max(fc, fd);
    while (b - a > rel_tol * std::abs(hi - lo)) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
        best_interior = std::max(best_interior, std::max(fc, fd));
    }
    GoldenResult r;
    r.unimodal = !(best_interior < flo && best_interior < fhi);
    if (fc > fd) {
        r.x = c;
        r.value = fc;
    } else {
        r.x = d;
        r.value = fd;
    }
    // keep the endpoints if they beat the interior (clamped optimum)
    if (flo > r.value) { r.x = lo; r.value = flo; }
    if (fhi > r.value) { r.x = hi; r.value = fhi; }
    return r;
}

} // namespace spdc
