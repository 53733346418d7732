#pragma once

// Radial calculus on S^N in geodesic polar coordinates (r, theta) about a
// pole o: r in (0, pi) is the geodesic distance to o, pi - r the distance to
// the antipode, and d mu = (sin r)^(N-1) dr d sigma.

#include <functional>

#include "hardy/quadrature.hpp"

namespace hardy {

/// A radial function together with its first two r-derivatives.
struct RadialFunction {
    std::function<double(double)> value;
    std::function<double(double)> first;
    std::function<double(double)> second;
};

/// The shell delta < r < r_upper. delta may be 0 (a geodesic ball around
/// the antipode's complement); r_upper may equal pi.
class Annulus {
public:
    Annulus(double delta, double r_upper);

    double delta() const noexcept { return delta_; }
    double r_upper() const noexcept { return r_upper_; }

private:
    double delta_;
    double r_upper_;
};

/// Area of the unit sphere S^(N-1) in R^N: 2 pi^(N/2) / Gamma(N/2).
double unit_sphere_area(int N);

/// Laplace-Beltrami operator on a radial function: f'' + (N-1) cot r f'.
double radial_laplacian(const RadialFunction& f, double r, int N);

/// omega_{N-1} * int_delta^r_upper f(r) (sin r)^(N-1) dr, graded toward r_upper.
double annulus_integral(const std::function<double(double)>& f, const Annulus& region, int N,
                        double tol = 1e-11);

/// Same measure written in the antipodal distance t = pi - r:
/// omega_{N-1} * int_{t_lo}^{t_hi} g(t) (sin t)^(N-1) dt, graded toward t_lo.
/// Used wherever the integrand lives in a thin layer next to the antipode,
/// since r = pi - t loses relative precision in t once t is small.
double antipodal_integral(const std::function<double(double)>& g, double t_lo, double t_hi, int N,
                          const QuadOptions& options);

/// As antipodal_integral but integrated in u = ln t, which resolves pieces
/// spanning several decades of t evenly. Requires 0 < t_lo.
double antipodal_log_integral(const std::function<double(double)>& g, double t_lo, double t_hi, int N,
                              const QuadOptions& options);

struct GreenResidual {
    double residual = 0.0;
    double scale = 0.0;  // sum of |terms|
};

/// |int v Lap(u) d mu - boundary flux + int u' v' d mu| over a strict sub-shell.
GreenResidual green_identity_residual(const RadialFunction& u, const RadialFunction& v,
                                      const Annulus& region, int N);

}  // namespace hardy
