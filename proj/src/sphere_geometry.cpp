#include "hardy/sphere_geometry.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hardy/errors.hpp"

namespace hardy {

Annulus::Annulus(double delta, double r_upper) : delta_(delta), r_upper_(r_upper) {
    if (!(delta >= 0.0 && delta < r_upper && r_upper <= std::numbers::pi)) {
        std::ostringstream msg;
        msg << "invalid annulus (" << delta << ", " << r_upper << "): need 0 <= delta < r_upper <= pi";
        throw PreconditionError(msg.str());
    }
}

double unit_sphere_area(int N) {
    return 2.0 * std::pow(std::numbers::pi, 0.5 * N) / std::tgamma(0.5 * N);
}

double radial_laplacian(const RadialFunction& f, double r, int N) {
    if (N < 2) throw PreconditionError("radial_laplacian: N must be >= 2");
    if (!(r > 0.0 && r < std::numbers::pi)) {
        std::ostringstream msg;
        msg << "radial_laplacian: r = " << r << " outside (0, pi)";
        throw DomainError(msg.str());
    }
    return f.second(r) + (N - 1) * (std::cos(r) / std::sin(r)) * f.first(r);
}

double annulus_integral(const std::function<double(double)>& f, const Annulus& region, int N,
                        double tol) {
    QuadOptions opt;
    opt.abs_tol = tol;
    opt.rel_tol = tol;
    opt.grading = Grading::upper;
    const auto weighted = [&](double r) {
        const double s = std::sin(r);
        return s == 0.0 ? 0.0 : f(r) * std::pow(s, N - 1);
    };
    return unit_sphere_area(N) * integrate(weighted, region.delta(), region.r_upper(), opt).value;
}

double antipodal_integral(const std::function<double(double)>& g, double t_lo, double t_hi, int N,
                          const QuadOptions& options) {
    const auto weighted = [&](double t) { return g(t) * std::pow(std::sin(t), N - 1); };
    return unit_sphere_area(N) * integrate(weighted, t_lo, t_hi, options).value;
}

double antipodal_log_integral(const std::function<double(double)>& g, double t_lo, double t_hi, int N,
                              const QuadOptions& options) {
    if (!(t_lo > 0.0)) throw DomainError("antipodal_log_integral: t_lo must be positive");
    if (!(t_hi > t_lo)) return 0.0;
    const auto integrand = [&](double u) {
        const double t = std::exp(u);
        return g(t) * std::pow(std::sin(t), N - 1) * t;
    };
    return unit_sphere_area(N) * integrate(integrand, std::log(t_lo), std::log(t_hi), options).value;
}

GreenResidual green_identity_residual(const RadialFunction& u, const RadialFunction& v,
                                      const Annulus& region, int N) {
    const double a = region.delta(), b = region.r_upper();
    if (!(a > 0.0 && b < std::numbers::pi))
        throw PreconditionError("green_identity_residual: region must lie strictly inside (0, pi)");
    constexpr double tol = 1e-13;
    const double volume =
        annulus_integral([&](double r) { return v.value(r) * radial_laplacian(u, r, N); }, region,
                         N, tol);
    const double gradient =
        annulus_integral([&](double r) { return u.first(r) * v.first(r); }, region, N, tol);
    // Outward normal is +d/dr on r = b and -d/dr on r = a.
    const double omega = unit_sphere_area(N);
    const double flux = omega * (v.value(b) * u.first(b) * std::pow(std::sin(b), N - 1) -
                                 v.value(a) * u.first(a) * std::pow(std::sin(a), N - 1));
    GreenResidual out;
    out.residual = std::abs(volume - flux + gradient);
    out.scale = std::abs(volume) + std::abs(flux) + std::abs(gradient);
    return out;
}

}  // namespace hardy
