#pragma once

// Smooth cutoffs and the space-time test functions built on the barrier.
//
// Base ramp S(x) = phi(x) / (phi(x) + phi(1 - x)), phi(x) = exp(-1/x) for x > 0.
//   psi(s)  = S(2s - 1)        0 on [0, 1/2], 1 on [1, inf)
//   eta(s)  = S(s)             0 on (-inf, 0], 1 on [1, inf)
//   zeta(t) = exp(-1/(t(1-t)))  supported in (0, 1)
// Each enters raised to a power m.

#include <string>
#include <vector>

#include "hardy/hardy_barrier.hpp"

namespace hardy {

enum class ProfileKind { psi, eta, zeta };

struct SmoothProfile {
    ProfileKind kind = ProfileKind::psi;
    int m = 1;
};

/// The base profile (m = 1) and its two derivatives.
Jet profile_base(ProfileKind kind, double s);

/// phi^m(s) with first and second derivatives; exact 0/1 on the plateaus.
Jet profile_eval(const SmoothProfile& profile, double s);

struct TimeCutoff {
    double value = 0.0;
    double d_t = 0.0;
};

/// zeta_T(t) = zeta^m(t / T) and its time derivative.
TimeCutoff zeta_T(double T, int m, double t);

enum class CutoffShape { power, log };

std::string to_string(CutoffShape shape);

/// Output of a test-function evaluation.
struct XiValue {
    double value = 0.0;
    double dt = 0.0;
    double L_lambda = 0.0;  // (Lap + lambda / sin^2 r) xi
};

/// Spatial part h(r) c_R(r) in factored form. With B the base profile at the
/// cutoff argument, c_R = B^m and (Lap + lambda / sin^2) (h c_R) = B^(m-2) Lambda.
struct SpatialFactors {
    double h = 0.0;
    double h_prime = 0.0;
    double base = 0.0;    // B
    double cutoff = 0.0;  // c_R
    double c1 = 0.0;      // dc_R/dr
    double c2 = 0.0;      // d^2c_R/dr^2
    double Lambda = 0.0;
};

/// xi(t, r) = amplitude * zeta_T(t) * h(r) * c_R(r) with
///   c_R = psi^m(R (pi - r))                        (power shape)
///   c_R = eta^m(ln(R (pi - r)) / ln sqrt(R))       (log shape).
class TestFunction {
public:
    TestFunction(Barrier barrier, CutoffShape shape, double T, double R, int m, double amplitude = 1.0);

    const Barrier& barrier() const noexcept { return barrier_; }
    CutoffShape shape() const noexcept { return shape_; }
    double T() const noexcept { return T_; }
    double R() const noexcept { return R_; }
    int m() const noexcept { return m_; }
    double amplitude() const noexcept { return amplitude_; }

    /// c_R vanishes for pi - r <= support_gap(): 1/(2R) (power) or 1/R (log).
    double support_gap() const noexcept;
    /// c_R' and c_R'' vanish unless band_lo() <= pi - r <= band_hi().
    double band_lo() const noexcept;
    double band_hi() const noexcept;
    /// c_R == 1 at r = delta (the admissibility precondition).
    bool plateau_at_boundary() const noexcept;

    /// Spatial factors at antipodal distance t in (0, pi - delta].
    SpatialFactors spatial_at_distance(double t) const;
    SpatialFactors spatial(double r) const;

    XiValue eval(double t, double r) const;

private:
    Barrier barrier_;
    CutoffShape shape_;
    double T_, R_;
    int m_;
    double amplitude_;
};

XiValue xi_eval(const TestFunction& tf, double t, double r);

struct AdmissibilityViolation {
    std::string check;
    double t = 0.0;
    double r = 0.0;
    double value = 0.0;
};

struct AdmissibilityReport {
    bool pass = false;
    std::string reason;  // empty on pass
    long points_checked = 0;
    std::vector<AdmissibilityViolation> violations;  // first few witnesses
};

/// Grid verification of membership in the admissible class: xi >= 0,
/// xi(., delta) = 0, -d_r xi(., delta) <= 0, compact support in t and r, and
/// derivative-band containment.
AdmissibilityReport admissibility_check(const TestFunction& tf, int time_points = 200,
                                        int radial_points = 2000);

}  // namespace hardy
