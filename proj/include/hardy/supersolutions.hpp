#pragma once

// Explicit stationary supersolutions for 1 < p < p_crit and the classical
// solution u(t, r) = a(t) eps G(r), a(t) = 1 - e^(-t)/2, built from them.
//
//   0 < lambda < lambda*:  G_q = (sin r)^q,  max{mu_-, -(alpha+2)/(p-1)} < q < mu_+
//   lambda = lambda*:      G_gamma = (sin r)^(-lambda_N) (-ln sin r)^gamma,  0 < gamma < 1
//
// With LG = -Lap G - lambda G / sin^2 r > 0 on (b, pi), M = sup (sin r)^alpha G^p / LG
// over (delta, pi) and eps^(p-1) M = 1/2, the source
// f_eps = F_eps / 2, F_eps = eps LG - eps^p (sin r)^alpha G^p, is positive.

#include <string>
#include <vector>

#include "hardy/cutoffs.hpp"
#include "hardy/estimates.hpp"

namespace hardy {

struct ProfileValue {
    double G = 0.0;
    double LG = 0.0;  // -Lap G - lambda G / sin^2 r
};

/// Closed form: LG = [A_q / sin^2 r + q (q + N - 1)] G, A_q = -(q (q + N - 2) + lambda).
ProfileValue G_q_laplacian(int N, double lambda, double q, double r);
double A_q(int N, double lambda, double q);

/// Midpoint of (max{mu_-, -(alpha+2)/(p-1)}, mu_+). Requires alpha > -2,
/// 0 < lambda < lambda*, 1 < p < p_crit.
double choose_q(const ProblemParams& pp);

/// Infimum b of the set where A_q / sin^2 r + q (q + N - 1) > 0 on (b, pi).
double compute_b_q(int N, double lambda, double q);

/// G_gamma and LG at lambda = lambda*, from the analytic derivatives
/// G' = G phi', G'' = G (phi'' + phi'^2) of phi = ln G. Requires r in (pi/2, pi).
ProfileValue G_gamma_laplacian(int N, double gamma, double r);
/// G_gamma, G_gamma' and G_gamma''.
Jet G_gamma_jet(int N, double gamma, double r);

/// Largest zero of LG for G_gamma, found scanning downward from pi - 1e-6 on a
/// log-graded grid and refined by bisection; pi/2 if LG > 0 on the whole grid.
double compute_b_gamma(int N, double gamma);

enum class Regime { subcritical_hardy, critical_hardy };
std::string to_string(Regime regime);

struct StationaryProfile {
    Regime regime = Regime::subcritical_hardy;
    int N = 3;
    double lambda = 0.0;
    double exponent = 0.0;  // q or gamma

    ProfileValue eval(double r) const;
};

/// sup over (delta, pi - 1e-8) of (sin r)^alpha G^p / LG on a graded grid with
/// golden-section refinement. Throws CertificateViolation when LG <= 0 somewhere.
double M_sup(const StationaryProfile& profile, double alpha, double p, double delta);

struct GridSpec {
    int points = 0;
    double t_min = 0.0;  // smallest distance to the antipode sampled
    double r_min = 0.0;  // = delta
};

struct SupersolutionCertificate {
    Regime regime = Regime::subcritical_hardy;
    int N = 3;
    double lambda = 0.0;
    double alpha = 0.0;
    double p = 2.0;
    double q_or_gamma = 0.0;
    double b_threshold = 0.0;
    double delta = 0.0;
    bool delta_raised = false;
    double M = 0.0;
    double epsilon = 0.0;
    double residual_min = 0.0;  // min F_eps / (eps |LG| + eps^p (sin r)^alpha G^p)
    double chain_margin = 0.0;  // min (F_eps - eps LG / 2) / scale; >= 0 when eps^(p-1) M <= 1/2
    GridSpec grid;

    StationaryProfile profile() const;
    double U(double r) const;
    double F_eps(double r) const;
    double f_eps(double r) const;
};

struct CertificateOptions {
    double gamma = 0.5;
    bool allow_delta_raise = false;
    int grid_points = 4000;
};

/// Requires alpha > -2 and 1 < p < p_crit. delta <= b is an error unless
/// allow_delta_raise, which moves it to b + 0.1 (pi - b).
SupersolutionCertificate build_certificate(const ProblemParams& pp, const CertificateOptions& options = {});

struct ParabolicResidual {
    double value = 0.0;  // d_t u - Lap u - lambda u / sin^2 - (sin r)^alpha u^p - f_eps
    double scale = 0.0;  // sum of |terms|
};

ParabolicResidual parabolic_residual(const SupersolutionCertificate& cert, double t, double r);

/// a(t) = 1 - e^(-t)/2 and a'(t).
double a_of_t(double t);
double a_prime(double t);

struct WeakFormCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double scale = 0.0;
    bool pass = false;  // lhs <= rhs + 1e-6 scale
};

/// Both sides of the weak-solution inequality for u = a(t) eps G tested with
/// xi. The test function's barrier must share (N, lambda, delta) with the certificate.
WeakFormCheck weak_form_check(const SupersolutionCertificate& cert, const TestFunction& tf);

struct CertificateSample {
    double r, U, f_eps, F_eps;
};

/// Rows for the (r, U, f_eps, F_eps) export.
std::vector<CertificateSample> sample_certificate(const SupersolutionCertificate& cert, int points);

/// Verification abscissae: uniform in r on [delta, pi) plus log-graded toward
/// pi down to pi - t_min.
std::vector<double> certificate_grid(double delta, int points, double t_min = 1e-8);

}  // namespace hardy
