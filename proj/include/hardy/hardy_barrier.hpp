#pragma once

// Radial Hardy barrier near the antipode r = pi.
//
// The radial Hardy equation  h'' + (N-1) cot r h' + lambda / sin^2 r h = 0
// has a regular singular point at r = pi with indicial polynomial
// P(s) = s (s + N - 2) + lambda. h_pi is the solution that behaves like
// (pi - r)^mu_+ there (normalised to leading coefficient 1); the barrier
//
//     h(r) = h_pi(r) * int_delta^r ds / ((sin s)^(N-1) h_pi(s)^2)
//
// vanishes at r = delta, is positive on (delta, pi) whenever h_pi is, and
// blows up at the antipode like (pi - r)^mu_- (times ln 1/(pi - r) when the
// indicial root is double).

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hardy/sphere_geometry.hpp"

namespace hardy {

/// Dimension N >= 3 and Hardy coefficient 0 < lambda <= ((N-2)/2)^2.
class HardyParams {
public:
    HardyParams(int N, double lambda);

    int N() const noexcept { return N_; }
    double lambda() const noexcept { return lambda_; }
    double lambda_star() const noexcept { return lambda_star_of(N_); }
    /// lambda == lambda* (up to 1e-12 relative); the indicial root is double.
    bool is_critical() const noexcept;

    static double lambda_star_of(int N) { return 0.25 * (N - 2) * (N - 2); }

private:
    int N_;
    double lambda_;
};

struct IndicialData {
    double mu_plus = 0.0;
    double mu_minus = 0.0;
    double lambda_N = 0.0;  // = -mu_plus
    bool is_double_root = false;
};

IndicialData indicial_roots(const HardyParams& params);

/// P(s) = s (s + N - 2) + lambda.
double indicial_polynomial(const HardyParams& params, double s);

/// Value and first two derivatives of a scalar function.
struct Jet {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

/// Truncated Frobenius series  sum_k A_k t^(mu + k)  in t = pi - r.
struct FrobeniusSeries {
    double mu = 0.0;
    std::vector<double> coeffs;  // A_0 .. A_K, A_0 = 1
    double match_radius = 0.1;

    /// y(t) and its t-derivatives.
    Jet eval(double t) const;
    /// Residual of the radial Hardy equation applied to the truncated series,
    /// divided by t^(mu - 2) (the size of each individual term).
    double relative_residual(const HardyParams& params, double t) const;
};

/// A_0 = 1 and A_n = -sum_{j>=1} [(N-1) c_j (mu+n-2j) + lambda d_j] A_{n-2j} / P(mu+n),
/// where c_j, d_j are the Taylor coefficients of t cot t and t^2 / sin^2 t.
FrobeniusSeries frobenius_coefficients(const HardyParams& params, int K = 12,
                                       double match_radius = 0.1);

struct HardyPiOptions {
    double r_floor = 1e-3;
    double node_step = 2e-3;         // largest spacing of stored trajectory nodes
    double node_relative_step = 5e-3;  // spacing relative to distance from r = 0 or r = pi
    double rel_tol = 1e-14;
};

/// h_pi on (r_floor, pi): the Frobenius series for pi - r <= match_radius and
/// a cached high-order continuation of the ODE further inward. The trajectory
/// also overlaps the series on [match_radius/2, match_radius] for checks.
class HardyPi {
public:
    HardyPi(HardyParams params, FrobeniusSeries series, HardyPiOptions options = {});

    const HardyParams& params() const noexcept { return params_; }
    const FrobeniusSeries& series() const noexcept { return series_; }
    double r_floor() const noexcept { return options_.r_floor; }

    /// (h_pi(r), h_pi'(r)).
    std::pair<double, double> eval(double r) const;
    /// h_pi and its r-derivatives at r = pi - t.
    Jet jet_at_distance(double t) const;
    Jet jet(double r) const;
    /// Trajectory-only value at distance t (no series), valid on the whole
    /// continuation range including the overlap window.
    Jet continuation_at_distance(double t) const;

    /// Stored continuation nodes, as antipodal distances, increasing.
    std::span<const double> nodes() const noexcept { return nodes_; }

private:
    Jet interpolate(double t) const;  // t-derivatives

    HardyParams params_;
    FrobeniusSeries series_;
    HardyPiOptions options_;
    std::vector<double> nodes_;
    std::vector<double> y_, dy_, ddy_;
};

/// Largest zero of h_pi in [r_floor, pi), refined by bisection to 1e-10;
/// 0 when h_pi stays positive down to r_floor.
double compute_a_lambda(const HardyPi& h_pi);

struct BarrierOptions {
    int K = 12;
    double match_radius = 0.1;
    HardyPiOptions h_pi;
    int weight_series_terms = 40;
};

/// The radial Hardy barrier on [delta, pi). Cheap to copy; evaluation is
/// read-only and safe from concurrent callers.
class Barrier {
public:
    static Barrier build(const HardyParams& params, double delta, const BarrierOptions& options = {});

    const HardyParams& params() const noexcept;
    const IndicialData& indicial() const noexcept;
    const FrobeniusSeries& series() const noexcept;
    const HardyPi& h_pi() const noexcept;
    double delta() const noexcept;
    double a_lambda() const noexcept;

    /// h and its r-derivatives at r = pi - t, t in (0, pi - delta].
    Jet jet_at_distance(double t) const;
    Jet jet(double r) const;
    double h(double r) const { return jet(r).value; }
    double h_prime(double r) const { return jet(r).d1; }

    /// (h_pi h' - h_pi' h) (sin r)^(N-1); identically 1.
    double wronskian(double r) const;
    /// |h'' + (N-1) cot r h' + lambda h / sin^2 r| / (sum of |terms|), with h''
    /// taken from the differentiated construction rather than the ODE.
    double ode_relative_residual(double r) const;
    double ode_relative_residual_at_distance(double t) const;

    /// int_delta^r ds / ((sin s)^(N-1) h_pi(s)^2) at r = pi - t.
    double reduction_integral_at_distance(double t) const;

    RadialFunction radial() const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

struct AsymptoticFit {
    double exponent = 0.0;
    double log_power = 0.0;
};

/// Least-squares fit of ln h(pi - t) = a ln t + b ln ln(1/t) + c over a
/// geometric grid of t in [t_min, t_max].
AsymptoticFit asymptotic_rate(const Barrier& barrier, double t_min = 1e-6, double t_max = 1e-2,
                              int points = 41);
/// Same fit for an arbitrary positive function of the antipodal distance.
AsymptoticFit asymptotic_rate(const std::function<double(double)>& of_distance,
                              double t_min = 1e-6, double t_max = 1e-2, int points = 41);

struct BarrierSample {
    double r, h, h_prime, ode_residual;
};

/// Samples for CSV export (columns r, h, h_prime, ode_residual).
std::vector<BarrierSample> sample_barrier(const Barrier& barrier, int points);

}  // namespace hardy
