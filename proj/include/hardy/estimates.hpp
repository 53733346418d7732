#pragma once

// Integral quantities behind the nonexistence argument: the spatial
// integrals I_R and J_R of the test functions, the time integrals of zeta_T,
// the functionals K1, K2, the source pairing and the R -> infinity
// demonstrator with T = R^theta.

#include <functional>
#include <string>
#include <vector>

#include "hardy/cutoffs.hpp"
#include "hardy/hardy_barrier.hpp"
#include "hardy/parallel.hpp"

namespace hardy {

/// (N, lambda), the weight exponent alpha of (sin r)^alpha |u|^p, p > 1, and delta.
struct ProblemParams {
    ProblemParams(HardyParams hardy, double alpha, double p, double delta);

    HardyParams hardy;
    double alpha;
    double p;
    double delta;

    double conjugate() const noexcept { return p / (p - 1.0); }  // p' = p / (p - 1)
};

/// 2p/(p-1) - N + alpha/(p-1) - mu_-: negative in the supercritical range,
/// zero exactly at p = p_crit.
double scaling_exponent(const ProblemParams& pp);
/// 1 + (alpha + 2) / lambda_N; only meaningful for alpha > -2.
double critical_exponent(const HardyParams& hardy, double alpha);
/// 1 for lambda < lambda*, 2 for lambda = lambda*.
int k_lambda(const HardyParams& hardy);

/// ceil(2p/(p-1)) + 1.
int default_m(double p);
/// max{0, (alpha - (N + mu_-)(p - 1)) / p}.
double theta_threshold(const ProblemParams& pp);
double default_theta(const ProblemParams& pp);
/// (delta + 0.2 (pi - delta), delta + 0.4 (pi - delta)).
std::pair<double, double> default_source_window(double delta);

/// Geometric grid lo, lo*ratio, ... up to hi (inclusive within rounding).
std::vector<double> geometric_grid(double lo, double hi, double ratio);
/// 10^a, 10^(a+1/2), ..., 10^b.
std::vector<double> half_decade_grid(int lo_exponent, int hi_exponent);

/// ProblemParams together with its barrier, built once and shared.
struct Problem {
    ProblemParams params;
    Barrier barrier;

    static Problem build(const ProblemParams& pp, const BarrierOptions& options = {});
};

/// omega * int (sin r)^(-alpha/(p-1)) h c_R d mu over [delta, pi).
double I_R(const Problem& problem, CutoffShape shape, double R, int m);

/// omega * int (sin r)^(-alpha/(p-1)) (h c_R)^(-1/(p-1)) |L_lambda(h c_R)|^(p/(p-1)) d mu,
/// the integrand taken as 0 where c_R = 0. `band_only` restricts the
/// quadrature to the derivative band; otherwise [delta, pi - gap] is used.
double J_integral(const Problem& problem, CutoffShape shape, double R, int m, bool band_only = true);

/// Power-cutoff J_R. Requires m >= 2p/(p-1).
double J_R(const Problem& problem, double R, int m);

/// Log-cutoff J_R at the critical exponent. Requires |scaling_exponent| <= 1e-12.
double J_R_critical(const Problem& problem, double R, int m);

struct TimeIntegrals {
    double mass = 0.0;         // int zeta_T dt
    double dissipation = 0.0;  // int zeta_T^(-1/(p-1)) |zeta_T'|^(p/(p-1)) dt
};

/// Both integrals are evaluated on the unit profile and rescaled to T.
TimeIntegrals time_integrals(double T, int m, double p);

struct KFunctionals {
    double K1 = 0.0;
    double K2 = 0.0;
};

KFunctionals K_functionals(const Problem& problem, CutoffShape shape, double T, double R, int m);

struct SourcePairing {
    double lower_bound = 0.0;  // mass(T) * omega int_{r1}^{r2} f h d mu
    double exact = 0.0;        // int_Q f xi
};

/// f must be nonnegative; the cutoff must equal 1 on [r1, r2].
SourcePairing source_pairing(const Problem& problem, CutoffShape shape, double T, double R, int m,
                             const std::function<double(double)>& f, double r1, double r2);

struct ScalingReport {
    std::vector<double> R_grid;
    std::vector<double> values;
    double fitted_power = 0.0;
    double fitted_log_power = 0.0;
    double predicted_power = 0.0;
    double predicted_log_power = 0.0;
};

/// J_R over the grid, fitted with ln J = a ln R + b ln ln R + c. The
/// predictions are the exponents of the upper bound: scaling_exponent and p/(p-1).
ScalingReport J_R_scaling(const Problem& problem, const std::vector<double>& R_grid, int m,
                          kernels::Execution exec = kernels::Execution::parallel);

/// J_R_critical over the grid, fitted with ln J = b ln ln R + c; predicted
/// log power k_lambda - p/(p-1).
ScalingReport J_R_critical_scaling(const Problem& problem, const std::vector<double>& R_grid, int m,
                                   kernels::Execution exec = kernels::Execution::parallel);

/// I_R over the grid, fitted like J_R. Predicted power max{0, alpha/(p-1) - N - mu_-}.
ScalingReport I_R_scaling(const Problem& problem, CutoffShape shape, const std::vector<double>& R_grid,
                          int m, kernels::Execution exec = kernels::Execution::parallel);

struct ContradictionReport {
    std::string regime;  // "supercritical", "critical" or "subcritical"
    CutoffShape shape = CutoffShape::power;
    double theta = 0.0;
    int m = 0;
    std::vector<double> R_grid, T, K1, K2, D, P;
    double decay_ratio = 0.0;     // D(R_max) / D(R_min)
    double pairing_spread = 0.0;  // max |P(R) / P(R_min) - 1|
    bool D_vanishing = false;     // D decreasing with decay_ratio < 0.2
};

/// T = R^theta; D(R) = (K1 + K2) / T and P(R) = int f xi / T for each R.
/// Critical parameters use the log cutoff, all others the power cutoff.
ContradictionReport contradiction_demo(const Problem& problem, double theta,
                                       const std::vector<double>& R_grid,
                                       const std::function<double(double)>& f, double r1, double r2,
                                       int m, kernels::Execution exec = kernels::Execution::parallel);

}  // namespace hardy
