#include "hardy/estimates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hardy/errors.hpp"
#include "hardy/quadrature.hpp"
#include "hardy/regression.hpp"
#include "hardy/sphere_geometry.hpp"

namespace hardy {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCriticalTol = 1e-12;

QuadOptions radial_options() {
    QuadOptions opt;
    opt.abs_tol = 0.0;
    opt.rel_tol = 1e-10;
    opt.max_intervals = 20000;
    return opt;
}

double log_radial_integral(const std::function<double(double)>& g, double t_lo, double t_hi, int N) {
    return antipodal_log_integral(g, t_lo, t_hi, N, radial_options());
}

double weight_exponent(const ProblemParams& pp) { return -pp.alpha / (pp.p - 1.0); }

void require_m(const ProblemParams& pp, int m, const char* who) {
    if (m < 2.0 * pp.conjugate())
        throw PreconditionError(std::string(who) + ": m must be >= 2p/(p-1)");
}

TestFunction spatial_test(const Problem& problem, CutoffShape shape, double R, int m) {
    TestFunction tf(problem.barrier, shape, 1.0, R, m);
    if (!tf.plateau_at_boundary())
        throw PreconditionError("R too small for admissibility at this δ");
    return tf;
}

std::vector<double> evaluate_grid(const std::vector<double>& grid, kernels::Execution exec,
                                  const std::function<double(double)>& f) {
    return kernels::tabulate<double>(exec, grid.size(), [&](std::size_t i) { return f(grid[i]); });
}

void check_grid(const std::vector<double>& grid) {
    if (grid.size() < 3) throw PreconditionError("scaling: R grid needs at least three points");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw PreconditionError("scaling: R grid must be increasing");
}

}  // namespace

ProblemParams::ProblemParams(HardyParams hardy_, double alpha_, double p_, double delta_)
    : hardy(hardy_), alpha(alpha_), p(p_), delta(delta_) {
    if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("problem: p must exceed 1");
    if (!std::isfinite(alpha)) throw DomainError("problem: alpha must be finite");
    if (!(delta > 0.0 && delta < kPi)) throw DomainError("problem: delta must lie in (0, pi)");
}

double scaling_exponent(const ProblemParams& pp) {
    const double mu_minus = indicial_roots(pp.hardy).mu_minus;
    return 2.0 * pp.p / (pp.p - 1.0) - pp.hardy.N() + pp.alpha / (pp.p - 1.0) - mu_minus;
}

double critical_exponent(const HardyParams& hardy, double alpha) {
    return 1.0 + (alpha + 2.0) / indicial_roots(hardy).lambda_N;
}

int k_lambda(const HardyParams& hardy) { return hardy.is_critical() ? 2 : 1; }

int default_m(double p) {
    if (!(p > 1.0)) throw DomainError("default_m: p must exceed 1");
    return static_cast<int>(std::ceil(2.0 * p / (p - 1.0))) + 1;
}

double theta_threshold(const ProblemParams& pp) {
    const double mu_minus = indicial_roots(pp.hardy).mu_minus;
    return std::max(0.0, (pp.alpha - (pp.hardy.N() + mu_minus) * (pp.p - 1.0)) / pp.p);
}

double default_theta(const ProblemParams& pp) { return theta_threshold(pp) + 1.0; }

std::pair<double, double> default_source_window(double delta) {
    return {delta + 0.2 * (kPi - delta), delta + 0.4 * (kPi - delta)};
}

std::vector<double> geometric_grid(double lo, double hi, double ratio) {
    if (!(lo > 0.0 && hi >= lo && ratio > 1.0)) throw DomainError("geometric_grid: bad range");
    std::vector<double> out;
    const int n = static_cast<int>(std::floor(std::log(hi / lo) / std::log(ratio) + 1e-9));
    for (int i = 0; i <= n; ++i) out.push_back(lo * std::pow(ratio, i));
    return out;
}

std::vector<double> half_decade_grid(int lo_exponent, int hi_exponent) {
    std::vector<double> out;
    for (int k = 2 * lo_exponent; k <= 2 * hi_exponent; ++k) out.push_back(std::pow(10.0, 0.5 * k));
    return out;
}

Problem Problem::build(const ProblemParams& pp, const BarrierOptions& options) {
    return Problem{pp, Barrier::build(pp.hardy, pp.delta, options)};
}

double I_R(const Problem& problem, CutoffShape shape, double R, int m) {
    const TestFunction tf = spatial_test(problem, shape, R, m);
    const int N = problem.params.hardy.N();
    const double beta = weight_exponent(problem.params);
    const auto g = [&](double t) {
        const SpatialFactors f = tf.spatial_at_distance(t);
        return std::pow(std::sin(t), beta) * f.h * f.cutoff;
    };
    const double t_delta = kPi - problem.barrier.delta();
    return log_radial_integral(g, tf.support_gap(), tf.band_hi(), N) +
           log_radial_integral(g, tf.band_hi(), t_delta, N);
}

double J_integral(const Problem& problem, CutoffShape shape, double R, int m, bool band_only) {
    require_m(problem.params, m, "J_R");
    const TestFunction tf = spatial_test(problem, shape, R, m);
    const int N = problem.params.hardy.N();
    const double p = problem.params.p;
    const double q = problem.params.conjugate();
    const double beta = weight_exponent(problem.params);
    const double base_power = m - 2.0 * q;
    const auto g = [&](double t) {
        const SpatialFactors f = tf.spatial_at_distance(t);
        if (f.base == 0.0 || f.Lambda == 0.0) return 0.0;
        return std::pow(std::sin(t), beta) * std::pow(f.base, base_power) *
               std::pow(f.h, -1.0 / (p - 1.0)) * std::pow(std::abs(f.Lambda), q);
    };
    const double band = log_radial_integral(g, tf.band_lo(), tf.band_hi(), N);
    if (band_only) return band;
    const double t_delta = kPi - problem.barrier.delta();
    return band + log_radial_integral(g, tf.support_gap() * 0.5, tf.band_lo(), N) +
           log_radial_integral(g, tf.band_hi(), t_delta, N);
}

double J_R(const Problem& problem, double R, int m) {
    return J_integral(problem, CutoffShape::power, R, m);
}

double J_R_critical(const Problem& problem, double R, int m) {
    if (std::abs(scaling_exponent(problem.params)) > kCriticalTol)
        throw PreconditionError("J_R_critical: p is not the critical exponent");
    return J_integral(problem, CutoffShape::log, R, m);
}

TimeIntegrals time_integrals(double T, int m, double p) {
    if (!(T > 0.0)) throw DomainError("time_integrals: T must be positive");
    if (!(p > 1.0)) throw DomainError("time_integrals: p must exceed 1");
    const double q = p / (p - 1.0);
    if (m < 2.0 * q) throw PreconditionError("time_integrals: m must be >= 2p/(p-1)");
    QuadOptions opt;
    opt.abs_tol = 0.0;
    opt.rel_tol = 1e-13;
    // zeta_T' = zeta_T * m a(t/T) / T with a = (ln zeta)'.
    const double unit_mass =
        integrate([m](double s) { return profile_eval({ProfileKind::zeta, m}, s).value; }, 0.0, 1.0, opt)
            .value;
    const double unit_dissipation =
        integrate(
            [m, q](double s) {
                const Jet z = profile_base(ProfileKind::zeta, s);
                if (z.value == 0.0) return 0.0;
                const double a = z.d1 / z.value;
                return std::pow(z.value, m) * std::pow(m * std::abs(a), q);
            },
            0.0, 1.0, opt)
            .value;
    return {T * unit_mass, std::pow(T, 1.0 - q) * unit_dissipation};
}

KFunctionals K_functionals(const Problem& problem, CutoffShape shape, double T, double R, int m) {
    const TimeIntegrals ti = time_integrals(T, m, problem.params.p);
    return {ti.dissipation * I_R(problem, shape, R, m), ti.mass * J_integral(problem, shape, R, m)};
}

SourcePairing source_pairing(const Problem& problem, CutoffShape shape, double T, double R, int m,
                             const std::function<double(double)>& f, double r1, double r2) {
    const double delta = problem.barrier.delta();
    if (!(delta < r1 && r1 < r2 && r2 < kPi))
        throw PreconditionError("source_pairing: need delta < r1 < r2 < pi");
    const TestFunction tf = spatial_test(problem, shape, R, m);
    if (kPi - r2 < tf.band_hi())
        throw PreconditionError("source_pairing: cutoff is not identically 1 on [r1, r2]");
    const int N = problem.params.hardy.N();
    const double mass = time_integrals(T, m, problem.params.p).mass;
    const auto fh = [&](double t) {
        const SpatialFactors s = tf.spatial_at_distance(t);
        const double fv = f(kPi - t);
        if (fv < 0.0) throw PreconditionError("source_pairing: f must be nonnegative");
        return fv == 0.0 ? 0.0 : fv * s.h * s.cutoff;
    };
    const double t1 = kPi - r1, t2 = kPi - r2, t_delta = kPi - delta;
    const double window = log_radial_integral(fh, t2, t1, N);
    const double rest = log_radial_integral(fh, tf.support_gap(), tf.band_hi(), N) +
                        log_radial_integral(fh, tf.band_hi(), t2, N) +
                        log_radial_integral(fh, t1, t_delta, N);
    return {mass * window, mass * (window + rest)};
}

ScalingReport J_R_scaling(const Problem& problem, const std::vector<double>& R_grid, int m,
                          kernels::Execution exec) {
    check_grid(R_grid);
    ScalingReport rep;
    rep.R_grid = R_grid;
    rep.values = evaluate_grid(R_grid, exec, [&](double R) { return J_R(problem, R, m); });
    const PowerLogFit fit = fit_power_log(rep.R_grid, rep.values);
    rep.fitted_power = fit.power;
    rep.fitted_log_power = fit.log_power;
    rep.predicted_power = scaling_exponent(problem.params);
    rep.predicted_log_power = problem.params.conjugate();
    return rep;
}

ScalingReport J_R_critical_scaling(const Problem& problem, const std::vector<double>& R_grid, int m,
                                   kernels::Execution exec) {
    check_grid(R_grid);
    ScalingReport rep;
    rep.R_grid = R_grid;
    rep.values = evaluate_grid(R_grid, exec, [&](double R) { return J_R_critical(problem, R, m); });
    const PowerLogFit fit = fit_log_only(rep.R_grid, rep.values);
    rep.fitted_power = 0.0;
    rep.fitted_log_power = fit.log_power;
    rep.predicted_power = 0.0;
    rep.predicted_log_power = k_lambda(problem.params.hardy) - problem.params.conjugate();
    return rep;
}

ScalingReport I_R_scaling(const Problem& problem, CutoffShape shape, const std::vector<double>& R_grid,
                          int m, kernels::Execution exec) {
    check_grid(R_grid);
    ScalingReport rep;
    rep.R_grid = R_grid;
    rep.values = evaluate_grid(R_grid, exec, [&](double R) { return I_R(problem, shape, R, m); });
    const PowerLogFit fit = fit_power_log(rep.R_grid, rep.values);
    rep.fitted_power = fit.power;
    rep.fitted_log_power = fit.log_power;
    const double mu_minus = problem.barrier.indicial().mu_minus;
    const double e = problem.params.alpha / (problem.params.p - 1.0) - problem.params.hardy.N() - mu_minus;
    rep.predicted_power = std::max(0.0, e);
    rep.predicted_log_power = e > 0.0 ? 1.0 : 2.0;
    return rep;
}

ContradictionReport contradiction_demo(const Problem& problem, double theta,
                                       const std::vector<double>& R_grid,
                                       const std::function<double(double)>& f, double r1, double r2,
                                       int m, kernels::Execution exec) {
    const ProblemParams& pp = problem.params;
    if (!(theta > theta_threshold(pp)))
        throw PreconditionError("contradiction_demo: theta must exceed max{0, (alpha - (N + mu_-)(p - 1))/p}");
    if (R_grid.size() < 2) throw PreconditionError("contradiction_demo: need at least two R values");
    const double e = scaling_exponent(pp);
    ContradictionReport rep;
    if (std::abs(e) <= kCriticalTol) {
        const HardyParams& hp = pp.hardy;
        if (hp.is_critical() && !(pp.alpha < (hp.N() - 6) / 2.0))
            throw PreconditionError("contradiction_demo: critical Hardy case with alpha >= (N-6)/2 is open");
        rep.regime = "critical";
        rep.shape = CutoffShape::log;
    } else {
        rep.regime = e < 0.0 ? "supercritical" : "subcritical";
        rep.shape = CutoffShape::power;
    }
    rep.theta = theta;
    rep.m = m;
    rep.R_grid = R_grid;

    struct Row {
        double T, K1, K2, P;
    };
    const auto rows = kernels::tabulate<Row>(exec, R_grid.size(), [&](std::size_t i) {
        const double R = R_grid[i];
        const double T = std::pow(R, theta);
        const KFunctionals k = K_functionals(problem, rep.shape, T, R, m);
        const SourcePairing sp = source_pairing(problem, rep.shape, T, R, m, f, r1, r2);
        return Row{T, k.K1, k.K2, sp.exact / T};
    });
    for (const Row& row : rows) {
        rep.T.push_back(row.T);
        rep.K1.push_back(row.K1);
        rep.K2.push_back(row.K2);
        rep.D.push_back((row.K1 + row.K2) / row.T);
        rep.P.push_back(row.P);
    }
    rep.decay_ratio = rep.D.back() / rep.D.front();
    for (double P : rep.P) rep.pairing_spread = std::max(rep.pairing_spread, std::abs(P / rep.P.front() - 1.0));
    bool decreasing = true;
    for (std::size_t i = 1; i < rep.D.size(); ++i) decreasing = decreasing && rep.D[i] < rep.D[i - 1];
    rep.D_vanishing = decreasing && rep.decay_ratio < 0.2;
    return rep;
}

}  // namespace hardy
