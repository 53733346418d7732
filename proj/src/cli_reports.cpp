#include "hardy/cli_reports.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numbers>
#include <nlohmann/json.hpp>
#include <sstream>

#include "hardy/cutoffs.hpp"
#include "hardy/errors.hpp"
#include "hardy/estimates.hpp"
#include "hardy/hardy_barrier.hpp"
#include "hardy/sphere_geometry.hpp"
#include "hardy/supersolutions.hpp"

namespace hardy {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

constexpr std::pair<RegionTag, std::string_view> kTagNames[] = {
    {RegionTag::NONEXISTENCE_ALL_P, "NONEXISTENCE_ALL_P"},
    {RegionTag::NONEXISTENCE_SUPERCRITICAL, "NONEXISTENCE_SUPERCRITICAL"},
    {RegionTag::NONEXISTENCE_CRITICAL, "NONEXISTENCE_CRITICAL"},
    {RegionTag::EXISTENCE_SUBCRITICAL, "EXISTENCE_SUBCRITICAL"},
    {RegionTag::OPEN_CRITICAL_HARDY, "OPEN_CRITICAL_HARDY"},
    {RegionTag::INVALID_PARAMS, "INVALID_PARAMS"},
};

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_double(std::string_view s) {
    const std::string str(s);
    std::size_t used = 0;
    const double v = std::stod(str, &used);
    if (used != str.size()) throw PreconditionError("csv: malformed number '" + str + "'");
    return v;
}

// ---------------------------------------------------------------------------
// Suite helpers

class SuiteBuilder {
public:
    explicit SuiteBuilder(std::string name) { report_.suite = std::move(name); report_.version = kVersion; }

    /// |measured - expected| <= tolerance.
    void near(std::string name, double measured, double expected, double tolerance) {
        const bool ok = std::isfinite(measured) && std::abs(measured - expected) <= tolerance;
        report_.checks.push_back({std::move(name), ok, measured, expected, tolerance});
    }
    /// measured <= bound; recorded with expected = bound.
    void at_most(std::string name, double measured, double bound) {
        report_.checks.push_back({std::move(name), std::isfinite(measured) && measured <= bound, measured, bound, 0.0});
    }
    void at_least(std::string name, double measured, double bound) {
        report_.checks.push_back({std::move(name), std::isfinite(measured) && measured >= bound, measured, bound, 0.0});
    }
    void flag(std::string name, bool ok) {
        report_.checks.push_back({std::move(name), ok, ok ? 1.0 : 0.0, 1.0, 0.0});
    }
    /// measured > 0.
    void positive(std::string name, double measured) {
        report_.checks.push_back({std::move(name), measured > 0.0, measured, 0.0, 0.0});
    }
    void param(std::string name, double v) { report_.params.emplace_back(std::move(name), v); }

    SuiteReport take() { return std::move(report_); }

private:
    SuiteReport report_;
};

double barrier_delta(const VerifyConfig& c) {
    if (c.delta) return *c.delta;
    const HardyParams hp(c.N, c.lambda);
    const HardyPi h_pi(hp, frobenius_coefficients(hp));
    const double a = compute_a_lambda(h_pi);
    return a + 0.3 * (kPi - a);
}

void record_common_params(SuiteBuilder& b, const VerifyConfig& c) {
    b.param("N", c.N);
    b.param("lambda", c.lambda);
    b.param("alpha", c.alpha);
    b.param("p", c.p);
    b.param("r_min", c.r_min);
    b.param("r_max", c.r_max);
    b.param("grid", c.grid);
}

SuiteReport geometry_suite(const VerifyConfig& c) {
    SuiteBuilder b("geometry");
    b.param("N", c.N);
    const int N = c.N;
    const RadialFunction cosine{[](double r) { return std::cos(r); }, [](double r) { return -std::sin(r); },
                                [](double r) { return -std::cos(r); }};
    const RadialFunction sine{[](double r) { return std::sin(r); }, [](double r) { return std::cos(r); },
                              [](double r) { return -std::sin(r); }};
    double worst = 0.0;
    for (int i = 1; i <= 1000; ++i) {
        const double r = kPi * i / 1001.0;
        worst = std::max(worst, std::abs(radial_laplacian(cosine, r, N) + N * std::cos(r)));
    }
    b.near("eigenfunction_identity", worst, 0.0, 1e-12);

    const auto one = [](double) { return 1.0; };
    b.near("hemisphere_integral_N3", annulus_integral(one, Annulus(kPi / 2, kPi), 3), kPi * kPi, 1e-9);
    b.near("sphere_area_N2", annulus_integral(one, Annulus(0.0, kPi), 2), 4 * kPi, 1e-9);
    b.near("weight_cancellation_N5",
           annulus_integral([](double r) { return std::pow(std::sin(r), -4); }, Annulus(1.0, 2.0), 5),
           8 * kPi * kPi / 3, 1e-9);

    const double tol = 1e-11;
    const auto f = [](double r) { return std::exp(std::cos(r)) * r; };
    const double left = annulus_integral(f, Annulus(0.5, 1.7), N, tol);
    const double right = annulus_integral(f, Annulus(1.7, 2.9), N, tol);
    const double whole = annulus_integral(f, Annulus(0.5, 2.9), N, tol);
    b.near("quadrature_additivity", (left + right - whole) / std::abs(whole), 0.0, 2 * tol);

    const GreenResidual g1 = green_identity_residual(cosine, sine, Annulus(1.0, 2.0), 3);
    b.at_most("green_cos_sin", g1.residual / g1.scale, 1e-7);
    const RadialFunction inv_sin{[](double r) { return 1.0 / std::sin(r); },
                                 [](double r) { return -std::cos(r) / std::pow(std::sin(r), 2); },
                                 [](double r) {
                                     const double s = std::sin(r);
                                     return (1.0 + std::cos(r) * std::cos(r)) / (s * s * s);
                                 }};
    const RadialFunction sin2{[](double r) { return std::pow(std::sin(r), 2); },
                              [](double r) { return std::sin(2 * r); }, [](double r) { return 2 * std::cos(2 * r); }};
    const GreenResidual g2 = green_identity_residual(inv_sin, sin2, Annulus(2.0, 3.0), 4);
    b.at_most("green_inv_sin_sin2", g2.residual / g2.scale, 1e-7);
    return b.take();
}

SuiteReport barrier_suite(const VerifyConfig& c) {
    SuiteBuilder b("barrier");
    record_common_params(b, c);
    const HardyParams hp(c.N, c.lambda);
    const double delta = barrier_delta(c);
    b.param("delta", delta);
    const Barrier bar = Barrier::build(hp, delta);
    const IndicialData& id = bar.indicial();
    b.param("a_lambda", bar.a_lambda());

    b.near("indicial_sum", id.mu_plus + id.mu_minus, 2.0 - c.N, 1e-13);
    b.near("indicial_product", id.mu_plus * id.mu_minus, c.lambda, 1e-13);

    const Jet at_delta = bar.jet(delta);
    b.near("h_at_delta", at_delta.value, 0.0, 1e-12);
    const double closed = 1.0 / (std::pow(std::sin(delta), c.N - 1) * bar.h_pi().jet(delta).value);
    b.near("h_prime_at_delta_rel", at_delta.d1 / closed - 1.0, 0.0, 1e-10);

    const int n = std::max(c.grid, 10);
    const double r_hi = kPi - 1e-4;
    double w_err = 0.0, ode = 0.0;
    for (int i = 1; i <= n; ++i) {
        const double r = delta + (r_hi - delta) * i / static_cast<double>(n);
        w_err = std::max(w_err, std::abs(bar.wronskian(r) - 1.0));
        ode = std::max(ode, bar.ode_relative_residual(r));
    }
    b.near("wronskian", w_err, 0.0, 1e-8);
    b.at_most("ode_residual", ode, 1e-7);

    double h_min = std::numeric_limits<double>::infinity();
    const double lo = delta + 1e-6, hi = kPi - 1e-6;
    for (int i = 0; i < 10000; ++i) h_min = std::min(h_min, bar.h(lo + (hi - lo) * i / 9999.0));
    b.positive("positivity_min_h", h_min);

    const FrobeniusSeries& s = bar.series();
    b.at_most("frobenius_residual_half_match", s.relative_residual(hp, 0.5 * s.match_radius), 1e-8);
    double overlap = 0.0;
    for (int i = 0; i <= 50; ++i) {
        const double t = s.match_radius * (0.5 + 0.5 * i / 50.0);
        const double sv = s.eval(t).value;
        overlap = std::max(overlap, std::abs(bar.h_pi().continuation_at_distance(t).value - sv) / std::abs(sv));
    }
    b.at_most("series_continuation_overlap", overlap, 1e-9);

    const AsymptoticFit fit = asymptotic_rate(bar);
    if (hp.is_critical()) {
        b.near("asymptotic_exponent", fit.exponent, -(c.N - 2) / 2.0, 0.02);
        b.near("asymptotic_log_power", fit.log_power, 1.0, 0.1);
    } else {
        b.near("asymptotic_exponent", fit.exponent, id.mu_minus, 0.02);
        b.near("asymptotic_log_power", fit.log_power, 0.0, 0.05);
    }
    return b.take();
}

// Five-point stencil of (Lap + lambda / sin^2) applied to the spatial part,
// in the antipodal distance t (d/dr = -d/dt).
double fd_operator(const TestFunction& tf, double t, double k) {
    const auto X = [&](double s) {
        const SpatialFactors f = tf.spatial_at_distance(s);
        return f.h * f.cutoff;
    };
    const double x0 = X(t), xp = X(t + k), xm = X(t - k), xpp = X(t + 2 * k), xmm = X(t - 2 * k);
    const double d1 = (-xpp + 8 * xp - 8 * xm + xmm) / (12 * k);
    const double d2 = (-xpp + 16 * xp - 30 * x0 + 16 * xm - xmm) / (12 * k * k);
    const int N = tf.barrier().params().N();
    const double s = std::sin(t);
    // cot r = -cot t and d/dr = -d/dt: (N-1) cot r X_r = (N-1) cot t X_t.
    return d2 + (N - 1) * std::cos(t) / s * d1 + tf.barrier().params().lambda() / (s * s) * x0;
}

SuiteReport cutoffs_suite(const VerifyConfig& c) {
    SuiteBuilder b("cutoffs");
    record_common_params(b, c);
    const HardyParams hp(c.N, c.lambda);
    const double delta = barrier_delta(c);
    const int m = c.m.value_or(default_m(c.p));
    b.param("delta", delta);
    b.param("m", m);
    const Barrier bar = Barrier::build(hp, delta);

    const Jet low = profile_eval({ProfileKind::psi, 5}, 0.25);
    b.flag("psi_lower_plateau", low.value == 0.0 && low.d1 == 0.0 && low.d2 == 0.0);
    const Jet high = profile_eval({ProfileKind::psi, 5}, 2.0);
    b.flag("psi_upper_plateau", high.value == 1.0 && high.d1 == 0.0 && high.d2 == 0.0);
    double scaling = 0.0;
    for (int i = 1; i < 20; ++i) {
        const double t = 10.0 * i / 20.0;
        scaling = std::max(scaling, std::abs(zeta_T(20.0, m, 2 * t).value - zeta_T(10.0, m, t).value));
    }
    b.near("zeta_T_rescaling", scaling, 0.0, 1e-15);

    const TestFunction power(bar, CutoffShape::power, 10.0, 1e3, m);
    const AdmissibilityReport rp = admissibility_check(power, 200, std::max(c.grid, 100));
    b.near("admissible_power_R1e3", static_cast<double>(rp.violations.size()), 0.0, 0.0);
    const TestFunction logc(bar, CutoffShape::log, 10.0, 1e6, m);
    const AdmissibilityReport rl = admissibility_check(logc, 200, std::max(c.grid, 100));
    b.near("admissible_log_R1e6", static_cast<double>(rl.violations.size()), 0.0, 0.0);
    // Near-boundary delta so that an R > 1 still leaves no plateau at r = delta.
    const Barrier tight = Barrier::build(hp, kPi - 0.05);
    const TestFunction small(tight, CutoffShape::power, 10.0, 10.0, m);
    const AdmissibilityReport rs = admissibility_check(small, 20, 100);
    b.flag("small_R_rejected", !rs.pass && !rs.violations.empty() &&
                                   rs.violations.front().check == "boundary_normal_plateau");

    double worst = 0.0;
    for (const TestFunction* tf : {&power, &logc}) {
        const double lo = tf->band_lo(), hi = tf->band_hi();
        double peak = 0.0, err = 0.0;
        for (int i = 1; i < 10; ++i) {
            const double t = lo + (hi - lo) * i / 10.0;
            const SpatialFactors f = tf->spatial_at_distance(t);
            const double analytic = std::pow(f.base, m - 2) * f.Lambda;
            const double numeric = fd_operator(*tf, t, 1e-3 * (hi - lo));
            peak = std::max(peak, std::abs(analytic));
            err = std::max(err, std::abs(analytic - numeric));
        }
        worst = std::max(worst, err / peak);
    }
    b.near("L_lambda_vs_finite_differences", worst, 0.0, 1e-5);
    return b.take();
}

bool nonincreasing_with_ripple(const std::vector<double>& v, double ripple) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[i - 1] * (1.0 + ripple)) return false;
    return true;
}

SuiteReport estimates_suite(const VerifyConfig& c) {
    SuiteBuilder b("estimates");
    record_common_params(b, c);
    const HardyParams hp(c.N, c.lambda);
    const double delta = barrier_delta(c);
    const ProblemParams pp(hp, c.alpha, c.p, delta);
    const int m = c.m.value_or(default_m(c.p));
    const double theta = c.theta.value_or(default_theta(pp));
    b.param("delta", delta);
    b.param("m", m);
    b.param("theta", theta);
    const Problem problem = Problem::build(pp);

    const TimeIntegrals t1 = time_integrals(1.0, m, c.p), t2 = time_integrals(2.0, m, c.p);
    b.near("mass_doubling", t2.mass / t1.mass, 2.0, 1e-10);
    b.near("dissipation_doubling", t2.dissipation / t1.dissipation, std::pow(2.0, -1.0 / (c.p - 1.0)), 1e-8);

    const int lo = static_cast<int>(std::round(std::log10(c.r_min)));
    const int hi = static_cast<int>(std::round(std::log10(c.r_max)));
    const std::vector<double> grid = half_decade_grid(lo, hi);
    const double e = scaling_exponent(pp);
    b.param("scaling_exponent", e);

    if (std::abs(e) <= 1e-12) {
        const ScalingReport rep = J_R_critical_scaling(problem, half_decade_grid(3, 9), m);
        b.flag("J_critical_monotone_5pct", nonincreasing_with_ripple(rep.values, 0.05));
        b.at_most("J_critical_ratio_1e9_1e3", rep.values.back() / rep.values.front(), 0.3);
        b.near("J_critical_loglog_slope", rep.fitted_log_power, rep.predicted_log_power, 0.2);
    } else {
        const ScalingReport rep = J_R_scaling(problem, grid, m);
        b.near("J_R_fitted_power", rep.fitted_power, rep.predicted_power, 0.05);
        b.near("J_R_fitted_log_power", rep.fitted_log_power, rep.predicted_log_power, 0.15);
        const double R = grid[grid.size() / 2];
        const double band = J_integral(problem, CutoffShape::power, R, m, true);
        const double full = J_integral(problem, CutoffShape::power, R, m, false);
        b.near("J_R_band_restriction", full / band - 1.0, 0.0, 1e-8);
    }

    const std::vector<double> I_vals = kernels::tabulate_parallel<double>(
        grid.size(), [&](std::size_t i) { return I_R(problem, CutoffShape::power, grid[i], m); });
    bool monotone = true;
    for (std::size_t i = 1; i < I_vals.size(); ++i) monotone = monotone && I_vals[i] >= I_vals[i - 1];
    b.flag("I_R_nondecreasing", monotone);

    const bool open_case = std::abs(e) <= 1e-12 && hp.is_critical() && !(c.alpha < (c.N - 6) / 2.0);
    if (!open_case && theta > theta_threshold(pp)) {
        const auto [r1, r2] = default_source_window(delta);
        const auto f = [r1 = r1, r2 = r2](double r) { return r >= r1 && r <= r2 ? 1.0 : 0.0; };
        const ContradictionReport demo = contradiction_demo(problem, theta, grid, f, r1, r2, m);
        b.near("pairing_per_T_constant", demo.pairing_spread, 0.0, 1e-6);
        if (demo.regime == "subcritical") {
            b.at_least("control_D_ratio", demo.decay_ratio, 1.0);
        } else if (demo.regime == "supercritical") {
            b.at_most("contradiction_D_ratio", demo.decay_ratio, 0.2);
            b.flag("contradiction_D_decreasing", nonincreasing_with_ripple(demo.D, 0.0));
        } else {
            b.flag("contradiction_D_decreasing", nonincreasing_with_ripple(demo.D, 0.05));
        }
    }
    return b.take();
}

SuiteReport supersolutions_suite(const VerifyConfig& c) {
    SuiteBuilder b("supersolutions");
    record_common_params(b, c);
    const HardyParams hp(c.N, c.lambda);
    const RegionVerdict verdict = region_classify(c.N, c.lambda, c.alpha, c.p);
    const ProblemParams pp(hp, c.alpha, c.p, c.delta.value_or(0.5 * (kPi + 2.0)));
    CertificateOptions opt;
    opt.allow_delta_raise = !c.delta.has_value();

    if (verdict.tag != RegionTag::EXISTENCE_SUBCRITICAL) {
        bool rejected = false;
        try {
            build_certificate(pp, opt);
        } catch (const PreconditionError&) {
            rejected = true;
        }
        b.flag("certificate_precondition_rejects", rejected);
        return b.take();
    }

    const SupersolutionCertificate cert = build_certificate(pp, opt);
    b.param("delta", cert.delta);
    b.param("q_or_gamma", cert.q_or_gamma);
    b.param("M", cert.M);
    b.param("epsilon", cert.epsilon);
    b.at_least("residual_min", cert.residual_min, -1e-10);
    b.at_least("chain_margin", cert.chain_margin, -1e-12);
    b.near("epsilon_choice", std::pow(cert.epsilon, c.p - 1.0) * cert.M, 0.5, 1e-12);

    const int nt = 200, nr = 2000;
    const auto rows = kernels::tabulate_parallel<double>(static_cast<std::size_t>(nt), [&](std::size_t i) {
        const double t = 1e-3 * std::pow(1e5, static_cast<double>(i) / (nt - 1));
        double worst = std::numeric_limits<double>::infinity();
        for (int j = 0; j < nr; ++j) {
            const double r = cert.delta + (kPi - cert.delta) * (j + 0.5) / nr;
            const ParabolicResidual res = parabolic_residual(cert, t, r);
            worst = std::min(worst, res.value / res.scale);
        }
        return worst;
    });
    b.at_least("parabolic_residual_min", *std::min_element(rows.begin(), rows.end()), -1e-10);

    double worst_weak = -std::numeric_limits<double>::infinity();
    int passed = 0, tested = 0;
    try {
        const Barrier bar = Barrier::build(hp, cert.delta);
        const int m = c.m.value_or(default_m(c.p));
        const double Ts[] = {0.5, 1.0, 2.0, 5.0, 10.0};
        for (int k = 0; k < 10; ++k) {
            const CutoffShape shape = k < 5 ? CutoffShape::power : CutoffShape::log;
            const double R = shape == CutoffShape::power ? std::pow(10.0, 2 + k % 5) : std::pow(10.0, 4 + k % 5);
            const TestFunction tf(bar, shape, Ts[k % 5], R, m);
            if (!tf.plateau_at_boundary()) continue;
            const WeakFormCheck w = weak_form_check(cert, tf);
            ++tested;
            passed += w.pass ? 1 : 0;
            worst_weak = std::max(worst_weak, (w.lhs - w.rhs) / w.scale);
        }
    } catch (const PreconditionError&) {
        // delta not above a_lambda: no admissible barrier-based test function
    }
    b.near("weak_form_passes", passed, 10.0, 0.0);
    b.at_most("weak_form_worst_gap", worst_weak, 1e-6);

    if (cert.regime == Regime::critical_hardy) {
        const double r = kPi - 1e-6;
        const ProfileValue v = G_gamma_laplacian(c.N, cert.q_or_gamma, r);
        const double s = std::sin(r), L = -std::log(s), g = cert.q_or_gamma;
        const double lead = g * (1 - g) * std::pow(s, -(c.N - 2) / 2.0 - 2.0) * std::pow(L, g - 2.0);
        b.near("Lg_asymptotic_ratio", v.LG / lead, 1.0, 0.02);
    } else {
        double worst = 0.0;
        const double q = cert.q_or_gamma;
        const RadialFunction G{[q](double r) { return std::pow(std::sin(r), q); },
                               [q](double r) { return q * std::pow(std::sin(r), q - 1) * std::cos(r); },
                               [q](double r) {
                                   const double s = std::sin(r), co = std::cos(r);
                                   return q * (q - 1) * std::pow(s, q - 2) * co * co - q * std::pow(s, q);
                               }};
        for (int i = 1; i <= 1000; ++i) {
            const double r = kPi * i / 1001.0;
            const ProfileValue v = G_q_laplacian(c.N, c.lambda, q, r);
            const double s = std::sin(r);
            const double numeric = -radial_laplacian(G, r, c.N) - c.lambda / (s * s) * v.G;
            worst = std::max(worst, std::abs(numeric - v.LG) / (std::abs(v.LG) + std::abs(c.lambda / (s * s) * v.G)));
        }
        b.near("G_q_closed_form", worst, 0.0, 1e-9);
    }
    return b.take();
}

SuiteReport run_suite(std::string_view name, const VerifyConfig& c) {
    if (name == "geometry") return geometry_suite(c);
    if (name == "barrier") return barrier_suite(c);
    if (name == "cutoffs") return cutoffs_suite(c);
    if (name == "estimates") return estimates_suite(c);
    if (name == "supersolutions") return supersolutions_suite(c);
    throw PreconditionError("verify: unknown suite '" + std::string(name) + "'");
}

}  // namespace

// ---------------------------------------------------------------------------
// Classification

std::string to_string(RegionTag tag) {
    for (const auto& [t, name] : kTagNames)
        if (t == tag) return std::string(name);
    return "INVALID_PARAMS";
}

std::optional<RegionTag> region_tag_from_string(std::string_view name) {
    for (const auto& [t, n] : kTagNames)
        if (n == name) return t;
    return std::nullopt;
}

RegionVerdict region_classify(int N, double lambda, double alpha, double p) {
    RegionVerdict out;
    const bool finite = std::isfinite(lambda) && std::isfinite(alpha) && std::isfinite(p);
    if (N < 3 || !finite || !(p > 1.0) || !(lambda > 0.0) ||
        lambda > HardyParams::lambda_star_of(N) * (1.0 + 1e-12))
        return out;
    const HardyParams hp(N, lambda);
    if (alpha <= -2.0) {
        out.tag = RegionTag::NONEXISTENCE_ALL_P;
        return out;
    }
    const double p_c = critical_exponent(hp, alpha);
    out.p_crit = p_c;
    if (std::abs(p - p_c) <= 1e-12) {
        const bool closed = !hp.is_critical() || alpha < (N - 6) / 2.0;
        out.tag = closed ? RegionTag::NONEXISTENCE_CRITICAL : RegionTag::OPEN_CRITICAL_HARDY;
    } else {
        out.tag = p > p_c ? RegionTag::NONEXISTENCE_SUPERCRITICAL : RegionTag::EXISTENCE_SUBCRITICAL;
    }
    return out;
}

double Range::at(int i) const {
    if (points < 2) return lo;
    return lo + (hi - lo) * i / static_cast<double>(points - 1);
}

RegionMap region_map(int N, double lambda, const Range& alpha, const Range& p, bool boundary_overlay,
                     kernels::Execution exec) {
    if (alpha.points < 1 || p.points < 1) throw PreconditionError("region_map: empty range");
    if (!(alpha.hi >= alpha.lo) || !(p.hi >= p.lo)) throw PreconditionError("region_map: inverted range");
    RegionMap map;
    map.N = N;
    map.lambda = lambda;
    const auto total = static_cast<std::size_t>(alpha.points) * static_cast<std::size_t>(p.points);
    map.cells = kernels::tabulate<RegionCell>(exec, total, [&](std::size_t k) {
        RegionCell cell;
        cell.i_alpha = static_cast<int>(k / static_cast<std::size_t>(p.points));
        cell.i_p = static_cast<int>(k % static_cast<std::size_t>(p.points));
        cell.alpha = alpha.at(cell.i_alpha);
        cell.p = p.at(cell.i_p);
        cell.verdict = region_classify(N, lambda, cell.alpha, cell.p);
        return cell;
    });
    if (boundary_overlay) {
        for (int i = 0; i < alpha.points; ++i) {
            const double a = alpha.at(i);
            const RegionVerdict any = region_classify(N, lambda, a, 2.0);
            if (!any.p_crit) continue;
            const RegionVerdict on_curve = region_classify(N, lambda, a, *any.p_crit);
            map.boundary.push_back({a, *any.p_crit, on_curve.tag});
        }
    }
    return map;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
        out << '\n';
    }
}

std::string region_map_csv(const RegionMap& map) {
    std::ostringstream out;
    out << "kind,alpha,p,tag,p_crit\n";
    for (const RegionCell& c : map.cells) {
        out << "cell," << format_double(c.alpha) << ',' << format_double(c.p) << ',' << to_string(c.verdict.tag)
            << ',' << (c.verdict.p_crit ? format_double(*c.verdict.p_crit) : "") << '\n';
    }
    for (const BoundaryPoint& bp : map.boundary) {
        out << "boundary," << format_double(bp.alpha) << ',' << format_double(bp.p_crit) << ','
            << to_string(bp.tag) << ',' << format_double(bp.p_crit) << '\n';
    }
    return out.str();
}

RegionMap parse_region_map_csv(std::string_view csv) {
    RegionMap map;
    const std::vector<std::string_view> lines = split(csv, '\n');
    if (lines.empty() || lines.front() != "kind,alpha,p,tag,p_crit")
        throw PreconditionError("region map csv: missing header");
    std::map<double, int> alpha_index, p_index;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const std::vector<std::string_view> f = split(lines[i], ',');
        if (f.size() != 5) throw PreconditionError("region map csv: expected 5 fields");
        const auto tag = region_tag_from_string(f[3]);
        if (!tag) throw PreconditionError("region map csv: unknown tag");
        if (f[0] == "cell") {
            RegionCell c;
            c.alpha = parse_double(f[1]);
            c.p = parse_double(f[2]);
            c.verdict.tag = *tag;
            if (!f[4].empty()) c.verdict.p_crit = parse_double(f[4]);
            alpha_index.emplace(c.alpha, 0);
            p_index.emplace(c.p, 0);
            map.cells.push_back(c);
        } else if (f[0] == "boundary") {
            map.boundary.push_back({parse_double(f[1]), parse_double(f[2]), *tag});
        } else {
            throw PreconditionError("region map csv: unknown row kind");
        }
    }
    int k = 0;
    for (auto& [a, idx] : alpha_index) idx = k++;
    k = 0;
    for (auto& [pv, idx] : p_index) idx = k++;
    for (RegionCell& c : map.cells) {
        c.i_alpha = alpha_index[c.alpha];
        c.i_p = p_index[c.p];
    }
    return map;
}

// ---------------------------------------------------------------------------
// Reports

bool SuiteReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string report_to_json(const SuiteReport& report, int indent) {
    nlohmann::ordered_json j;
    j["suite"] = report.suite;
    j["checks"] = nlohmann::ordered_json::array();
    for (const Check& c : report.checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["pass"] = c.pass;
        e["measured"] = c.measured;
        e["expected"] = c.expected;
        e["tolerance"] = c.tolerance;
        j["checks"].push_back(e);
    }
    j["params"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : report.params) j["params"][k] = v;
    j["version"] = report.version;
    return j.dump(indent);
}

SuiteReport report_from_json(std::string_view json) {
    const auto num = [](const nlohmann::json& v) { return v.is_null() ? kNaN : v.get<double>(); };
    SuiteReport r;
    try {
        const nlohmann::json j = nlohmann::json::parse(json);
        r.suite = j.at("suite").get<std::string>();
        r.version = j.at("version").get<std::string>();
        for (const auto& c : j.at("checks"))
            r.checks.push_back({c.at("name").get<std::string>(), c.at("pass").get<bool>(), num(c.at("measured")),
                                num(c.at("expected")), num(c.at("tolerance"))});
        for (const auto& [k, v] : j.at("params").items()) r.params.emplace_back(k, num(v));
    } catch (const nlohmann::json::exception& e) {
        throw PreconditionError(std::string("report json: ") + e.what());
    }
    return r;
}

SuiteReport verify(std::string_view suite, const VerifyConfig& config) {
    if (suite != "all") return run_suite(suite, config);
    const std::size_t n = std::size(kSuites);
    std::vector<SuiteReport> parts =
        kernels::tabulate_parallel<SuiteReport>(n, [&](std::size_t i) { return run_suite(kSuites[i], config); });
    SuiteReport all;
    all.suite = "all";
    all.version = kVersion;
    for (const SuiteReport& part : parts) {
        for (const Check& c : part.checks) {
            Check prefixed = c;
            prefixed.name = part.suite + "/" + c.name;
            all.checks.push_back(prefixed);
        }
        for (const auto& [k, v] : part.params) {
            const bool seen = std::any_of(all.params.begin(), all.params.end(),
                                          [&](const auto& kv) { return kv.first == k; });
            if (!seen) all.params.emplace_back(k, v);
        }
    }
    return all;
}

}  // namespace hardy
