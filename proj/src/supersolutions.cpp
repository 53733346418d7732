#include "hardy/supersolutions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hardy/errors.hpp"
#include "hardy/parallel.hpp"
#include "hardy/quadrature.hpp"
#include "hardy/sphere_geometry.hpp"

namespace hardy {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTailGap = 1e-8;

void require_open_interval(double r, const char* who) {
    if (!(r > 0.0 && r < kPi)) throw DomainError(std::string(who) + ": r must lie in (0, pi)");
}

// ln of (sin r)^alpha G^p / LG; LG > 0 assumed.
double log_ratio(const ProfileValue& v, double alpha, double p, double r) {
    return alpha * std::log(std::sin(r)) + p * std::log(v.G) - std::log(v.LG);
}

double golden_max(const std::function<double(double)>& f, double a, double b) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 80 && (b - a) > 1e-15 * std::max(1.0, std::abs(b)); ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    return std::max(fc, fd);
}

QuadOptions weak_options() {
    QuadOptions opt;
    opt.abs_tol = 0.0;
    opt.rel_tol = 1e-9;
    opt.max_intervals = 20000;
    return opt;
}

}  // namespace

double A_q(int N, double lambda, double q) { return -(q * (q + N - 2) + lambda); }

ProfileValue G_q_laplacian(int N, double lambda, double q, double r) {
    require_open_interval(r, "G_q_laplacian");
    const double s = std::sin(r);
    const double G = std::pow(s, q);
    return {G, (A_q(N, lambda, q) / (s * s) + q * (q + N - 1)) * G};
}

double choose_q(const ProblemParams& pp) {
    if (!(pp.alpha > -2.0)) throw PreconditionError("choose_q: requires alpha > -2");
    if (pp.hardy.is_critical()) throw PreconditionError("choose_q: requires lambda < lambda*");
    const IndicialData id = indicial_roots(pp.hardy);
    const double lo = std::max(id.mu_minus, -(pp.alpha + 2.0) / (pp.p - 1.0));
    if (!(lo < id.mu_plus))
        throw PreconditionError("choose_q: empty interval, p is not below p_crit");
    return 0.5 * (lo + id.mu_plus);
}

double compute_b_q(int N, double lambda, double q) {
    const IndicialData id = indicial_roots(HardyParams(N, lambda));
    if (!(q > id.mu_minus && q < id.mu_plus))
        throw PreconditionError("compute_b_q: q must lie strictly between the indicial roots");
    const double A = A_q(N, lambda, q);
    const double B = q * (q + N - 1);
    if (B >= 0.0) return 0.0;
    const double ratio = A / (-B);
    if (ratio >= 1.0) return 0.0;
    return kPi - std::asin(std::sqrt(ratio));
}

Jet G_gamma_jet(int N, double gamma, double r) {
    if (!(r > 0.5 * kPi && r < kPi)) throw DomainError("G_gamma: r must lie in (pi/2, pi)");
    const double k = 0.5 * (N - 2);
    const double s = std::sin(r), c = std::cos(r);
    const double L = -std::log(s);
    const double u = k + gamma / L;
    const double phi1 = -(c / s) * u;
    const double phi2 = u / (s * s) - gamma * c * c / (s * s * L * L);
    const double G = std::pow(s, -k) * std::pow(L, gamma);
    return {G, G * phi1, G * (phi2 + phi1 * phi1)};
}

ProfileValue G_gamma_laplacian(int N, double gamma, double r) {
    const Jet g = G_gamma_jet(N, gamma, r);
    const double s = std::sin(r);
    const double cot = std::cos(r) / s;
    const double lambda_star = HardyParams::lambda_star_of(N);
    return {g.value, -(g.d2 + (N - 1) * cot * g.d1) - lambda_star * g.value / (s * s)};
}

double compute_b_gamma(int N, double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw PreconditionError("compute_b_gamma: gamma must lie in (0, 1)");
    const auto LG = [&](double t) { return G_gamma_laplacian(N, gamma, kPi - t).LG; };
    const int n = 4000;
    const double t0 = 1e-6, t1 = 0.5 * kPi * (1.0 - 1e-12);
    double prev = t0;
    if (!(LG(t0) > 0.0)) throw CertificateViolation("compute_b_gamma: LG not positive near pi", kPi - t0);
    for (int i = 1; i <= n; ++i) {
        const double t = t0 * std::pow(t1 / t0, static_cast<double>(i) / n);
        if (!(LG(t) > 0.0)) {
            double lo = prev, hi = t;  // LG(lo) > 0 >= LG(hi)
            while (hi - lo > 1e-14 * hi) {
                const double mid = 0.5 * (lo + hi);
                (LG(mid) > 0.0 ? lo : hi) = mid;
            }
            return kPi - lo;
        }
        prev = t;
    }
    return 0.5 * kPi;
}

std::string to_string(Regime regime) {
    return regime == Regime::subcritical_hardy ? "subcritical_hardy" : "critical_hardy";
}

ProfileValue StationaryProfile::eval(double r) const {
    return regime == Regime::subcritical_hardy ? G_q_laplacian(N, lambda, exponent, r)
                                               : G_gamma_laplacian(N, exponent, r);
}

std::vector<double> certificate_grid(double delta, int points, double t_min) {
    if (points < 4) throw PreconditionError("certificate_grid: need at least 4 points");
    const double t_delta = kPi - delta;
    if (!(t_min > 0.0 && t_min < t_delta)) throw PreconditionError("certificate_grid: bad range");
    std::vector<double> r;
    const int uniform = points / 2, graded = points - uniform;
    for (int i = 0; i < uniform; ++i) r.push_back(delta + t_delta * i / static_cast<double>(uniform));
    for (int i = 0; i < graded; ++i)
        r.push_back(kPi - t_delta * std::pow(t_min / t_delta, (i + 1) / static_cast<double>(graded)));
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
}

double M_sup(const StationaryProfile& profile, double alpha, double p, double delta) {
    const std::vector<double> grid = certificate_grid(delta, 20000, kTailGap);
    const auto log_rho = [&](double r) {
        const ProfileValue v = profile.eval(r);
        if (!(v.LG > 0.0)) {
            std::ostringstream msg;
            msg << "M_sup: denominator -Lap G - lambda G / sin^2 not positive at r = " << r;
            throw CertificateViolation(msg.str(), r);
        }
        return log_ratio(v, alpha, p, r);
    };
    const kernels::Extremum best = kernels::max_parallel(grid, log_rho);
    const double tail = log_rho(grid.back());
    if (!(tail < best.value) && best.index + 1 == grid.size())
        throw CertificateViolation("M_sup: ratio does not decay toward the antipode", grid.back());
    double refined = best.value;
    const std::size_t i = best.index;
    if (i > 0 && i + 1 < grid.size()) refined = std::max(refined, golden_max(log_rho, grid[i - 1], grid[i + 1]));
    else if (i == 0) refined = std::max(refined, golden_max(log_rho, grid[0], grid[1]));
    return std::exp(refined);
}

StationaryProfile SupersolutionCertificate::profile() const {
    return {regime, N, lambda, q_or_gamma};
}

double SupersolutionCertificate::U(double r) const { return epsilon * profile().eval(r).G; }

double SupersolutionCertificate::F_eps(double r) const {
    const ProfileValue v = profile().eval(r);
    return epsilon * v.LG - std::pow(epsilon, p) * std::pow(std::sin(r), alpha) * std::pow(v.G, p);
}

double SupersolutionCertificate::f_eps(double r) const { return 0.5 * F_eps(r); }

SupersolutionCertificate build_certificate(const ProblemParams& pp, const CertificateOptions& options) {
    if (!(pp.alpha > -2.0)) throw PreconditionError("build_certificate: requires alpha > -2");
    const double p_crit = critical_exponent(pp.hardy, pp.alpha);
    if (!(pp.p < p_crit)) throw PreconditionError("build_certificate: requires 1 < p < p_crit");

    SupersolutionCertificate cert;
    cert.N = pp.hardy.N();
    cert.lambda = pp.hardy.lambda();
    cert.alpha = pp.alpha;
    cert.p = pp.p;
    if (pp.hardy.is_critical()) {
        if (!(options.gamma > 0.0 && options.gamma < 1.0))
            throw PreconditionError("build_certificate: gamma must lie in (0, 1)");
        cert.regime = Regime::critical_hardy;
        cert.q_or_gamma = options.gamma;
        cert.b_threshold = compute_b_gamma(cert.N, options.gamma);
    } else {
        cert.regime = Regime::subcritical_hardy;
        cert.q_or_gamma = choose_q(pp);
        cert.b_threshold = compute_b_q(cert.N, cert.lambda, cert.q_or_gamma);
    }
    cert.delta = pp.delta;
    if (!(cert.delta > cert.b_threshold)) {
        if (!options.allow_delta_raise) {
            std::ostringstream msg;
            msg << "build_certificate: delta = " << pp.delta << " must exceed b = " << cert.b_threshold;
            throw PreconditionError(msg.str());
        }
        cert.delta = cert.b_threshold + 0.1 * (kPi - cert.b_threshold);
        cert.delta_raised = true;
    }

    const StationaryProfile profile = cert.profile();
    cert.M = M_sup(profile, cert.alpha, cert.p, cert.delta);
    cert.epsilon = std::pow(2.0 * cert.M, -1.0 / (cert.p - 1.0));

    const std::vector<double> grid = certificate_grid(cert.delta, options.grid_points, kTailGap);
    cert.grid = {static_cast<int>(grid.size()), kTailGap, cert.delta};
    struct Eval {
        double residual, margin;
    };
    const auto evals = kernels::tabulate_parallel<Eval>(grid.size(), [&](std::size_t i) {
        const double r = grid[i];
        const ProfileValue v = profile.eval(r);
        const double linear = cert.epsilon * v.LG;
        const double nonlinear = std::pow(cert.epsilon, cert.p) * std::pow(std::sin(r), cert.alpha) *
                                 std::pow(v.G, cert.p);
        const double scale = std::abs(linear) + nonlinear;
        const double F = linear - nonlinear;
        return Eval{F / scale, (F - 0.5 * linear) / scale};
    });
    cert.residual_min = evals.front().residual;
    cert.chain_margin = evals.front().margin;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < evals.size(); ++i) {
        if (evals[i].residual < cert.residual_min) {
            cert.residual_min = evals[i].residual;
            worst = i;
        }
        cert.chain_margin = std::min(cert.chain_margin, evals[i].margin);
    }
    if (!(cert.residual_min > 0.0)) {
        std::ostringstream msg;
        msg << "build_certificate: F_eps not positive at r = " << grid[worst];
        throw CertificateViolation(msg.str(), grid[worst]);
    }
    return cert;
}

double a_of_t(double t) { return 1.0 - 0.5 * std::exp(-t); }
double a_prime(double t) { return 0.5 * std::exp(-t); }

ParabolicResidual parabolic_residual(const SupersolutionCertificate& cert, double t, double r) {
    if (!(t > 0.0)) throw DomainError("parabolic_residual: t must be positive");
    if (!(r > cert.delta && r < kPi)) throw DomainError("parabolic_residual: r must lie in (delta, pi)");
    const ProfileValue v = cert.profile().eval(r);
    const double a = a_of_t(t);
    const double U = cert.epsilon * v.G;
    const double u = a * U;
    const double terms[] = {
        a_prime(t) * U,                                           // d_t u
        a * cert.epsilon * v.LG,                                  // -Lap u - lambda u / sin^2
        -std::pow(std::sin(r), cert.alpha) * std::pow(u, cert.p),  // -(sin r)^alpha u^p
        -cert.f_eps(r),
    };
    ParabolicResidual out;
    for (double term : terms) {
        out.value += term;
        out.scale += std::abs(term);
    }
    return out;
}

WeakFormCheck weak_form_check(const SupersolutionCertificate& cert, const TestFunction& tf) {
    const Barrier& b = tf.barrier();
    if (b.params().N() != cert.N || std::abs(b.params().lambda() - cert.lambda) > 1e-12 ||
        std::abs(b.delta() - cert.delta) > 1e-12)
        throw PreconditionError("weak_form_check: test function built for a different (N, lambda, delta)");

    // Time factors over supp zeta_T = (0, T), in s = t / T.
    const double T = tf.T();
    const int m = tf.m();
    const auto time_integral = [&](auto&& g) {
        return T * integrate([&](double s) { return g(s * T); }, 0.0, 1.0, weak_options()).value;
    };
    const double p = cert.p;
    const double t_ap = time_integral([&](double t) { return zeta_T(T, m, t).value * std::pow(a_of_t(t), p); });
    const double t_mass = time_integral([&](double t) { return zeta_T(T, m, t).value; });
    const double t_dt = time_integral([&](double t) { return zeta_T(T, m, t).d_t * a_of_t(t); });
    const double t_a = time_integral([&](double t) { return zeta_T(T, m, t).value * a_of_t(t); });

    // Spatial factors of xi = A zeta_T(t) X(r), X = h c_R, over [delta, pi - gap].
    const int N = cert.N;
    const double A = tf.amplitude();
    const StationaryProfile profile = cert.profile();
    const double t_delta = kPi - cert.delta;
    const auto spatial = [&](auto&& g, bool band_only) {
        const auto opt = weak_options();
        double total = antipodal_log_integral(g, tf.band_lo(), tf.band_hi(), N, opt);
        if (!band_only) total += antipodal_log_integral(g, tf.band_hi(), t_delta, N, opt);
        return total;
    };
    const double s_nonlinear = spatial(
        [&](double t) {
            const SpatialFactors f = tf.spatial_at_distance(t);
            if (f.cutoff == 0.0) return 0.0;
            const ProfileValue v = profile.eval(kPi - t);
            return std::pow(std::sin(t), cert.alpha) * std::pow(v.G, p) * A * f.h * f.cutoff;
        },
        false);
    const double s_source = spatial(
        [&](double t) {
            const SpatialFactors f = tf.spatial_at_distance(t);
            return f.cutoff == 0.0 ? 0.0 : cert.f_eps(kPi - t) * A * f.h * f.cutoff;
        },
        false);
    const double s_mass = spatial(
        [&](double t) {
            const SpatialFactors f = tf.spatial_at_distance(t);
            return f.cutoff == 0.0 ? 0.0 : profile.eval(kPi - t).G * A * f.h * f.cutoff;
        },
        false);
    const double s_operator = spatial(
        [&](double t) {
            const SpatialFactors f = tf.spatial_at_distance(t);
            if (f.Lambda == 0.0) return 0.0;
            return profile.eval(kPi - t).G * A * std::pow(f.base, m - 2) * f.Lambda;
        },
        true);

    const double eps = cert.epsilon;
    const double l1 = std::pow(eps, p) * t_ap * s_nonlinear;
    const double l2 = t_mass * s_source;
    const double r1 = -eps * t_dt * s_mass;
    const double r2 = -eps * t_a * s_operator;
    WeakFormCheck out;
    out.lhs = l1 + l2;
    out.rhs = r1 + r2;
    out.scale = std::abs(l1) + std::abs(l2) + std::abs(r1) + std::abs(r2);
    out.pass = out.lhs <= out.rhs + 1e-6 * out.scale;
    return out;
}

std::vector<CertificateSample> sample_certificate(const SupersolutionCertificate& cert, int points) {
    std::vector<CertificateSample> rows;
    for (double r : certificate_grid(cert.delta, points, kTailGap)) {
        const double F = cert.F_eps(r);
        rows.push_back({r, cert.U(r), 0.5 * F, F});
    }
    return rows;
}

}  // namespace hardy
