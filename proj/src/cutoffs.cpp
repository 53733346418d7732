#include "hardy/cutoffs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hardy/errors.hpp"
#include "hardy/parallel.hpp"

namespace hardy {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxWitnesses = 8;

// S(x) = 1 / (1 + e^g), g = 1/x - 1/(1-x), on 0 < x < 1.
Jet ramp(double x) {
    if (x <= 0.0) return {0.0, 0.0, 0.0};
    if (x >= 1.0) return {1.0, 0.0, 0.0};
    const double y = 1.0 - x;
    const double g = 1.0 / x - 1.0 / y;
    double S, Sc;  // S and 1 - S without cancellation
    if (g > 0.0) {
        const double e = std::exp(-g);
        S = e / (1.0 + e);
        Sc = 1.0 / (1.0 + e);
    } else {
        const double e = std::exp(g);
        S = 1.0 / (1.0 + e);
        Sc = e / (1.0 + e);
    }
    const double w = S * Sc;
    if (w == 0.0) return {S, 0.0, 0.0};
    const double g1 = -1.0 / (x * x) - 1.0 / (y * y);
    const double g2 = 2.0 / (x * x * x) - 2.0 / (y * y * y);
    const double d1 = -w * g1;
    const double d2 = -d1 * (Sc - S) * g1 - w * g2;
    return {S, d1, d2};
}

// zeta(t) = exp(-1/(t(1-t))) on (0, 1).
Jet bump(double t) {
    if (t <= 0.0 || t >= 1.0) return {0.0, 0.0, 0.0};
    const double q = t * (1.0 - t);
    const double v = std::exp(-1.0 / q);
    if (v == 0.0) return {0.0, 0.0, 0.0};
    const double q1 = 1.0 - 2.0 * t;
    const double a = q1 / (q * q);  // (ln zeta)'
    const double a1 = -2.0 / (q * q) - 2.0 * q1 * q1 / (q * q * q);
    return {v, v * a, v * (a * a + a1)};
}

// B^m and its derivatives from the jet of B.
Jet raise(const Jet& b, int m) {
    if (m == 1) return b;
    if (b.value == 0.0) return {0.0, 0.0, 0.0};
    const double pm2 = std::pow(b.value, m - 2);
    const double pm1 = pm2 * b.value;
    return {pm1 * b.value, m * pm1 * b.d1, m * (m - 1) * pm2 * b.d1 * b.d1 + m * pm1 * b.d2};
}

}  // namespace

Jet profile_base(ProfileKind kind, double s) {
    switch (kind) {
        case ProfileKind::psi: {
            const Jet j = ramp(2.0 * s - 1.0);
            return {j.value, 2.0 * j.d1, 4.0 * j.d2};
        }
        case ProfileKind::eta:
            return ramp(s);
        case ProfileKind::zeta:
            return bump(s);
    }
    return {};
}

Jet profile_eval(const SmoothProfile& profile, double s) {
    if (profile.m < 1) throw DomainError("profile exponent m must be >= 1");
    return raise(profile_base(profile.kind, s), profile.m);
}

TimeCutoff zeta_T(double T, int m, double t) {
    if (!(T > 0.0)) throw DomainError("zeta_T: T must be positive");
    if (m < 1) throw DomainError("zeta_T: m must be >= 1");
    const Jet j = raise(bump(t / T), m);
    return {j.value, j.d1 / T};
}

std::string to_string(CutoffShape shape) {
    return shape == CutoffShape::power ? "power" : "log";
}

TestFunction::TestFunction(Barrier barrier, CutoffShape shape, double T, double R, int m,
                           double amplitude)
    : barrier_(std::move(barrier)), shape_(shape), T_(T), R_(R), m_(m), amplitude_(amplitude) {
    if (!(T > 0.0)) throw DomainError("test function: T must be positive");
    if (!(R > 1.0)) throw DomainError("test function: R must exceed 1");
    if (m < 2) throw DomainError("test function: m must be >= 2");
    if (!(amplitude >= 0.0)) throw DomainError("test function: amplitude must be nonnegative");
}

double TestFunction::support_gap() const noexcept {
    return shape_ == CutoffShape::power ? 0.5 / R_ : 1.0 / R_;
}

double TestFunction::band_lo() const noexcept { return support_gap(); }

double TestFunction::band_hi() const noexcept {
    return shape_ == CutoffShape::power ? 1.0 / R_ : 1.0 / std::sqrt(R_);
}

bool TestFunction::plateau_at_boundary() const noexcept {
    return kPi - barrier_.delta() >= band_hi();
}

SpatialFactors TestFunction::spatial_at_distance(double t) const {
    const double t_delta = kPi - barrier_.delta();
    if (!(t > 0.0) || t > t_delta * (1.0 + 1e-15))
        throw DomainError("test function: r outside [delta, pi)");
    SpatialFactors f;
    if (t <= support_gap()) return f;  // c_R == 0 and h is not needed

    double s, s_r, s_rr;
    ProfileKind kind;
    if (shape_ == CutoffShape::power) {
        kind = ProfileKind::psi;
        s = R_ * t;
        s_r = -R_;
        s_rr = 0.0;
    } else {
        kind = ProfileKind::eta;
        const double half_log = 0.5 * std::log(R_);
        s = std::log(R_ * t) / half_log;
        s_r = -1.0 / (t * half_log);
        s_rr = -1.0 / (t * t * half_log);
    }
    const Jet b = profile_base(kind, s);
    const Jet hj = barrier_.jet_at_distance(t);
    f.h = hj.value;
    f.h_prime = hj.d1;
    f.base = b.value;
    const Jet c = raise(b, m_);
    f.cutoff = c.value;
    if (b.d1 == 0.0 && b.d2 == 0.0) return f;  // plateau

    const double B_r = b.d1 * s_r;
    const double B_rr = b.d2 * s_r * s_r + b.d1 * s_rr;
    f.c1 = m_ * std::pow(b.value, m_ - 1) * B_r;
    f.c2 = m_ * (m_ - 1) * std::pow(b.value, m_ - 2) * B_r * B_r +
           m_ * std::pow(b.value, m_ - 1) * B_rr;
    // c1 = B^(m-2) k1, c2 = B^(m-2) k2.
    const double k1 = m_ * b.value * B_r;
    const double k2 = m_ * (m_ - 1) * B_r * B_r + m_ * b.value * B_rr;
    const double cot_r = -std::cos(t) / std::sin(t);
    const int N = barrier_.params().N();
    f.Lambda = f.h * (k2 + (N - 1) * cot_r * k1) + 2.0 * f.h_prime * k1;
    return f;
}

SpatialFactors TestFunction::spatial(double r) const {
    if (r < barrier_.delta() || !(r < kPi)) throw DomainError("test function: r outside [delta, pi)");
    return spatial_at_distance(kPi - r);
}

XiValue TestFunction::eval(double t, double r) const {
    const SpatialFactors f = spatial(r);
    const TimeCutoff z = zeta_T(T_, m_, t);
    if (z.value == 0.0 && z.d_t == 0.0) return {};
    const double hc = f.h * f.cutoff;
    const double lam = f.Lambda == 0.0 ? 0.0 : std::pow(f.base, m_ - 2) * f.Lambda;
    return {amplitude_ * z.value * hc, amplitude_ * z.d_t * hc, amplitude_ * z.value * lam};
}

XiValue xi_eval(const TestFunction& tf, double t, double r) { return tf.eval(t, r); }

AdmissibilityReport admissibility_check(const TestFunction& tf, int time_points, int radial_points) {
    if (time_points < 2 || radial_points < 4)
        throw DomainError("admissibility_check: grid too small");
    AdmissibilityReport rep;
    const double delta = tf.barrier().delta();
    const double t_delta = kPi - delta;

    if (!tf.plateau_at_boundary()) {
        rep.pass = false;
        rep.reason = "R too small for admissibility at this δ";
        rep.violations.push_back({"boundary_normal_plateau", 0.0, delta, tf.spatial(delta).cutoff});
        return rep;
    }

    // Radial grid: uniform in r plus geometric toward the antipode, reaching
    // well inside the support gap, plus the band edges themselves.
    std::vector<double> dist;
    const int n_uniform = radial_points / 2;
    const int n_geo = radial_points - n_uniform;
    for (int i = 0; i < n_uniform; ++i)
        dist.push_back(t_delta * (1.0 - static_cast<double>(i) / n_uniform));
    const double t_lo = tf.support_gap() * 1e-2;
    for (int i = 0; i < n_geo; ++i)
        dist.push_back(t_delta * std::pow(t_lo / t_delta, static_cast<double>(i + 1) / n_geo));
    for (double e : {tf.band_lo(), tf.band_hi()})
        if (e < t_delta) dist.push_back(e);
    std::sort(dist.begin(), dist.end(), std::greater<>());
    dist.erase(std::unique(dist.begin(), dist.end()), dist.end());

    std::vector<double> times;
    const double t_end = 1.2 * tf.T();
    for (int i = 0; i <= time_points; ++i) times.push_back(t_end * i / time_points);

    const auto spatial = kernels::tabulate_parallel<SpatialFactors>(
        dist.size(), [&](std::size_t i) { return tf.spatial_at_distance(dist[i]); });
    std::vector<TimeCutoff> temporal(times.size());
    for (std::size_t j = 0; j < times.size(); ++j) temporal[j] = zeta_T(tf.T(), tf.m(), times[j]);

    auto flag = [&](const char* check, double t, double r, double value) {
        if (rep.violations.size() < kMaxWitnesses) rep.violations.push_back({check, t, r, value});
        else rep.violations.back() = {check, t, r, value};
    };
    long violations = 0;
    const double A = tf.amplitude();
    const double band_tol = 1e-12;
    for (std::size_t i = 0; i < dist.size(); ++i) {
        const double t_dist = dist[i];
        const double r = kPi - t_dist;
        const SpatialFactors& f = spatial[i];
        const bool outside_band = t_dist < tf.band_lo() * (1.0 - band_tol) ||
                                  t_dist > tf.band_hi() * (1.0 + band_tol);
        if (outside_band && (f.c1 != 0.0 || f.c2 != 0.0)) {
            ++violations;
            flag("derivative_band", 0.0, r, std::max(std::abs(f.c1), std::abs(f.c2)));
        }
        if (t_dist <= tf.support_gap() && f.cutoff != 0.0) {
            ++violations;
            flag("radial_support", 0.0, r, f.cutoff);
        }
        for (std::size_t j = 0; j < times.size(); ++j) {
            const double xi = A * temporal[j].value * f.h * f.cutoff;
            ++rep.points_checked;
            if (xi < 0.0 || !std::isfinite(xi)) {
                ++violations;
                flag("nonnegativity", times[j], r, xi);
            }
            if (times[j] >= tf.T() && xi != 0.0) {
                ++violations;
                flag("time_support", times[j], r, xi);
            }
        }
    }
    // Lateral boundary: xi(., delta) = 0 and d_r xi(., delta) >= 0.
    const SpatialFactors fb = tf.spatial(delta);
    const double dr_boundary = fb.h_prime * fb.cutoff + fb.h * fb.c1;
    for (std::size_t j = 0; j < times.size(); ++j) {
        const double xi = A * temporal[j].value * fb.h * fb.cutoff;
        const double normal = -A * temporal[j].value * dr_boundary;
        rep.points_checked += 2;
        if (xi != 0.0) {
            ++violations;
            flag("boundary_value", times[j], delta, xi);
        }
        if (normal > 0.0) {
            ++violations;
            flag("boundary_normal", times[j], delta, normal);
        }
    }
    rep.pass = violations == 0;
    if (!rep.pass) rep.reason = std::to_string(violations) + " admissibility violations";
    return rep;
}

}  // namespace hardy
