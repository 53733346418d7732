#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "hardy/cutoffs.hpp"
#include "hardy/errors.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

// Independent form of the ramp: phi(x) / (phi(x) + phi(1 - x)), phi = exp(-1/x).
double ramp_oracle(double x) {
    const auto phi = [](double y) { return y > 0.0 ? std::exp(-1.0 / y) : 0.0; };
    return phi(x) / (phi(x) + phi(1.0 - x));
}

hardy::Barrier default_barrier() { return hardy::Barrier::build(hardy::HardyParams(5, 2.0), 0.65 * kPi); }

TEST(Profiles, RampValues) {
    for (double x : {0.05, 0.25, 0.5, 0.7, 0.93}) {
        EXPECT_NEAR(hardy::profile_base(hardy::ProfileKind::eta, x).value, ramp_oracle(x), 1e-15);
        EXPECT_NEAR(hardy::profile_base(hardy::ProfileKind::psi, 0.5 * (x + 1)).value, ramp_oracle(x), 1e-15);
    }
    EXPECT_DOUBLE_EQ(hardy::profile_base(hardy::ProfileKind::eta, 0.5).value, 0.5);
    EXPECT_NEAR(hardy::profile_base(hardy::ProfileKind::zeta, 0.5).value, std::exp(-4.0), 1e-16);
}

TEST(Profiles, PlateausAreExact) {
    for (int m : {1, 3, 7}) {
        for (double s : {-1.0, 0.0, 0.5}) {
            const hardy::Jet j = hardy::profile_eval({hardy::ProfileKind::psi, m}, s);
            EXPECT_EQ(j.value, 0.0);
            EXPECT_EQ(j.d1, 0.0);
            EXPECT_EQ(j.d2, 0.0);
        }
        for (double s : {1.0, 2.0, 1e6}) {
            const hardy::Jet j = hardy::profile_eval({hardy::ProfileKind::psi, m}, s);
            EXPECT_EQ(j.value, 1.0);
            EXPECT_EQ(j.d1, 0.0);
            EXPECT_EQ(j.d2, 0.0);
        }
        EXPECT_EQ(hardy::profile_eval({hardy::ProfileKind::eta, m}, 0.0).value, 0.0);
        EXPECT_EQ(hardy::profile_eval({hardy::ProfileKind::eta, m}, 1.0).value, 1.0);
        EXPECT_EQ(hardy::profile_eval({hardy::ProfileKind::zeta, m}, 0.0).value, 0.0);
        EXPECT_EQ(hardy::profile_eval({hardy::ProfileKind::zeta, m}, 1.0).value, 0.0);
    }
}

TEST(Profiles, DerivativesMatchFiniteDifferences) {
    const double k = 1e-5;
    for (auto kind : {hardy::ProfileKind::psi, hardy::ProfileKind::eta, hardy::ProfileKind::zeta})
        for (int m : {1, 2, 5})
            for (double s : {0.2, 0.55, 0.6, 0.8, 0.95}) {
                const auto f = [&](double x) { return hardy::profile_eval({kind, m}, x).value; };
                const hardy::Jet j = hardy::profile_eval({kind, m}, s);
                const double d1 = (f(s + k) - f(s - k)) / (2 * k);
                const double d2 = (f(s + k) - 2 * f(s) + f(s - k)) / (k * k);
                const double scale = 1.0 + std::abs(j.d2);
                EXPECT_NEAR(j.d1, d1, 1e-7 * (1.0 + std::abs(j.d1)));
                EXPECT_NEAR(j.d2, d2, 1e-4 * scale);
            }
}

TEST(Profiles, MustHavePositiveExponent) {
    EXPECT_THROW(hardy::profile_eval({hardy::ProfileKind::psi, 0}, 0.7), hardy::DomainError);
}

TEST(TimeCutoff, RescalingAndDerivative) {
    for (int m : {2, 4}) {
        for (double t : {0.5, 3.0, 7.5}) {
            EXPECT_NEAR(hardy::zeta_T(20.0, m, 2 * t).value, hardy::zeta_T(10.0, m, t).value, 1e-16);
            const double k = 1e-5;
            const double fd = (hardy::zeta_T(10.0, m, t + k).value - hardy::zeta_T(10.0, m, t - k).value) / (2 * k);
            EXPECT_NEAR(hardy::zeta_T(10.0, m, t).d_t, fd, 1e-9);
        }
        EXPECT_EQ(hardy::zeta_T(10.0, m, 0.0).value, 0.0);
        EXPECT_EQ(hardy::zeta_T(10.0, m, 10.0).value, 0.0);
        EXPECT_EQ(hardy::zeta_T(10.0, m, 11.0).value, 0.0);
    }
    EXPECT_THROW(hardy::zeta_T(0.0, 2, 1.0), hardy::DomainError);
}

TEST(TestFunction, BandsAndSupport) {
    const hardy::Barrier b = default_barrier();
    const hardy::TestFunction power(b, hardy::CutoffShape::power, 1.0, 100.0, 4);
    EXPECT_DOUBLE_EQ(power.support_gap(), 0.005);
    EXPECT_DOUBLE_EQ(power.band_lo(), 0.005);
    EXPECT_DOUBLE_EQ(power.band_hi(), 0.01);
    const hardy::TestFunction logc(b, hardy::CutoffShape::log, 1.0, 1e4, 4);
    EXPECT_DOUBLE_EQ(logc.support_gap(), 1e-4);
    EXPECT_DOUBLE_EQ(logc.band_hi(), 1e-2);
    for (const hardy::TestFunction* tf : {&power, &logc}) {
        EXPECT_TRUE(tf->plateau_at_boundary());
        EXPECT_EQ(tf->spatial_at_distance(0.5 * tf->support_gap()).cutoff, 0.0);
        EXPECT_EQ(tf->spatial_at_distance(1.5 * tf->band_hi()).cutoff, 1.0);
        EXPECT_EQ(tf->spatial_at_distance(1.5 * tf->band_hi()).c1, 0.0);
        EXPECT_GT(tf->spatial_at_distance(0.5 * (tf->band_lo() + tf->band_hi())).cutoff, 0.0);
    }
}

TEST(TestFunction, ProductStructure) {
    const hardy::Barrier b = default_barrier();
    const hardy::TestFunction tf(b, hardy::CutoffShape::power, 2.0, 100.0, 4, 3.0);
    for (double t : {0.3, 1.0, 1.7})
        for (double r : {2.2, 2.9, kPi - 0.008}) {
            const hardy::XiValue x = tf.eval(t, r);
            const hardy::SpatialFactors f = tf.spatial(r);
            const hardy::TimeCutoff z = hardy::zeta_T(2.0, 4, t);
            EXPECT_NEAR(x.value, 3.0 * z.value * f.h * f.cutoff, 1e-12 * (1 + std::abs(x.value)));
            EXPECT_NEAR(x.dt, 3.0 * z.d_t * f.h * f.cutoff, 1e-12 * (1 + std::abs(x.dt)));
            EXPECT_EQ(hardy::xi_eval(tf, t, r).value, x.value);
        }
}

// L_lambda(h c_R) through the factored form against a five-point stencil.
TEST(TestFunction, FactoredOperatorMatchesFiniteDifferences) {
    const hardy::Barrier b = default_barrier();
    for (auto shape : {hardy::CutoffShape::power, hardy::CutoffShape::log}) {
        const hardy::TestFunction tf(b, shape, 1.0, shape == hardy::CutoffShape::power ? 50.0 : 1e3, 5);
        const double lo = tf.band_lo(), hi = tf.band_hi(), k = 1e-3 * (hi - lo);
        const auto X = [&](double s) {
            const hardy::SpatialFactors f = tf.spatial_at_distance(s);
            return f.h * f.cutoff;
        };
        double peak = 0.0, err = 0.0;
        for (int i = 1; i < 20; ++i) {
            const double t = lo + (hi - lo) * i / 20.0;
            const double d1 = (-X(t + 2 * k) + 8 * X(t + k) - 8 * X(t - k) + X(t - 2 * k)) / (12 * k);
            const double d2 =
                (-X(t + 2 * k) + 16 * X(t + k) - 30 * X(t) + 16 * X(t - k) - X(t - 2 * k)) / (12 * k * k);
            const double s = std::sin(t);
            const double numeric = d2 + 4 * std::cos(t) / s * d1 + 2.0 / (s * s) * X(t);
            const hardy::SpatialFactors f = tf.spatial_at_distance(t);
            const double analytic = std::pow(f.base, 3) * f.Lambda;
            peak = std::max(peak, std::abs(analytic));
            err = std::max(err, std::abs(analytic - numeric));
            EXPECT_NEAR(tf.eval(0.5, kPi - t).L_lambda, hardy::zeta_T(1.0, 5, 0.5).value * analytic,
                        1e-12 * std::abs(analytic) + 1e-300);
        }
        EXPECT_LT(err, 1e-6 * peak);
    }
}

TEST(TestFunction, OperatorVanishesOffBand) {
    const hardy::Barrier b = default_barrier();
    const hardy::TestFunction tf(b, hardy::CutoffShape::power, 1.0, 100.0, 4);
    for (double t : {0.02, 0.1, 0.5, 1.0}) EXPECT_NEAR(tf.spatial_at_distance(t).Lambda, 0.0, 1e-9);
}

TEST(TestFunction, Validation) {
    const hardy::Barrier b = default_barrier();
    EXPECT_THROW(hardy::TestFunction(b, hardy::CutoffShape::power, 0.0, 10.0, 4), hardy::DomainError);
    EXPECT_THROW(hardy::TestFunction(b, hardy::CutoffShape::power, 1.0, 1.0, 4), hardy::DomainError);
    EXPECT_THROW(hardy::TestFunction(b, hardy::CutoffShape::power, 1.0, 10.0, 1), hardy::DomainError);
    const hardy::TestFunction tf(b, hardy::CutoffShape::power, 1.0, 10.0, 4);
    EXPECT_THROW(tf.spatial(1.0), hardy::DomainError);
}

TEST(Admissibility, WorkedConfigurations) {
    const hardy::Barrier b = default_barrier();
    const hardy::AdmissibilityReport p =
        hardy::admissibility_check(hardy::TestFunction(b, hardy::CutoffShape::power, 10.0, 1e3, 4));
    EXPECT_TRUE(p.pass);
    EXPECT_TRUE(p.violations.empty());
    EXPECT_GT(p.points_checked, 0);
    const hardy::AdmissibilityReport l =
        hardy::admissibility_check(hardy::TestFunction(b, hardy::CutoffShape::log, 10.0, 1e6, 4), 50, 500);
    EXPECT_TRUE(l.pass);
}

TEST(Admissibility, RejectsMissingBoundaryPlateau) {
    const hardy::Barrier b = hardy::Barrier::build(hardy::HardyParams(5, 2.0), kPi - 0.05);
    const hardy::TestFunction tf(b, hardy::CutoffShape::power, 1.0, 10.0, 4);
    EXPECT_FALSE(tf.plateau_at_boundary());
    const hardy::AdmissibilityReport r = hardy::admissibility_check(tf, 20, 100);
    EXPECT_FALSE(r.pass);
    EXPECT_EQ(r.reason, "R too small for admissibility at this δ");
    ASSERT_FALSE(r.violations.empty());
    EXPECT_EQ(r.violations.front().check, "boundary_normal_plateau");
}

// Property: random admissible (T, R, m) pass every grid check.
TEST(AdmissibilityProperty, RandomConfigurations) {
    const hardy::Barrier b = default_barrier();
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> logT(-1.0, 2.0), logR(1.0, 6.0);
    std::uniform_int_distribution<int> mm(2, 8);
    for (int i = 0; i < 20; ++i) {
        const auto shape = i % 2 ? hardy::CutoffShape::log : hardy::CutoffShape::power;
        const double R = std::pow(10.0, logR(rng) + (shape == hardy::CutoffShape::log ? 1.0 : 0.0));
        const hardy::TestFunction tf(b, shape, std::pow(10.0, logT(rng)), R, mm(rng));
        ASSERT_TRUE(tf.plateau_at_boundary());
        const hardy::AdmissibilityReport r = hardy::admissibility_check(tf, 40, 400);
        EXPECT_TRUE(r.pass) << r.reason;
    }
}

}  // namespace
