#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "hardy/errors.hpp"
#include "hardy/sphere_geometry.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

hardy::RadialFunction cosine() {
    return {[](double r) { return std::cos(r); }, [](double r) { return -std::sin(r); },
            [](double r) { return -std::cos(r); }};
}

TEST(SphereGeometry, UnitSphereAreaClosedForms) {
    EXPECT_NEAR(hardy::unit_sphere_area(2), 2 * kPi, 1e-14);
    EXPECT_NEAR(hardy::unit_sphere_area(3), 4 * kPi, 1e-14);
    EXPECT_NEAR(hardy::unit_sphere_area(4), 2 * kPi * kPi, 1e-13);
    EXPECT_NEAR(hardy::unit_sphere_area(5), 8 * kPi * kPi / 3, 1e-13);
}

TEST(SphereGeometry, CosineIsFirstEigenfunction) {
    for (int N = 2; N <= 7; ++N)
        for (double r : {0.1, 1.0, 2.0, 3.0})
            EXPECT_NEAR(hardy::radial_laplacian(cosine(), r, N), -N * std::cos(r), 1e-13);
}

TEST(SphereGeometry, LaplacianOfCosineSquared) {
    const hardy::RadialFunction f{[](double r) { return std::cos(r) * std::cos(r); },
                                  [](double r) { return -std::sin(2 * r); },
                                  [](double r) { return -2 * std::cos(2 * r); }};
    for (int N : {3, 5})
        for (double r : {0.3, 1.7, 2.9}) {
            const double expected = -2 * std::cos(2 * r) - 2 * (N - 1) * std::cos(r) * std::cos(r);
            EXPECT_NEAR(hardy::radial_laplacian(f, r, N), expected, 1e-13);
        }
}

TEST(SphereGeometry, LaplacianRejectsPoles) {
    EXPECT_THROW(hardy::radial_laplacian(cosine(), 0.0, 3), hardy::DomainError);
    EXPECT_THROW(hardy::radial_laplacian(cosine(), kPi, 3), hardy::DomainError);
}

TEST(SphereGeometry, WholeSphereVolume) {
    // Volumes of S^3 and S^4.
    EXPECT_NEAR(hardy::annulus_integral([](double) { return 1.0; }, hardy::Annulus(0.0, kPi), 3), 2 * kPi * kPi,
                1e-10);
    EXPECT_NEAR(hardy::annulus_integral([](double) { return 1.0; }, hardy::Annulus(0.0, kPi), 4),
                8 * kPi * kPi / 3, 1e-10);
}

TEST(SphereGeometry, HemisphereMoment) {
    // 4 pi int_0^(pi/2) cos r sin^2 r dr = 4 pi / 3.
    const double v =
        hardy::annulus_integral([](double r) { return std::cos(r); }, hardy::Annulus(0.0, kPi / 2), 3);
    EXPECT_NEAR(v, 4 * kPi / 3, 1e-11);
}

TEST(SphereGeometry, AnnulusValidation) {
    EXPECT_NO_THROW(hardy::Annulus(0.0, 1.0));
    EXPECT_THROW(hardy::Annulus(-0.1, 1.0), hardy::PreconditionError);
    EXPECT_THROW(hardy::Annulus(1.0, 1.0), hardy::PreconditionError);
    EXPECT_THROW(hardy::Annulus(1.0, 4.0), hardy::PreconditionError);
}

TEST(SphereGeometry, AntipodalFormsMatchDirectIntegral) {
    const auto f = [](double r) { return std::exp(-r) * (1 + r * r); };
    const auto g = [&](double t) { return f(kPi - t); };
    hardy::QuadOptions opt;
    opt.rel_tol = 1e-12;
    const double direct = hardy::annulus_integral(f, hardy::Annulus(1.0, kPi - 1e-3), 5, 1e-13);
    EXPECT_NEAR(hardy::antipodal_integral(g, 1e-3, kPi - 1.0, 5, opt), direct, 1e-10 * direct);
    EXPECT_NEAR(hardy::antipodal_log_integral(g, 1e-3, kPi - 1.0, 5, opt), direct, 1e-10 * direct);
}

TEST(SphereGeometry, AntipodalLogIntegralEdgeCases) {
    const auto g = [](double) { return 1.0; };
    EXPECT_THROW(hardy::antipodal_log_integral(g, 0.0, 1.0, 3, {}), hardy::DomainError);
    EXPECT_EQ(hardy::antipodal_log_integral(g, 1.0, 0.5, 3, {}), 0.0);
}

TEST(SphereGeometry, GreenIdentityHolds) {
    const hardy::RadialFunction v{[](double r) { return 1.0 / std::sin(r); },
                                  [](double r) { return -std::cos(r) / (std::sin(r) * std::sin(r)); },
                                  [](double r) {
                                      const double s = std::sin(r), c = std::cos(r);
                                      return (s * s + 2 * c * c) / (s * s * s);
                                  }};
    for (int N : {3, 4, 6}) {
        const hardy::GreenResidual a = hardy::green_identity_residual(cosine(), v, hardy::Annulus(0.4, 2.7), N);
        EXPECT_LT(a.residual, 1e-10 * a.scale);
        const hardy::GreenResidual b = hardy::green_identity_residual(v, cosine(), hardy::Annulus(0.2, 3.0), N);
        EXPECT_LT(b.residual, 1e-10 * b.scale);
    }
    EXPECT_THROW(hardy::green_identity_residual(cosine(), v, hardy::Annulus(0.0, 1.0), 3), hardy::PreconditionError);
}

// Property: additivity of the radial measure over random splits.
TEST(SphereGeometryProperty, AdditivityOverRandomSplits) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.05, kPi - 0.05);
    std::uniform_int_distribution<int> dim(2, 8);
    const auto f = [](double r) { return 2.0 + std::sin(3 * r); };
    for (int trial = 0; trial < 30; ++trial) {
        double a = u(rng), b = u(rng), c = u(rng);
        if (a > b) std::swap(a, b);
        if (b > c) std::swap(b, c);
        if (a > b) std::swap(a, b);
        if (!(a < b && b < c)) continue;
        const int N = dim(rng);
        const double whole = hardy::annulus_integral(f, hardy::Annulus(a, c), N);
        const double parts =
            hardy::annulus_integral(f, hardy::Annulus(a, b), N) + hardy::annulus_integral(f, hardy::Annulus(b, c), N);
        EXPECT_NEAR(whole, parts, 1e-10 * std::abs(whole) + 1e-13);
        EXPECT_GT(whole, 0.0);
    }
}

}  // namespace
