#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "hardy/errors.hpp"
#include "hardy/supersolutions.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

hardy::ProblemParams params(int N, double lambda, double alpha, double p, double delta) {
    return hardy::ProblemParams(hardy::HardyParams(N, lambda), alpha, p, delta);
}

// -Lap G - lambda G / sin^2 by a long-double five-point stencil.
double LG_stencil(const std::function<long double(long double)>& G, int N, double lambda, double r) {
    using LD = long double;
    const LD h = 1e-4L, x = r;
    const LD d1 = (-G(x + 2 * h) + 8 * G(x + h) - 8 * G(x - h) + G(x - 2 * h)) / (12 * h);
    const LD d2 = (-G(x + 2 * h) + 16 * G(x + h) - 30 * G(x) + 16 * G(x - h) - G(x - 2 * h)) / (12 * h * h);
    const LD s = std::sin(x);
    return static_cast<double>(-(d2 + (N - 1) * std::cos(x) / s * d1) - lambda * G(x) / (s * s));
}

TEST(PowerProfile, ClosedFormMatchesStencil) {
    for (auto [N, lambda, q] : {std::tuple{5, 2.0, -1.5}, std::tuple{3, 0.1, -0.3}, std::tuple{6, 3.0, -2.5}}) {
        for (double r : {0.4, 1.3, 2.2, 2.9, 3.1}) {
            const hardy::ProfileValue v = hardy::G_q_laplacian(N, lambda, q, r);
            const double ref = LG_stencil([q = q](long double x) { return std::pow(std::sin(x), (long double)q); },
                                          N, lambda, r);
            EXPECT_NEAR(v.LG, ref, 1e-8 * (1 + std::abs(ref)));
            EXPECT_NEAR(v.G, std::pow(std::sin(r), q), 1e-15 * v.G);
        }
    }
}

TEST(PowerProfile, ChoiceOfQAndThreshold) {
    const hardy::ProblemParams pp = params(5, 2.0, 0.0, 2.0, 3.0);
    EXPECT_DOUBLE_EQ(hardy::choose_q(pp), -1.5);
    EXPECT_DOUBLE_EQ(hardy::A_q(5, 2.0, -1.5), 0.25);
    const double b = hardy::compute_b_q(5, 2.0, -1.5);
    EXPECT_NEAR(b, 2.880435242686769, 1e-14);
    EXPECT_LT(hardy::G_q_laplacian(5, 2.0, -1.5, b - 1e-6).LG, 0.0);
    EXPECT_GT(hardy::G_q_laplacian(5, 2.0, -1.5, b + 1e-6).LG, 0.0);
    EXPECT_THROW(hardy::choose_q(params(5, 2.0, 0.0, 3.5, 3.0)), hardy::PreconditionError);
    EXPECT_THROW(hardy::choose_q(params(4, 1.0, 0.0, 2.0, 3.0)), hardy::PreconditionError);
    EXPECT_THROW(hardy::compute_b_q(5, 2.0, -0.5), hardy::PreconditionError);
}

TEST(LogProfile, ReferenceValues) {
    // 40-digit mpmath differentiation of G = (sin r)^(-1) (-ln sin r)^(1/2), N = 4.
    const std::pair<double, double> ref[] = {{2.0, -0.49739177579869179},
                                             {2.5, -1.5254080393268677},
                                             {3.0, 9.4540060493919407},
                                             {3.14, 3781189.6555494431}};
    for (auto [r, LG] : ref) EXPECT_NEAR(hardy::G_gamma_laplacian(4, 0.5, r).LG, LG, 1e-9 * std::abs(LG)) << r;
    EXPECT_NEAR(hardy::compute_b_gamma(4, 0.5), 2.9396917971632563, 1e-10);
}

TEST(LogProfile, JetMatchesStencil) {
    for (int N : {3, 4, 7})
        for (double gamma : {0.2, 0.5, 0.9})
            for (double r : {2.0, 2.8, 3.1}) {
                const double k = 0.5 * (N - 2);
                const auto G = [&](long double x) {
                    return std::pow(std::sin(x), (long double)-k) * std::pow(-std::log(std::sin(x)), (long double)gamma);
                };
                const double ref = LG_stencil(G, N, k * k, r);
                // LG cancels terms of size lambda G / sin^2 r.
                const hardy::ProfileValue v = hardy::G_gamma_laplacian(N, gamma, r);
                const double scale = std::abs(v.LG) + k * k * v.G / std::pow(std::sin(r), 2);
                EXPECT_NEAR(v.LG, ref, 1e-8 * scale);
            }
}

TEST(LogProfile, LeadingAsymptotics) {
    for (int N : {4, 5}) {
        const double g = 0.5, r = kPi - 1e-6;
        const double s = std::sin(r), L = -std::log(s);
        const double lead = g * (1 - g) * std::pow(s, -(N - 2) / 2.0 - 2.0) * std::pow(L, g - 2.0);
        EXPECT_NEAR(hardy::G_gamma_laplacian(N, g, r).LG / lead, 1.0, 0.02);
    }
    EXPECT_THROW(hardy::G_gamma_jet(4, 0.5, 1.0), hardy::DomainError);
    EXPECT_THROW(hardy::compute_b_gamma(4, 1.0), hardy::PreconditionError);
}

TEST(Certificate, SubcriticalWorkedExample) {
    const hardy::SupersolutionCertificate c = hardy::build_certificate(params(5, 2.0, 0.0, 2.0, 3.0));
    EXPECT_EQ(c.regime, hardy::Regime::subcritical_hardy);
    EXPECT_DOUBLE_EQ(c.q_or_gamma, -1.5);
    // sup over s = sin r in (0, sin 3] of sqrt(s) / (1/4 - 15 s^2 / 4) is attained at s = sin 3.
    const double s = std::sin(3.0);
    const double M = std::sqrt(s) / (0.25 - 3.75 * s * s);
    EXPECT_NEAR(c.M, M, 1e-10 * M);
    EXPECT_NEAR(c.epsilon, 1.0 / (2.0 * M), 1e-10);
    EXPECT_NEAR(std::pow(c.epsilon, c.p - 1.0) * c.M, 0.5, 1e-12);
    EXPECT_GT(c.residual_min, 0.0);
    EXPECT_GE(c.chain_margin, -1e-12);
    EXPECT_FALSE(c.delta_raised);
    EXPECT_GT(c.delta, c.b_threshold);
    EXPECT_NEAR(c.f_eps(3.05), 0.5 * c.F_eps(3.05), 1e-15 * c.F_eps(3.05));
}

TEST(Certificate, CriticalWorkedExample) {
    const hardy::SupersolutionCertificate c = hardy::build_certificate(params(4, 1.0, 0.0, 2.0, 3.0));
    EXPECT_EQ(c.regime, hardy::Regime::critical_hardy);
    EXPECT_DOUBLE_EQ(c.q_or_gamma, 0.5);
    EXPECT_NEAR(c.b_threshold, 2.9396917971632563, 1e-10);
    EXPECT_GT(c.residual_min, 0.0);
    EXPECT_NEAR(std::pow(c.epsilon, c.p - 1.0) * c.M, 0.5, 1e-12);
}

TEST(Certificate, Preconditions) {
    EXPECT_THROW(hardy::build_certificate(params(5, 2.0, 0.0, 3.0, 3.0)), hardy::PreconditionError);
    EXPECT_THROW(hardy::build_certificate(params(5, 2.0, -2.0, 1.5, 3.0)), hardy::PreconditionError);
    EXPECT_THROW(hardy::build_certificate(params(5, 2.0, 0.0, 2.0, 2.5)), hardy::PreconditionError);
    hardy::CertificateOptions bad_gamma;
    bad_gamma.gamma = 1.0;
    EXPECT_THROW(hardy::build_certificate(params(4, 1.0, 0.0, 2.0, 3.0), bad_gamma), hardy::PreconditionError);
    hardy::CertificateOptions raise;
    raise.allow_delta_raise = true;
    const hardy::SupersolutionCertificate c = hardy::build_certificate(params(5, 2.0, 0.0, 2.0, 2.5), raise);
    EXPECT_TRUE(c.delta_raised);
    EXPECT_NEAR(c.delta, c.b_threshold + 0.1 * (kPi - c.b_threshold), 1e-15);
}

TEST(Certificate, ParabolicResidualNonnegative) {
    for (const auto& pp : {params(5, 2.0, 0.0, 2.0, 3.0), params(4, 1.0, 0.0, 2.0, 3.0)}) {
        const hardy::SupersolutionCertificate c = hardy::build_certificate(pp);
        for (int i = 0; i < 40; ++i) {
            const double t = 1e-3 * std::pow(1e5, i / 39.0);
            for (int j = 0; j < 400; ++j) {
                const double r = c.delta + (kPi - c.delta) * (j + 0.5) / 400.0;
                const hardy::ParabolicResidual res = hardy::parabolic_residual(c, t, r);
                EXPECT_GE(res.value, -1e-10 * res.scale);
            }
        }
        EXPECT_THROW(hardy::parabolic_residual(c, 0.0, 3.1), hardy::DomainError);
        EXPECT_THROW(hardy::parabolic_residual(c, 1.0, c.delta), hardy::DomainError);
    }
}

TEST(Certificate, TimeProfile) {
    EXPECT_DOUBLE_EQ(hardy::a_of_t(0.0), 0.5);
    EXPECT_NEAR(hardy::a_of_t(50.0), 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(hardy::a_prime(0.0), 0.5);
}

TEST(WeakForm, PassesForAdmissibleTestFunctions) {
    for (const auto& pp : {params(5, 2.0, 0.0, 2.0, 3.0), params(4, 1.0, 0.0, 2.0, 3.0)}) {
        const hardy::SupersolutionCertificate c = hardy::build_certificate(pp);
        const hardy::Barrier b = hardy::Barrier::build(pp.hardy, c.delta);
        for (auto shape : {hardy::CutoffShape::power, hardy::CutoffShape::log})
            for (double T : {0.5, 3.0}) {
                const double R = shape == hardy::CutoffShape::power ? 1e3 : 1e5;
                const hardy::WeakFormCheck w = hardy::weak_form_check(c, hardy::TestFunction(b, shape, T, R, 5));
                EXPECT_TRUE(w.pass) << w.lhs << " " << w.rhs;
                EXPECT_GT(w.scale, 0.0);
            }
    }
}

TEST(WeakForm, RejectsForeignBarrier) {
    const hardy::SupersolutionCertificate c = hardy::build_certificate(params(5, 2.0, 0.0, 2.0, 3.0));
    const hardy::Barrier other = hardy::Barrier::build(hardy::HardyParams(5, 2.0), 2.9);
    EXPECT_THROW(hardy::weak_form_check(c, hardy::TestFunction(other, hardy::CutoffShape::power, 1.0, 1e3, 5)),
                 hardy::PreconditionError);
}

TEST(Certificate, GridAndSamples) {
    const auto g = hardy::certificate_grid(3.0, 100);
    EXPECT_DOUBLE_EQ(g.front(), 3.0);
    EXPECT_NEAR(g.back(), kPi - 1e-8, 1e-12);
    for (std::size_t i = 1; i < g.size(); ++i) EXPECT_GT(g[i], g[i - 1]);
    const hardy::SupersolutionCertificate c = hardy::build_certificate(params(5, 2.0, 0.0, 2.0, 3.0));
    for (const auto& row : hardy::sample_certificate(c, 200)) {
        EXPECT_GT(row.U, 0.0);
        EXPECT_GT(row.f_eps, 0.0);
        EXPECT_DOUBLE_EQ(row.F_eps, 2.0 * row.f_eps);
    }
    EXPECT_THROW(hardy::certificate_grid(3.0, 2), hardy::PreconditionError);
}

// Property: random subcritical (N, lambda, alpha, p) with p < p_crit yield a
// certificate with positive source and the stated epsilon choice.
TEST(CertificateProperty, RandomSubcriticalParameters) {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> dim(3, 7);
    std::uniform_real_distribution<double> frac(0.1, 0.9), alpha(-1.5, 2.0), pf(0.1, 0.9);
    hardy::CertificateOptions opt;
    opt.allow_delta_raise = true;
    opt.grid_points = 1000;
    for (int i = 0; i < 15; ++i) {
        const int N = dim(rng);
        const hardy::HardyParams hp(N, frac(rng) * hardy::HardyParams::lambda_star_of(N));
        const double a = alpha(rng);
        const double pc = hardy::critical_exponent(hp, a);
        const double p = 1.0 + pf(rng) * (pc - 1.0);
        const hardy::SupersolutionCertificate c = hardy::build_certificate(hardy::ProblemParams(hp, a, p, 3.0), opt);
        EXPECT_GT(c.residual_min, 0.0);
        EXPECT_NEAR(std::pow(c.epsilon, p - 1.0) * c.M, 0.5, 1e-10);
        EXPECT_GT(c.delta, c.b_threshold);
    }
}

}  // namespace
