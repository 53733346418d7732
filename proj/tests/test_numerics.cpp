// Quadrature, regression and the serial/parallel kernels.

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "hardy/errors.hpp"
#include "hardy/parallel.hpp"
#include "hardy/quadrature.hpp"
#include "hardy/regression.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

TEST(Quadrature, PolynomialIsExact) {
    const hardy::QuadResult r = hardy::integrate([](double x) { return x * x * x - 2 * x + 1; }, -1.0, 2.0);
    EXPECT_NEAR(r.value, 3.75, 1e-13);
}

TEST(Quadrature, SineOverHalfPeriod) {
    EXPECT_NEAR(hardy::integrate([](double x) { return std::sin(x); }, 0.0, kPi).value, 2.0, 1e-13);
}

TEST(Quadrature, ReversedLimitsFlipSign) {
    const auto f = [](double x) { return std::exp(x); };
    EXPECT_NEAR(hardy::integrate(f, 1.0, 0.0).value, -(std::exp(1.0) - 1.0), 1e-13);
}

TEST(Quadrature, GradedEndpointSingularity) {
    hardy::QuadOptions opt;
    opt.grading = hardy::Grading::lower;
    // int_0^1 x^(-1/2) dx = 2
    EXPECT_NEAR(hardy::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opt).value, 2.0, 1e-9);
}

TEST(Quadrature, BudgetExhaustionThrows) {
    hardy::QuadOptions opt;
    opt.max_intervals = 4;
    opt.rel_tol = 1e-15;
    opt.abs_tol = 0.0;
    EXPECT_THROW(hardy::integrate([](double x) { return std::sin(1.0 / x); }, 1e-3, 1.0, opt),
                 hardy::QuadratureFailure);
}

TEST(Quadrature, SinglePanelErrorEstimate) {
    const hardy::QuadResult r = hardy::gauss_kronrod_panel([](double x) { return std::cos(x); }, 0.0, 1.0);
    EXPECT_NEAR(r.value, std::sin(1.0), 1e-15);
    EXPECT_LT(r.error, 1e-12);
}

TEST(Regression, RecoversPowerAndLogExactly) {
    std::vector<double> x, v;
    for (int i = 0; i <= 8; ++i) {
        x.push_back(std::pow(10.0, 2 + 0.5 * i));
        v.push_back(3.0 * std::pow(x.back(), -0.75) * std::pow(std::log(x.back()), 1.25));
    }
    const hardy::PowerLogFit fit = hardy::fit_power_log(x, v);
    EXPECT_NEAR(fit.power, -0.75, 1e-10);
    EXPECT_NEAR(fit.log_power, 1.25, 1e-9);
    EXPECT_NEAR(fit.intercept, std::log(3.0), 1e-8);
    EXPECT_LT(fit.rms_residual, 1e-10);
}

TEST(Regression, LogOnlyAndPowerOnly) {
    std::vector<double> x, vlog, vpow;
    for (int i = 0; i <= 12; ++i) {
        x.push_back(std::pow(10.0, 3 + 0.5 * i));
        vlog.push_back(2.0 * std::pow(std::log(x.back()), -1.5));
        vpow.push_back(0.5 * std::pow(x.back(), 0.3));
    }
    EXPECT_NEAR(hardy::fit_log_only(x, vlog).log_power, -1.5, 1e-10);
    EXPECT_NEAR(hardy::fit_power_only(x, vpow).power, 0.3, 1e-12);
}

TEST(Regression, DegenerateDesignThrows) {
    const std::vector<double> x{10.0, 10.0, 10.0}, v{1.0, 2.0, 3.0};
    EXPECT_THROW(hardy::fit_power_log(x, v), hardy::NumericalError);
    const std::vector<double> x2{10.0, 100.0, 1000.0}, v2{1.0, -2.0, 3.0};
    EXPECT_THROW(hardy::fit_power_log(x2, v2), hardy::NumericalError);
}

TEST(Kernels, SerialAndParallelAgreeBitwise) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    std::vector<double> xs(4097);
    for (double& x : xs) x = u(rng);
    const auto f = [](double x) { return std::sin(x) * std::exp(-x * x); };
    EXPECT_EQ(hardy::kernels::map_serial(xs, f), hardy::kernels::map_parallel(xs, f));
    const auto mn_s = hardy::kernels::min_serial(xs, f), mn_p = hardy::kernels::min_parallel(xs, f);
    EXPECT_EQ(mn_s.value, mn_p.value);
    EXPECT_EQ(mn_s.index, mn_p.index);
    const auto mx_s = hardy::kernels::max_serial(xs, f), mx_p = hardy::kernels::max_parallel(xs, f);
    EXPECT_EQ(mx_s.value, mx_p.value);
    EXPECT_EQ(mx_s.index, mx_p.index);
    const auto g = [](std::size_t i) { return std::sqrt(static_cast<double>(i)); };
    EXPECT_EQ(hardy::kernels::tabulate<double>(hardy::kernels::Execution::serial, 1000, g),
              hardy::kernels::tabulate<double>(hardy::kernels::Execution::parallel, 1000, g));
}

}  // namespace
