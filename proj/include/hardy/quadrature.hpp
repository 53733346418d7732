#pragma once

#include <functional>

namespace hardy {

using ScalarFunction = std::function<double(double)>;

/// Where the initial panel partition is geometrically graded (ratio 1/2).
enum class Grading { none, lower, upper, both };

struct QuadOptions {
    double abs_tol = 1e-14;
    double rel_tol = 1e-11;
    int max_intervals = 5000;
    Grading grading = Grading::none;
    // Number of halving levels in the graded partition; the smallest panel
    // next to a graded endpoint has width (b - a) * 2^-grading_levels.
    int grading_levels = 30;
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    int evaluations = 0;
    int intervals = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration on [a, b].
/// Throws QuadratureFailure (carrying the best estimate) when the interval
/// budget is exhausted before the requested tolerance is met.
QuadResult integrate(const ScalarFunction& f, double a, double b,
                     const QuadOptions& options = {});

/// Single G7K15 panel; returns the Kronrod value and |K - G| in `error`.
QuadResult gauss_kronrod_panel(const ScalarFunction& f, double a, double b);

}  // namespace hardy
