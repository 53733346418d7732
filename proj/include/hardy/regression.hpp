#pragma once

#include <span>

namespace hardy {

struct PowerLogFit {
    double power = 0.0;      // coefficient of ln x
    double log_power = 0.0;  // coefficient of ln |ln x|
    double intercept = 0.0;
    double rms_residual = 0.0;
};

/// Ordinary least squares for ln v = a ln x + b ln|ln x| + c.
/// Throws NumericalError on a degenerate design (fewer than three distinct
/// abscissae, non-positive values, x == 1).
PowerLogFit fit_power_log(std::span<const double> x, std::span<const double> v);

/// ln v = b ln|ln x| + c (pure logarithmic scaling).
PowerLogFit fit_log_only(std::span<const double> x, std::span<const double> v);

/// ln v = a ln x + c.
PowerLogFit fit_power_only(std::span<const double> x, std::span<const double> v);

}  // namespace hardy
