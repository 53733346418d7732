#include "hardy/regression.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "hardy/errors.hpp"

namespace hardy {
namespace {

enum Column { kLogX = 1, kLogLogX = 2 };

PowerLogFit solve(std::span<const double> x, std::span<const double> v, int columns) {
    if (x.size() != v.size()) throw NumericalError("fit: abscissa/value size mismatch");
    const int ncols = 1 + ((columns & kLogX) ? 1 : 0) + ((columns & kLogLogX) ? 1 : 0);
    const auto n = static_cast<Eigen::Index>(x.size());
    if (n < ncols) throw NumericalError("fit: degenerate grid (too few points)");
    Eigen::MatrixXd design(n, ncols);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double xi = x[static_cast<std::size_t>(i)], vi = v[static_cast<std::size_t>(i)];
        if (!(xi > 0.0) || xi == 1.0 || !(vi > 0.0) || !std::isfinite(vi))
            throw NumericalError("fit: degenerate grid (non-positive value or x == 1)");
        int c = 0;
        if (columns & kLogX) design(i, c++) = std::log(xi);
        if (columns & kLogLogX) design(i, c++) = std::log(std::abs(std::log(xi)));
        design(i, c) = 1.0;
        rhs(i) = std::log(vi);
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < ncols) throw NumericalError("fit: degenerate grid (singular design matrix)");
    const Eigen::VectorXd coef = qr.solve(rhs);

    PowerLogFit fit;
    int c = 0;
    if (columns & kLogX) fit.power = coef(c++);
    if (columns & kLogLogX) fit.log_power = coef(c++);
    fit.intercept = coef(c);
    fit.rms_residual = std::sqrt((design * coef - rhs).squaredNorm() / static_cast<double>(n));
    return fit;
}

}  // namespace

PowerLogFit fit_power_log(std::span<const double> x, std::span<const double> v) {
    return solve(x, v, kLogX | kLogLogX);
}

PowerLogFit fit_log_only(std::span<const double> x, std::span<const double> v) {
    return solve(x, v, kLogLogX);
}

PowerLogFit fit_power_only(std::span<const double> x, std::span<const double> v) {
    return solve(x, v, kLogX);
}

}  // namespace hardy
