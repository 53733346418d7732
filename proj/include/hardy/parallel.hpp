#pragma once

// Data-parallel grid kernels. Every OpenMP kernel has a serial twin with the
// same signature; the serial versions are the reference the tests compare
// against and the baseline of the benchmark target.

#include <cstddef>
#include <exception>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace hardy::kernels {

struct Extremum {
    double value = std::numeric_limits<double>::quiet_NaN();
    std::size_t index = 0;
};

template <class F>
std::vector<double> map_serial(std::span<const double> xs, F&& f) {
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f(xs[i]);
    return out;
}

template <class F>
std::vector<double> map_parallel(std::span<const double> xs, F&& f) {
    std::vector<double> out(xs.size());
    std::exception_ptr failure;
    const auto n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            out[i] = f(xs[i]);
        } catch (...) {
#pragma omp critical(hardy_kernel_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

/// Index-space map, for kernels whose cell is not a single abscissa.
template <class T, class F>
std::vector<T> tabulate_serial(std::size_t n, F&& f) {
    std::vector<T> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
}

template <class T, class F>
std::vector<T> tabulate_parallel(std::size_t n, F&& f) {
    std::vector<T> out(n);
    std::exception_ptr failure;
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            out[i] = f(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(hardy_kernel_failure)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

// Ties resolve to the smallest index in both variants so results are
// bit-identical regardless of thread count.
template <class F>
Extremum min_serial(std::span<const double> xs, F&& f) {
    Extremum best{std::numeric_limits<double>::infinity(), 0};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double v = f(xs[i]);
        if (v < best.value) best = {v, i};
    }
    return best;
}

template <class F>
Extremum min_parallel(std::span<const double> xs, F&& f) {
    const std::vector<double> values = map_parallel(xs, std::forward<F>(f));
    Extremum best{std::numeric_limits<double>::infinity(), 0};
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] < best.value) best = {values[i], i};
    return best;
}

template <class F>
Extremum max_serial(std::span<const double> xs, F&& f) {
    Extremum best{-std::numeric_limits<double>::infinity(), 0};
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double v = f(xs[i]);
        if (v > best.value) best = {v, i};
    }
    return best;
}

template <class F>
Extremum max_parallel(std::span<const double> xs, F&& f) {
    const std::vector<double> values = map_parallel(xs, std::forward<F>(f));
    Extremum best{-std::numeric_limits<double>::infinity(), 0};
    for (std::size_t i = 0; i < values.size(); ++i)
        if (values[i] > best.value) best = {values[i], i};
    return best;
}

enum class Execution { serial, parallel };

template <class T, class F>
std::vector<T> tabulate(Execution exec, std::size_t n, F&& f) {
    return exec == Execution::parallel ? tabulate_parallel<T>(n, std::forward<F>(f))
                                       : tabulate_serial<T>(n, std::forward<F>(f));
}

}  // namespace hardy::kernels
