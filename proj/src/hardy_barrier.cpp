#include "hardy/hardy_barrier.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "hardy/errors.hpp"
#include "hardy/quadrature.hpp"
#include "hardy/regression.hpp"
#include "power_series.hpp"

namespace hardy {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kCriticalRelTol = 1e-12;
}  // namespace

// ---------------------------------------------------------------------------
// Parameters and indicial data

HardyParams::HardyParams(int N, double lambda) : N_(N), lambda_(lambda) {
    if (N < 3) throw PreconditionError("HardyParams: N must be >= 3");
    const double star = lambda_star_of(N);
    if (!(lambda > 0.0) || lambda > star * (1.0 + kCriticalRelTol)) {
        std::ostringstream msg;
        msg << "HardyParams: need 0 < lambda <= lambda* = " << star << ", got " << lambda;
        throw PreconditionError(msg.str());
    }
    if (lambda > star) lambda_ = star;
}

bool HardyParams::is_critical() const noexcept {
    return lambda_star() - lambda_ <= kCriticalRelTol * lambda_star();
}

IndicialData indicial_roots(const HardyParams& params) {
    const double half = 0.5 * (params.N() - 2);
    const double disc = params.is_critical() ? 0.0 : std::sqrt(half * half - params.lambda());
    IndicialData out;
    // half - disc loses digits when disc ~ half; lambda / (half + disc) does not.
    out.lambda_N = params.lambda() / (half + disc);
    out.mu_plus = -out.lambda_N;
    out.mu_minus = -(params.N() - 2) - out.mu_plus;
    out.is_double_root = params.is_critical();
    if (out.is_double_root) out.mu_minus = out.mu_plus;
    return out;
}

double indicial_polynomial(const HardyParams& params, double s) {
    return s * (s + params.N() - 2) + params.lambda();
}

// ---------------------------------------------------------------------------
// Frobenius series

Jet FrobeniusSeries::eval(double t) const {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, tk = 1.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        const double e = mu + static_cast<double>(k);
        s0 += coeffs[k] * tk;
        s1 += coeffs[k] * e * tk;
        s2 += coeffs[k] * e * (e - 1.0) * tk;
        tk *= t;
    }
    const double tm = std::pow(t, mu);
    return {tm * s0, tm * s1 / t, tm * s2 / (t * t)};
}

double FrobeniusSeries::relative_residual(const HardyParams& params, double t) const {
    const Jet y = eval(t);
    const double s = std::sin(t);
    const double residual =
        y.d2 + (params.N() - 1) * (std::cos(t) / s) * y.d1 + params.lambda() / (s * s) * y.value;
    return std::abs(residual) / std::pow(t, mu - 2.0);
}

FrobeniusSeries frobenius_coefficients(const HardyParams& params, int K, double match_radius) {
    if (K < 4 || K > 20) throw PreconditionError("frobenius_coefficients: need 4 <= K <= 20");
    if (!(match_radius > 0.0 && match_radius < 1.0))
        throw PreconditionError("frobenius_coefficients: match radius must lie in (0, 1)");
    const auto bern = series::bernoulli(static_cast<std::size_t>(K) + 2);
    // t cot t = sum c_j t^(2j), t^2 / sin^2 t = sum d_j t^(2j).
    const std::size_t J = static_cast<std::size_t>(K) / 2 + 1;
    std::vector<double> c(J), d(J);
    double four_pow = 1.0, factorial = 1.0;
    for (std::size_t j = 0; j < J; ++j) {
        if (j > 0) {
            four_pow *= 4.0;
            factorial *= static_cast<double>((2 * j - 1) * (2 * j));
        }
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        c[j] = sign * four_pow * bern[2 * j] / factorial;
        d[j] = -(2.0 * static_cast<double>(j) - 1.0) * c[j];
    }

    FrobeniusSeries out;
    out.mu = indicial_roots(params).mu_plus;
    out.match_radius = match_radius;
    out.coeffs.assign(static_cast<std::size_t>(K) + 1, 0.0);
    out.coeffs[0] = 1.0;
    const double Nm1 = params.N() - 1;
    for (std::size_t n = 1; n <= static_cast<std::size_t>(K); ++n) {
        double acc = 0.0;
        for (std::size_t j = 1; 2 * j <= n; ++j) {
            const double e = out.mu + static_cast<double>(n - 2 * j);
            acc += (Nm1 * c[j] * e + params.lambda() * d[j]) * out.coeffs[n - 2 * j];
        }
        out.coeffs[n] = -acc / indicial_polynomial(params, out.mu + static_cast<double>(n));
    }
    return out;
}

// ---------------------------------------------------------------------------
// h_pi: series + continuation

namespace {

using State = std::array<double, 2>;

// Radial Hardy equation in the antipodal distance t; it has the same form as
// in r because cot(pi - t) = -cot t and d/dr = -d/dt.
struct RadialHardySystem {
    int N;
    double lambda;
    void operator()(const State& y, State& dy, double t) const {
        const double s = std::sin(t);
        dy[0] = y[1];
        dy[1] = -(N - 1) * (std::cos(t) / s) * y[1] - lambda / (s * s) * y[0];
    }
};

std::vector<double> node_grid(double t0, double t1, const HardyPiOptions& opt) {
    std::vector<double> out{t0};
    double t = t0;
    const double dir = t1 > t0 ? 1.0 : -1.0;
    while (dir * (t1 - t) > 0.0) {
        const double step = std::min({opt.node_step, opt.node_relative_step * t,
                                      opt.node_relative_step * (kPi - t)});
        t += dir * step;
        if (dir * (t1 - t) < 0.25 * step) t = t1;
        out.push_back(t);
    }
    return out;
}

}  // namespace

HardyPi::HardyPi(HardyParams params, FrobeniusSeries series, HardyPiOptions options)
    : params_(params), series_(std::move(series)), options_(options) {
    const double tm = series_.match_radius;
    const double t_end = kPi - options_.r_floor;
    if (!(options_.r_floor > 0.0 && t_end > tm))
        throw PreconditionError("HardyPi: r_floor must lie in (0, pi - match_radius)");

    namespace ode = boost::numeric::odeint;
    const RadialHardySystem system{params_.N(), params_.lambda()};
    const Jet start = series_.eval(tm);
    const double abs_tol = options_.rel_tol * (std::abs(start.value) + tm * std::abs(start.d1));

    std::vector<double> t_out, y_out, dy_out;
    auto observer = [&](const State& y, double t) {
        t_out.push_back(t);
        y_out.push_back(y[0]);
        dy_out.push_back(y[1]);
    };
    auto run = [&](const std::vector<double>& times) {
        State y{start.value, start.d1};
        const double dt0 = (times[1] - times[0]) * 0.1;
        try {
            ode::integrate_times(
                ode::make_controlled(abs_tol, options_.rel_tol, ode::runge_kutta_fehlberg78<State>()),
                system, y, times.begin(), times.end(), dt0, observer);
        } catch (const std::exception& e) {
            throw ContinuationError(std::string("h_pi continuation failed: ") + e.what());
        }
    };

    // Inward overlap leg (towards the antipode), stored reversed.
    run(node_grid(tm, 0.5 * tm, options_));
    std::reverse(t_out.begin(), t_out.end());
    std::reverse(y_out.begin(), y_out.end());
    std::reverse(dy_out.begin(), dy_out.end());
    t_out.pop_back();
    y_out.pop_back();
    dy_out.pop_back();
    run(node_grid(tm, t_end, options_));

    nodes_ = std::move(t_out);
    y_ = std::move(y_out);
    dy_ = std::move(dy_out);
    ddy_.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        State y{y_[i], dy_[i]}, dy{};
        system(y, dy, nodes_[i]);
        ddy_[i] = dy[1];
        if (!std::isfinite(y_[i]) || !std::isfinite(dy_[i]))
            throw ContinuationError("h_pi continuation produced a non-finite value");
    }
}

Jet HardyPi::interpolate(double t) const {
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
    std::size_t i = it == nodes_.begin() ? 0 : static_cast<std::size_t>(it - nodes_.begin()) - 1;
    if (i + 1 >= nodes_.size()) i = nodes_.size() - 2;
    // Quintic Hermite interpolation from (y, y', y'') at both ends.
    const double h = nodes_[i + 1] - nodes_[i];
    const double u = (t - nodes_[i]) / h;
    const double c0 = y_[i], c1 = h * dy_[i], c2 = 0.5 * h * h * ddy_[i];
    const double d0 = y_[i + 1] - (c0 + c1 + c2);
    const double d1 = h * dy_[i + 1] - (c1 + 2.0 * c2);
    const double d2 = h * h * ddy_[i + 1] - 2.0 * c2;
    const double c3 = 10.0 * d0 - 4.0 * d1 + 0.5 * d2;
    const double c4 = -15.0 * d0 + 7.0 * d1 - d2;
    const double c5 = 6.0 * d0 - 3.0 * d1 + 0.5 * d2;
    const double p = c0 + u * (c1 + u * (c2 + u * (c3 + u * (c4 + u * c5))));
    const double dp = c1 + u * (2.0 * c2 + u * (3.0 * c3 + u * (4.0 * c4 + u * 5.0 * c5)));
    const double ddp = 2.0 * c2 + u * (6.0 * c3 + u * (12.0 * c4 + u * 20.0 * c5));
    return {p, dp / h, ddp / (h * h)};
}

Jet HardyPi::continuation_at_distance(double t) const {
    if (!(t >= nodes_.front() && t <= nodes_.back())) {
        std::ostringstream msg;
        msg << "h_pi continuation: distance " << t << " outside [" << nodes_.front() << ", "
            << nodes_.back() << "]";
        throw DomainError(msg.str());
    }
    return interpolate(t);
}

Jet HardyPi::jet_at_distance(double t) const {
    if (!(t > 0.0 && t <= nodes_.back())) {
        std::ostringstream msg;
        msg << "h_pi: r = pi - " << t << " outside (r_floor, pi)";
        throw DomainError(msg.str());
    }
    const Jet y = t <= series_.match_radius ? series_.eval(t) : interpolate(t);
    return {y.value, -y.d1, y.d2};
}

Jet HardyPi::jet(double r) const { return jet_at_distance(kPi - r); }

std::pair<double, double> HardyPi::eval(double r) const {
    const Jet j = jet(r);
    return {j.value, j.d1};
}

double compute_a_lambda(const HardyPi& h_pi) {
    // Scan outward from the antipode in t = pi - r: first over the series
    // range, then over the stored continuation nodes.
    const double tm = h_pi.series().match_radius;
    std::vector<double> ts;
    for (int i = 1; i <= 200; ++i) ts.push_back(tm * i / 200.0);
    for (double t : h_pi.nodes())
        if (t > tm) ts.push_back(t);

    auto value = [&](double t) { return h_pi.jet_at_distance(t).value; };
    double prev_t = ts.front(), prev_v = value(prev_t);
    for (std::size_t i = 1; i < ts.size(); ++i) {
        const double t = ts[i], v = value(t);
        if (v == 0.0) return kPi - t;
        if ((prev_v > 0.0) != (v > 0.0)) {
            double lo = prev_t, hi = t;  // value(lo) > 0 >= value(hi)
            while (hi - lo > 1e-11) {
                const double mid = 0.5 * (lo + hi);
                if (value(mid) > 0.0)
                    lo = mid;
                else
                    hi = mid;
            }
            return kPi - 0.5 * (lo + hi);
        }
        prev_t = t;
        prev_v = v;
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// Barrier

namespace {

/// int_x^y tau^e d tau, stable across e = -1.
double power_integral(double e, double x, double y) {
    const double c = e + 1.0;
    const double lx = std::log(x), ly = std::log(y);
    if (c == 0.0) return ly - lx;
    return std::exp(c * lx) * std::expm1(c * (ly - lx)) / c;
}

}  // namespace

struct Barrier::Impl {
    HardyParams params;
    IndicialData indicial;
    FrobeniusSeries series;
    HardyPi h_pi;
    double delta;
    double t_delta;
    double a_lambda;
    // 1/((sin t)^(N-1) y(t)^2) = t^e0 * sum_j weight[j] t^j for t <= match radius.
    double e0;
    std::vector<double> weight;
    // W(t) = int_{t_m}^t of the weight; cumulative values on continuation nodes.
    std::vector<double> w_nodes;
    std::vector<double> w_cumulative;
    double W_delta = 0.0;

    double weight_exact(double t) const {
        const double y = h_pi.jet_at_distance(t).value;
        return 1.0 / (std::pow(std::sin(t), params.N() - 1) * y * y);
    }

    double series_integral(double x, double y) const {
        double acc = 0.0;
        for (std::size_t j = 0; j < weight.size(); ++j)
            acc += weight[j] * power_integral(e0 + static_cast<double>(j), x, y);
        return acc;
    }

    double W(double t) const {
        const double tm = series.match_radius;
        if (t <= tm) return series_integral(tm, t);
        auto it = std::upper_bound(w_nodes.begin(), w_nodes.end(), t);
        const std::size_t i = static_cast<std::size_t>(it - w_nodes.begin()) - 1;
        if (t == w_nodes[i]) return w_cumulative[i];
        QuadOptions opt;
        opt.abs_tol = 0.0;
        opt.rel_tol = 1e-13;
        return w_cumulative[i] +
               integrate([this](double s) { return weight_exact(s); }, w_nodes[i], t, opt).value;
    }

    double reduction_integral(double t) const {
        const double tm = series.match_radius;
        if (t_delta <= tm) return series_integral(t, t_delta);
        return W_delta - W(t);
    }
};

Barrier Barrier::build(const HardyParams& params, double delta, const BarrierOptions& options) {
    FrobeniusSeries series = frobenius_coefficients(params, options.K, options.match_radius);
    HardyPi h_pi(params, series, options.h_pi);
    const double a = compute_a_lambda(h_pi);
    if (!(delta > a && delta < kPi)) {
        std::ostringstream msg;
        msg << "barrier positivity not guaranteed: delta = " << delta << " must lie in (a_lambda = " << a
            << ", pi)";
        throw PreconditionError(msg.str());
    }
    if (delta < h_pi.r_floor()) throw PreconditionError("build_barrier: delta below r_floor");

    auto impl = std::make_shared<Impl>(Impl{params, indicial_roots(params), series, std::move(h_pi),
                                            delta, kPi - delta, a, 0.0, {}, {}, {}});
    Impl& b = *impl;
    b.e0 = 1.0 - params.N() - 2.0 * series.mu;

    // (t / sin t)^(N-1) / (sum A_k t^k)^2 as a power series.
    const std::size_t L = static_cast<std::size_t>(options.weight_series_terms);
    series::Series poly(L, 0.0);
    for (std::size_t k = 0; k < series.coeffs.size() && k < L; ++k) poly[k] = series.coeffs[k];
    const series::Series inv_sinc = series::reciprocal(series::sinc(L));
    b.weight = series::multiply(series::power(inv_sinc, params.N() - 1),
                                series::reciprocal(series::multiply(poly, poly)));

    const double tm = series.match_radius;
    if (b.t_delta > tm) {
        b.w_nodes.push_back(tm);
        for (double t : b.h_pi.nodes())
            if (t > tm && t < b.t_delta) b.w_nodes.push_back(t);
        b.w_nodes.push_back(b.t_delta);
        b.w_cumulative.assign(b.w_nodes.size(), 0.0);
        QuadOptions opt;
        opt.abs_tol = 0.0;
        opt.rel_tol = 1e-13;
        for (std::size_t i = 1; i < b.w_nodes.size(); ++i) {
            b.w_cumulative[i] =
                b.w_cumulative[i - 1] +
                integrate([&b](double s) { return b.weight_exact(s); }, b.w_nodes[i - 1], b.w_nodes[i],
                          opt)
                    .value;
        }
        b.W_delta = b.w_cumulative.back();
    }

    Barrier out;
    out.impl_ = std::move(impl);
    return out;
}

const HardyParams& Barrier::params() const noexcept { return impl_->params; }
const IndicialData& Barrier::indicial() const noexcept { return impl_->indicial; }
const FrobeniusSeries& Barrier::series() const noexcept { return impl_->series; }
const HardyPi& Barrier::h_pi() const noexcept { return impl_->h_pi; }
double Barrier::delta() const noexcept { return impl_->delta; }
double Barrier::a_lambda() const noexcept { return impl_->a_lambda; }

double Barrier::reduction_integral_at_distance(double t) const {
    return impl_->reduction_integral(t);
}

Jet Barrier::jet_at_distance(double t) const {
    const Impl& b = *impl_;
    if (!(t > 0.0 && t <= b.t_delta)) {
        std::ostringstream msg;
        msg << "barrier: r = pi - " << t << " outside [delta, pi)";
        throw DomainError(msg.str());
    }
    const Jet hp = b.h_pi.jet_at_distance(t);
    const int N = b.params.N();
    const double s = std::sin(t);
    const double cot_r = -std::cos(t) / s;
    const double inv = 1.0 / (std::pow(s, N - 1) * hp.value);
    const double I = t == b.t_delta ? 0.0 : b.reduction_integral(t);
    return {hp.value * I, hp.d1 * I + inv, hp.d2 * I - (N - 1) * cot_r * inv};
}

Jet Barrier::jet(double r) const {
    if (!(r >= impl_->delta && r < kPi)) {
        std::ostringstream msg;
        msg << "barrier: r = " << r << " outside [delta, pi)";
        throw DomainError(msg.str());
    }
    return jet_at_distance(r == impl_->delta ? impl_->t_delta : kPi - r);
}

double Barrier::wronskian(double r) const {
    const Jet h = jet(r);
    const Jet hp = impl_->h_pi.jet(r);
    return (hp.value * h.d1 - hp.d1 * h.value) * std::pow(std::sin(r), params().N() - 1);
}

double Barrier::ode_relative_residual_at_distance(double t) const {
    const Jet h = jet_at_distance(t);
    const double s = std::sin(t);
    const double a = h.d2;
    const double b = (params().N() - 1) * (-std::cos(t) / s) * h.d1;
    const double c = params().lambda() / (s * s) * h.value;
    const double scale = std::abs(a) + std::abs(b) + std::abs(c);
    return scale == 0.0 ? 0.0 : std::abs(a + b + c) / scale;
}

double Barrier::ode_relative_residual(double r) const {
    return ode_relative_residual_at_distance(kPi - r);
}

RadialFunction Barrier::radial() const {
    const Barrier self = *this;
    return {[self](double r) { return self.jet(r).value; },
            [self](double r) { return self.jet(r).d1; },
            [self](double r) { return self.jet(r).d2; }};
}

AsymptoticFit asymptotic_rate(const std::function<double(double)>& of_distance, double t_min,
                              double t_max, int points) {
    if (points < 3 || !(t_min > 0.0 && t_min < t_max && t_max < 1.0))
        throw NumericalError("asymptotic_rate: degenerate grid");
    std::vector<double> ts(static_cast<std::size_t>(points)), vs(ts.size());
    const double ratio = std::log(t_max / t_min) / (points - 1);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        ts[i] = t_min * std::exp(ratio * static_cast<double>(i));
        vs[i] = of_distance(ts[i]);
    }
    const PowerLogFit fit = fit_power_log(ts, vs);
    return {fit.power, fit.log_power};
}

AsymptoticFit asymptotic_rate(const Barrier& barrier, double t_min, double t_max, int points) {
    return asymptotic_rate([&](double t) { return barrier.jet_at_distance(t).value; }, t_min, t_max,
                           points);
}

std::vector<BarrierSample> sample_barrier(const Barrier& barrier, int points) {
    if (points < 2) throw PreconditionError("sample_barrier: need at least two points");
    std::vector<double> ts;
    const double t_delta = kPi - barrier.delta();
    const int uniform = points / 2, tail = points - uniform;
    const double t_switch = std::min(1e-2, 0.5 * t_delta);
    for (int i = 0; i < uniform; ++i)
        ts.push_back(t_delta - (t_delta - t_switch) * i / static_cast<double>(uniform));
    for (int i = 0; i < tail; ++i)
        ts.push_back(t_switch * std::pow(1e-6 / t_switch, (i + 1) / static_cast<double>(tail)));
    std::vector<BarrierSample> out;
    out.reserve(ts.size());
    for (double t : ts) {
        const Jet h = barrier.jet_at_distance(t);
        out.push_back({kPi - t, h.value, h.d1, barrier.ode_relative_residual_at_distance(t)});
    }
    return out;
}

}  // namespace hardy
