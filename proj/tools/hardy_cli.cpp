// hardy: command-line front end for the barrier, estimates, supersolution
// certificates, region map and verification suites.
//
// Exit codes: 0 success, 1 a verification check failed, 2 usage or
// configuration error, 3 numerical failure.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "hardy/cli_reports.hpp"
#include "hardy/errors.hpp"
#include "hardy/estimates.hpp"
#include "hardy/hardy_barrier.hpp"
#include "hardy/supersolutions.hpp"

namespace {

using hardy::format_double;
using json = nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr double kPi = std::numbers::pi;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Settings {
    std::optional<int> n_dim;
    std::optional<double> lambda, alpha, p, delta, theta, r_min, r_max;
    std::optional<int> m, grid;
    std::optional<std::string> out, format;

    int N() const { return n_dim.value_or(5); }
    double lam() const { return lambda.value_or(2.0); }
    double alph() const { return alpha.value_or(0.0); }
    double pp() const { return p.value_or(4.0); }
    std::string fmt(const char* fallback) const { return format.value_or(fallback); }
};

template <class T>
void fill(std::optional<T>& slot, const json& j, const char* key) {
    if (slot || !j.contains(key)) return;
    try {
        slot = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw UsageError(std::string("config: bad value for '") + key + "'");
    }
}

// Values given on the command line win; the file fills the rest.
void merge_config(Settings& s, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("config: cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw UsageError("config: top level must be an object");
    static const char* known[] = {"n-dim", "lambda", "alpha", "p", "delta", "m", "theta",
                                  "r-min", "r-max", "grid", "out", "format"};
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw UsageError("config: unknown key '" + key + "'");
    }
    fill(s.n_dim, j, "n-dim");
    fill(s.lambda, j, "lambda");
    fill(s.alpha, j, "alpha");
    fill(s.p, j, "p");
    fill(s.delta, j, "delta");
    fill(s.m, j, "m");
    fill(s.theta, j, "theta");
    fill(s.r_min, j, "r-min");
    fill(s.r_max, j, "r-max");
    fill(s.grid, j, "grid");
    fill(s.out, j, "out");
    fill(s.format, j, "format");
}

void emit(const Settings& s, const std::string& text) {
    if (s.out) {
        std::ofstream f(*s.out, std::ios::binary);
        if (!f) throw UsageError("cannot write " + *s.out);
        f << text;
    } else {
        std::cout << text;
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json array_of(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(x);
    return a;
}

void require_format(const std::string& f) {
    if (f != "csv" && f != "json") throw UsageError("--format must be csv or json");
}

hardy::HardyParams hardy_params(const Settings& s) { return hardy::HardyParams(s.N(), s.lam()); }

double default_delta(const hardy::HardyParams& hp) {
    const hardy::HardyPi h_pi(hp, hardy::frobenius_coefficients(hp));
    const double a = hardy::compute_a_lambda(h_pi);
    return a + 0.3 * (kPi - a);
}

// --- subcommands -----------------------------------------------------------

int run_barrier(const Settings& s) {
    const hardy::HardyParams hp = hardy_params(s);
    const double delta = s.delta.value_or(default_delta(hp));
    const hardy::Barrier b = hardy::Barrier::build(hp, delta);
    const auto samples = hardy::sample_barrier(b, s.grid.value_or(1000));
    const std::string fmt = s.fmt("csv");
    require_format(fmt);
    if (fmt == "csv") {
        std::ostringstream out;
        std::vector<std::vector<double>> rows;
        for (const auto& x : samples) rows.push_back({x.r, x.h, x.h_prime, x.ode_residual});
        hardy::write_csv(out, {"r", "h", "h_prime", "ode_residual"}, rows);
        emit(s, out.str());
        return kExitPass;
    }
    const hardy::AsymptoticFit fit = hardy::asymptotic_rate(b);
    json j;
    j["params"] = {{"N", hp.N()}, {"lambda", hp.lambda()}, {"delta", delta}, {"r_floor", b.h_pi().r_floor()}};
    j["a_lambda"] = b.a_lambda();
    j["indicial"] = {{"mu_plus", b.indicial().mu_plus},
                     {"mu_minus", b.indicial().mu_minus},
                     {"lambda_N", b.indicial().lambda_N},
                     {"is_double_root", b.indicial().is_double_root}};
    j["series"] = {{"mu", b.series().mu}, {"match_radius", b.series().match_radius}, {"coeffs", array_of(b.series().coeffs)}};
    j["fit"] = {{"fitted_exponent", fit.exponent}, {"fitted_log_power", fit.log_power}};
    json rows = json::array();
    for (const auto& x : samples)
        rows.push_back({{"r", x.r}, {"h", x.h}, {"h_prime", x.h_prime}, {"ode_residual", x.ode_residual}});
    j["samples"] = rows;
    emit(s, dump(j));
    return kExitPass;
}

int run_alambda(const Settings& s) {
    const hardy::HardyParams hp = hardy_params(s);
    const hardy::HardyPi h_pi(hp, hardy::frobenius_coefficients(hp));
    const double a = hardy::compute_a_lambda(h_pi);
    const std::string fmt = s.fmt("csv");
    require_format(fmt);
    if (fmt == "csv") {
        std::ostringstream out;
        hardy::write_csv(out, {"N", "lambda", "a_lambda", "r_floor"},
                         {{static_cast<double>(hp.N()), hp.lambda(), a, h_pi.r_floor()}});
        emit(s, out.str());
    } else {
        emit(s, dump(json{{"N", hp.N()}, {"lambda", hp.lambda()}, {"a_lambda", a}, {"r_floor", h_pi.r_floor()}}));
    }
    return kExitPass;
}

json scaling_json(const hardy::ScalingReport& r) {
    return json{{"R_grid", array_of(r.R_grid)},
                {"values", array_of(r.values)},
                {"fitted_power", r.fitted_power},
                {"fitted_log_power", r.fitted_log_power},
                {"predicted_power", r.predicted_power},
                {"predicted_log_power", r.predicted_log_power}};
}

int run_estimate(const Settings& s, const std::string& quantity, const std::string& shape_name) {
    const hardy::HardyParams hp = hardy_params(s);
    const double delta = s.delta.value_or(default_delta(hp));
    const hardy::ProblemParams pp(hp, s.alph(), s.pp(), delta);
    const hardy::Problem problem = hardy::Problem::build(pp);
    const int m = s.m.value_or(hardy::default_m(pp.p));
    const bool critical = std::abs(hardy::scaling_exponent(pp)) <= 1e-12;
    const double r_min = s.r_min.value_or(critical ? 1e3 : 1e2);
    const double r_max = s.r_max.value_or(critical ? 1e9 : 1e6);
    const std::vector<double> grid = hardy::geometric_grid(r_min, r_max * (1 + 1e-12), std::sqrt(10.0));
    const std::string fmt = s.fmt("csv");
    require_format(fmt);

    std::string q = quantity;
    if (q == "auto") q = critical ? "critical" : "J";
    if (q == "contradiction") {
        const double theta = s.theta.value_or(hardy::default_theta(pp));
        const auto [r1, r2] = hardy::default_source_window(delta);
        const auto f = [r1 = r1, r2 = r2](double r) { return r >= r1 && r <= r2 ? 1.0 : 0.0; };
        const hardy::ContradictionReport rep = hardy::contradiction_demo(problem, theta, grid, f, r1, r2, m);
        if (fmt == "csv") {
            std::ostringstream out;
            std::vector<std::vector<double>> rows;
            for (std::size_t i = 0; i < rep.R_grid.size(); ++i)
                rows.push_back({rep.R_grid[i], rep.T[i], rep.K1[i], rep.K2[i], rep.D[i], rep.P[i]});
            hardy::write_csv(out, {"R", "T", "K1", "K2", "D", "P"}, rows);
            emit(s, out.str());
        } else {
            emit(s, dump(json{{"regime", rep.regime},
                              {"shape", hardy::to_string(rep.shape)},
                              {"theta", rep.theta},
                              {"m", rep.m},
                              {"R_grid", array_of(rep.R_grid)},
                              {"T", array_of(rep.T)},
                              {"K1", array_of(rep.K1)},
                              {"K2", array_of(rep.K2)},
                              {"D", array_of(rep.D)},
                              {"P", array_of(rep.P)},
                              {"decay_ratio", rep.decay_ratio},
                              {"pairing_spread", rep.pairing_spread},
                              {"D_vanishing", rep.D_vanishing}}));
        }
        return kExitPass;
    }

    hardy::ScalingReport rep;
    if (q == "J") {
        rep = hardy::J_R_scaling(problem, grid, m);
    } else if (q == "critical") {
        rep = hardy::J_R_critical_scaling(problem, grid, m);
    } else if (q == "I") {
        const auto shape = shape_name == "log" ? hardy::CutoffShape::log : hardy::CutoffShape::power;
        rep = hardy::I_R_scaling(problem, shape, grid, m);
    } else {
        throw UsageError("--quantity must be auto, J, I, critical or contradiction");
    }
    if (fmt == "csv") {
        std::ostringstream out;
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < rep.R_grid.size(); ++i) rows.push_back({rep.R_grid[i], rep.values[i]});
        hardy::write_csv(out, {"R", "value"}, rows);
        emit(s, out.str());
    } else {
        emit(s, dump(scaling_json(rep)));
    }
    return kExitPass;
}

int run_supersolution(const Settings& s, double gamma, bool raise_delta) {
    const hardy::HardyParams hp = hardy_params(s);
    const hardy::ProblemParams pp(hp, s.alph(), s.p.value_or(2.0), s.delta.value_or(3.0));
    hardy::CertificateOptions opt;
    opt.gamma = gamma;
    opt.allow_delta_raise = raise_delta;
    const hardy::SupersolutionCertificate c = hardy::build_certificate(pp, opt);
    const std::string fmt = s.fmt("json");
    require_format(fmt);
    if (fmt == "csv") {
        std::ostringstream out;
        std::vector<std::vector<double>> rows;
        for (const auto& x : hardy::sample_certificate(c, s.grid.value_or(1000)))
            rows.push_back({x.r, x.U, x.f_eps, x.F_eps});
        hardy::write_csv(out, {"r", "U", "f_eps", "F_eps"}, rows);
        emit(s, out.str());
    } else {
        emit(s, dump(json{{"regime", hardy::to_string(c.regime)},
                          {"N", c.N},
                          {"lambda", c.lambda},
                          {"alpha", c.alpha},
                          {"p", c.p},
                          {"q_or_gamma", c.q_or_gamma},
                          {"b_threshold", c.b_threshold},
                          {"delta", c.delta},
                          {"delta_raised", c.delta_raised},
                          {"M", c.M},
                          {"epsilon", c.epsilon},
                          {"residual_min", c.residual_min},
                          {"chain_margin", c.chain_margin},
                          {"grid_spec", {{"points", c.grid.points}, {"t_min", c.grid.t_min}, {"r_min", c.grid.r_min}}}}));
    }
    return kExitPass;
}

int run_region_map(const Settings& s, const std::vector<double>& alpha_range, const std::vector<double>& p_range,
                   int resolution, bool no_boundary) {
    const int n = s.grid.value_or(resolution);
    if (n < 2) throw UsageError("region-map needs at least 2 points per axis");
    const hardy::Range ar{alpha_range.at(0), alpha_range.at(1), n};
    const hardy::Range pr{p_range.at(0), p_range.at(1), n};
    const hardy::RegionMap map = hardy::region_map(s.N(), s.lam(), ar, pr, !no_boundary);
    const std::string fmt = s.fmt("csv");
    require_format(fmt);
    if (fmt == "csv") {
        emit(s, hardy::region_map_csv(map));
        return kExitPass;
    }
    json cells = json::array(), boundary = json::array();
    for (const auto& c : map.cells)
        cells.push_back({{"alpha", c.alpha},
                         {"p", c.p},
                         {"tag", hardy::to_string(c.verdict.tag)},
                         {"p_crit", c.verdict.p_crit ? json(*c.verdict.p_crit) : json(nullptr)}});
    for (const auto& b : map.boundary)
        boundary.push_back({{"alpha", b.alpha}, {"p_crit", b.p_crit}, {"tag", hardy::to_string(b.tag)}});
    emit(s, dump(json{{"N", map.N}, {"lambda", map.lambda}, {"cells", cells}, {"boundary", boundary}}));
    return kExitPass;
}

int run_verify(const Settings& s, const std::string& suite) {
    hardy::VerifyConfig c;
    c.N = s.N();
    c.lambda = s.lam();
    c.alpha = s.alph();
    c.p = s.pp();
    c.delta = s.delta;
    c.m = s.m;
    c.theta = s.theta;
    c.r_min = s.r_min.value_or(c.r_min);
    c.r_max = s.r_max.value_or(c.r_max);
    c.grid = s.grid.value_or(c.grid);
    const std::string fmt = s.fmt("json");
    require_format(fmt);
    const hardy::SuiteReport rep = hardy::verify(suite, c);
    if (fmt == "json") {
        emit(s, hardy::report_to_json(rep) + "\n");
    } else {
        std::ostringstream out;
        out << "name,pass,measured,expected,tolerance\n";
        for (const auto& ch : rep.checks)
            out << ch.name << ',' << (ch.pass ? 1 : 0) << ',' << format_double(ch.measured) << ','
                << format_double(ch.expected) << ',' << format_double(ch.tolerance) << '\n';
        emit(s, out.str());
    }
    return rep.pass() ? kExitPass : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hardy barrier, scaling estimates and supersolution certificates on S^N"};
    app.require_subcommand(1);
    app.fallthrough();

    Settings s;
    std::string config;
    app.add_option("--n-dim", s.n_dim, "Sphere dimension N >= 3");
    app.add_option("--lambda", s.lambda, "Hardy coefficient, 0 < lambda <= ((N-2)/2)^2");
    app.add_option("--alpha", s.alpha, "Weight exponent alpha");
    app.add_option("--p", s.p, "Nonlinearity exponent p > 1");
    app.add_option("--delta", s.delta, "Inner radius delta of the exterior domain");
    app.add_option("--m", s.m, "Cutoff power m");
    app.add_option("--theta", s.theta, "Time scaling T = R^theta");
    app.add_option("--r-min", s.r_min, "Smallest R of the scaling grid");
    app.add_option("--r-max", s.r_max, "Largest R of the scaling grid");
    app.add_option("--grid", s.grid, "Sample count / grid resolution");
    app.add_option("--out", s.out, "Output file (default stdout)");
    app.add_option("--format", s.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--config", config, "JSON file with the same keys as the flags");

    auto* barrier = app.add_subcommand("barrier", "Sample the radial Hardy barrier h");
    auto* alambda = app.add_subcommand("alambda", "Largest zero a_lambda of h_pi");

    auto* estimate = app.add_subcommand("estimate", "Scaling of J_R / I_R or the contradiction demonstrator");
    std::string quantity = "auto", shape = "power";
    estimate->add_option("--quantity", quantity, "auto, J, I, critical or contradiction");
    estimate->add_option("--shape", shape, "Cutoff shape for I: power or log")->check(CLI::IsMember({"power", "log"}));

    auto* super = app.add_subcommand("supersolution", "Build an existence certificate");
    double gamma = 0.5;
    bool raise_delta = false;
    super->add_option("--gamma", gamma, "Exponent gamma in (0, 1) for lambda = lambda*");
    super->add_flag("--raise-delta", raise_delta, "Raise delta above the positivity threshold if needed");

    auto* rmap = app.add_subcommand("region-map", "Existence / nonexistence map over (alpha, p)");
    std::vector<double> alpha_range{-4.0, 4.0}, p_range{1.01, 6.0};
    int resolution = 101;
    bool no_boundary = false;
    rmap->add_option("--alpha-range", alpha_range, "alpha_min alpha_max")->expected(2);
    rmap->add_option("--p-range", p_range, "p_min p_max")->expected(2);
    rmap->add_option("--resolution", resolution, "Points per axis (overridden by --grid)");
    rmap->add_flag("--no-boundary", no_boundary, "Omit the p_crit(alpha) overlay");

    auto* verify = app.add_subcommand("verify", "Run verification suites");
    std::string suite = "all";
    verify->add_option("suite", suite, "geometry, barrier, cutoffs, estimates, supersolutions or all")
        ->check(CLI::IsMember({"geometry", "barrier", "cutoffs", "estimates", "supersolutions", "all"}));
    verify->add_option("--params-file", config, "Alias of --config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (!config.empty()) merge_config(s, config);
        if (barrier->parsed()) return run_barrier(s);
        if (alambda->parsed()) return run_alambda(s);
        if (estimate->parsed()) return run_estimate(s, quantity, shape);
        if (super->parsed()) return run_supersolution(s, gamma, raise_delta);
        if (rmap->parsed()) return run_region_map(s, alpha_range, p_range, resolution, no_boundary);
        if (verify->parsed()) return run_verify(s, suite);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const hardy::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::invalid_argument& e) {  // PreconditionError
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
