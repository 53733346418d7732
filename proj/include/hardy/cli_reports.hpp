#pragma once

// Region classification, the (alpha, p) region map, verification suites and
// their CSV / JSON serialization.

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hardy/parallel.hpp"

namespace hardy {

enum class RegionTag {
    NONEXISTENCE_ALL_P,
    NONEXISTENCE_SUPERCRITICAL,
    NONEXISTENCE_CRITICAL,
    EXISTENCE_SUBCRITICAL,
    OPEN_CRITICAL_HARDY,
    INVALID_PARAMS,
};

std::string to_string(RegionTag tag);
std::optional<RegionTag> region_tag_from_string(std::string_view name);

struct RegionVerdict {
    RegionTag tag = RegionTag::INVALID_PARAMS;
    std::optional<double> p_crit;  // 1 + (alpha + 2) / lambda_N when alpha > -2
};

/// |p - p_crit| <= 1e-12 counts as p = p_crit.
RegionVerdict region_classify(int N, double lambda, double alpha, double p);

struct Range {
    double lo = 0.0;
    double hi = 0.0;
    int points = 2;  // inclusive endpoints

    double at(int i) const;
};

struct RegionCell {
    int i_alpha = 0;
    int i_p = 0;
    double alpha = 0.0;
    double p = 0.0;
    RegionVerdict verdict;
};

struct BoundaryPoint {
    double alpha = 0.0;
    double p_crit = 0.0;
    RegionTag tag = RegionTag::INVALID_PARAMS;  // verdict exactly on the curve
};

struct RegionMap {
    int N = 3;
    double lambda = 0.0;
    std::vector<RegionCell> cells;          // alpha-major, then p
    std::vector<BoundaryPoint> boundary;    // one per alpha column with alpha > -2
};

/// Every cell is classified pointwise. The boundary overlay samples
/// p_crit(alpha) at the alpha columns and tags the critical verdict there.
RegionMap region_map(int N, double lambda, const Range& alpha, const Range& p, bool boundary_overlay = true,
                     kernels::Execution exec = kernels::Execution::parallel);

/// Columns kind,alpha,p,tag,p_crit; kind is "cell" or "boundary".
std::string region_map_csv(const RegionMap& map);
/// Inverse of region_map_csv (N and lambda are not part of the table).
RegionMap parse_region_map_csv(std::string_view csv);

/// %.17g.
std::string format_double(double x);

/// Header row then one row per record, comma separated, LF line endings.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

struct Check {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
};

struct SuiteReport {
    std::string suite;
    std::vector<Check> checks;
    std::vector<std::pair<std::string, double>> params;
    std::string version;

    bool pass() const;
};

/// {suite, checks: [{name, pass, measured, expected, tolerance}], params, version}.
std::string report_to_json(const SuiteReport& report, int indent = 2);
SuiteReport report_from_json(std::string_view json);

/// Parameters of the verification suites; unset values fall back to the
/// documented defaults (delta = a_lambda + 0.3 (pi - a_lambda), m = ceil(2p/(p-1)) + 1,
/// theta = threshold + 1, R in [1e2, 1e6]).
struct VerifyConfig {
    int N = 5;
    double lambda = 2.0;
    double alpha = 0.0;
    double p = 4.0;
    std::optional<double> delta;
    std::optional<int> m;
    std::optional<double> theta;
    double r_min = 1e2;
    double r_max = 1e6;
    int grid = 1000;
};

inline constexpr std::string_view kSuites[] = {"barrier", "cutoffs", "estimates", "geometry", "supersolutions"};
inline constexpr std::string_view kVersion = "1.0.0";

/// Runs one suite, or every suite for "all" (check names prefixed by the suite).
/// Throws PreconditionError for an unknown suite name.
SuiteReport verify(std::string_view suite, const VerifyConfig& config);

}  // namespace hardy
