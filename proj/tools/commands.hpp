#pragma once

// Subcommand implementations for the `ddl` tool. Each returns the text that
// would be written to the output stream so that it can be tested in-process.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "ddl/readiness.hpp"
#include "ddl/trial_sim.hpp"

namespace ddl::cli {

enum class OutputFormat { Csv, Json, Text };
OutputFormat parse_format(const std::string& s);

// Rectangular numeric table with a name and unique column names.
struct FigureSeries {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    FigureSeries(std::string name, std::vector<std::string> columns);
    void add_row(std::vector<double> row);
    std::size_t column(const std::string& name) const;

    std::string to_csv() const;
    nlohmann::json to_json() const;
};

/// Shortest round-trip decimal form ('.' separator, no grouping).
std::string format_number(double v);

/// Points min, min + step, ..., up to max (inclusive within 1e-9 steps).
std::vector<double> grid(double min, double max, double step);

struct PowerCurveOptions {
    double x_min = 0.25;
    double x_max = 0.75;
    double step = 0.01;
    std::vector<double> r_values = {1.2, 1.5, 2.0};
};
/// Columns (x, r, phi_g); throws UsageError for an empty r list or r <= 1.
FigureSeries power_curve_series(const PowerCurveOptions& options);

struct CdfApproxOptions {
    double x_min = -3.0;
    double x_max = 3.0;
    double step = 0.01;
};
/// Columns (x, phi, linear, abs_error).
FigureSeries cdf_approx_series(const CdfApproxOptions& options);

std::string render_series(const FigureSeries& series, OutputFormat format);

std::string cmd_thresholds(OutputFormat format);

struct PosteriorOptions {
    std::vector<int> counts;  // responders for L, M, H
    int n = 30;
    std::size_t samples = 2'000'000;
    PosteriorMethod method = PosteriorMethod::Sampling;
    int grid_cells = 200;
    unsigned workers = 0;
};
std::string cmd_posterior(const PosteriorOptions& options, const ScenarioConfig& config,
                          OutputFormat format);

nlohmann::json report_to_json(const ScenarioConfig& config, const PcsReport& report);
std::string report_to_csv(const PcsReport& report);
std::string cmd_simulate(const ScenarioConfig& config, OutputFormat format, unsigned workers = 0);

RandomizationLevel parse_randomization(const std::string& s);
ExpansionLevel parse_expansion(const std::string& s);
std::string cmd_rate_table(OutputFormat format);
std::string cmd_rate(RandomizationLevel randomization, ExpansionLevel expansion,
                     OutputFormat format);

/// Parses "a,b,c" into numbers; throws UsageError on malformed input.
std::vector<double> parse_number_list(const std::string& s);
std::vector<int> parse_int_list(const std::string& s);

}  // namespace ddl::cli
