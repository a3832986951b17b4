// ddl: two- versus three-dose optimization design calculator.
//
// Exit codes: 0 success, 1 runtime or numerical failure, 2 usage or config
// error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "ddl/error.hpp"

namespace {

using namespace ddl;
using namespace ddl::cli;

constexpr int kRuntimeError = 1;
constexpr int kUsageError = 2;

ScenarioConfig base_config(const std::string& config_path) {
    if (!config_path.empty()) return load_config(config_path);
    if (const char* env = std::getenv(kDefaultConfigEnv); env != nullptr && *env != '\0')
        return load_config(env);
    return {};
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw UsageError("cannot open output file '" + out_path + "'");
    out << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two- vs three-dose optimization: power approximations, shape posteriors, "
                 "PCS simulation and readiness ratings",
                 "ddl"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string format_name;
    std::string out_path;
    app.add_option("--config", config_path,
                   std::string("Scenario config JSON (default: $") + kDefaultConfigEnv + ")");
    app.add_option("--seed", seed, "Random seed for stochastic commands");
    app.add_option("--format", format_name, "Output format")
        ->check(CLI::IsMember({"csv", "json", "text"}));
    app.add_option("--out", out_path, "Output file (default: stdout)");

    // power-curve
    auto* power = app.add_subcommand("power-curve", "Phi(G(x|r)) over a power grid");
    PowerCurveOptions power_opts;
    std::string r_list = "1.2,1.5,2.0";
    power->add_option("--x-min", power_opts.x_min, "Smallest power x")->capture_default_str();
    power->add_option("--x-max", power_opts.x_max, "Largest power x")->capture_default_str();
    power->add_option("--step", power_opts.step, "Grid step")->capture_default_str();
    power->add_option("--r", r_list, "Comma-separated relative strengths (> 1)")
        ->capture_default_str();

    // cdf-approx
    auto* cdf = app.add_subcommand("cdf-approx", "Normal CDF against its linearization at 0");
    CdfApproxOptions cdf_opts;
    cdf->add_option("--x-min", cdf_opts.x_min)->capture_default_str();
    cdf->add_option("--x-max", cdf_opts.x_max)->capture_default_str();
    cdf->add_option("--step", cdf_opts.step)->capture_default_str();

    // thresholds
    auto* thresholds = app.add_subcommand("thresholds", "Prior-belief thresholds for dropping a dose");

    // posterior
    auto* posterior = app.add_subcommand("posterior", "Posterior probabilities of the four shapes");
    PosteriorOptions post_opts;
    std::string counts_str;
    std::string post_method = "sampling";
    std::optional<double> post_margin;
    posterior->add_option("--counts", counts_str, "Responders on L,M,H, e.g. 3,6,9")->required();
    posterior->add_option("--n", post_opts.n, "Patients per arm")->capture_default_str();
    posterior->add_option("--samples", post_opts.samples, "Prior draws (sampling method)")
        ->capture_default_str();
    posterior->add_option("--method", post_method)
        ->check(CLI::IsMember({"sampling", "quadrature"}))
        ->capture_default_str();
    posterior->add_option("--grid", post_opts.grid_cells, "Cells per axis (quadrature)")
        ->capture_default_str();
    posterior->add_option("--margin", post_margin, "Comparability margin");
    posterior->add_option("--workers", post_opts.workers, "Threads (0 = all cores)");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo probability of correct selection");
    std::optional<std::string> design;
    std::optional<std::string> pair;
    std::optional<int> n_per_arm;
    std::optional<std::uint64_t> replicates;
    std::optional<std::size_t> posterior_samples;
    std::optional<std::string> truth;
    std::optional<std::string> sim_method;
    std::optional<std::string> sup_prior;
    std::optional<double> sim_margin;
    unsigned workers = 0;
    simulate->add_option("--design", design)
        ->check(CLI::IsMember({"three-arm", "two-arm-mixed", "two-arm-fixed"}));
    simulate->add_option("--pair", pair, "Pair for two-arm-fixed")
        ->check(CLI::IsMember({"LM", "LH", "MH"}));
    simulate->add_option("--n-per-arm", n_per_arm, "Patients per arm (default total_n / arms)");
    simulate->add_option("--replicates", replicates, "Simulated trials (default 10000)");
    simulate->add_option("--posterior-samples", posterior_samples,
                         "Posterior draws per decision (default 100000)");
    simulate->add_option("--truth", truth, "True response rates pL,pM,pH");
    simulate->add_option("--method", sim_method)->check(CLI::IsMember({"sampling", "quadrature"}));
    simulate->add_option("--superiority-prior", sup_prior)->check(CLI::IsMember({"dose", "uniform"}));
    simulate->add_option("--margin", sim_margin, "Comparability margin");
    simulate->add_option("--workers", workers, "Threads (0 = all cores); does not affect results");

    // rate
    auto* rate_cmd = app.add_subcommand("rate", "Phase 3 dose-readiness star rating");
    std::string randomization;
    std::string expansion;
    bool table = false;
    rate_cmd->add_option("randomization", randomization, "none | 2dose | 3dose");
    rate_cmd->add_option("expansion", expansion,
                         "none | backfill-low | extended-moderate | extended-high");
    rate_cmd->add_flag("--table", table, "Print the full table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    try {
        std::optional<OutputFormat> format;
        if (!format_name.empty()) format = parse_format(format_name);

        std::string text;
        if (power->parsed()) {
            power_opts.r_values = parse_number_list(r_list);
            text = render_series(power_curve_series(power_opts), format.value_or(OutputFormat::Csv));
        } else if (cdf->parsed()) {
            text = render_series(cdf_approx_series(cdf_opts), format.value_or(OutputFormat::Csv));
        } else if (thresholds->parsed()) {
            text = cmd_thresholds(format.value_or(OutputFormat::Text));
        } else if (posterior->parsed()) {
            ScenarioConfig config = base_config(config_path);
            try {
                if (seed) config.seed = *seed;
                if (post_margin) config.margin = ComparabilityMargin(*post_margin);
            } catch (const DomainError& e) {
                throw UsageError(e.what());
            }
            post_opts.counts = parse_int_list(counts_str);
            post_opts.method = parse_posterior_method(post_method);
            text = cmd_posterior(post_opts, config, format.value_or(OutputFormat::Text));
        } else if (simulate->parsed()) {
            ScenarioConfig config = base_config(config_path);
            try {
                if (seed) config.seed = *seed;
                if (design) config.design_kind = parse_design_kind(*design);
                if (pair) config.pair = parse_pair(*pair);
                if (n_per_arm) config.n_per_arm = *n_per_arm;
                if (replicates) config.replicates = *replicates;
                if (posterior_samples) config.posterior_samples = *posterior_samples;
                if (sim_method) config.posterior_method = parse_posterior_method(*sim_method);
                if (sup_prior) config.superiority_prior = parse_superiority_prior(*sup_prior);
                if (sim_margin) config.margin = ComparabilityMargin(*sim_margin);
                if (truth) {
                    const auto t = parse_number_list(*truth);
                    if (t.size() != 3) throw UsageError("--truth needs three rates");
                    config.truth = ResponseTriple(t[0], t[1], t[2]);
                    config.optimal.reset();
                }
                config.design();
                config.scenario();
            } catch (const DomainError& e) {
                throw UsageError(e.what());
            }
            text = cmd_simulate(config, format.value_or(OutputFormat::Json), workers);
        } else if (rate_cmd->parsed()) {
            if (table) {
                text = cmd_rate_table(format.value_or(OutputFormat::Csv));
            } else {
                if (randomization.empty() || expansion.empty())
                    throw UsageError("rate needs <randomization> <expansion> or --table");
                text = cmd_rate(parse_randomization(randomization), parse_expansion(expansion),
                                format.value_or(OutputFormat::Text));
            }
        }
        emit(text, out_path);
    } catch (const UsageError& e) {
        std::cerr << "ddl: " << e.what() << "\n";
        return kUsageError;
    } catch (const ConfigError& e) {
        std::cerr << "ddl: config error: " << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "ddl: " << e.what() << "\n";
        return kRuntimeError;
    }
    return 0;
}
