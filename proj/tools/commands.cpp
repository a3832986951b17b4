#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "ddl/design_tradeoff.hpp"
#include "ddl/error.hpp"
#include "ddl/stat_core.hpp"

namespace ddl::cli {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxGridPoints = 10'000'000;

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string percent(double p) { return fixed(100.0 * p, 2) + "%"; }

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) out.push_back(trim(item));
    if (!s.empty() && s.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    if (s == "text") return OutputFormat::Text;
    throw UsageError("unknown format '" + s + "' (expected csv, json or text)");
}

std::string format_number(double v) {
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<double> parse_number_list(const std::string& s) {
    std::vector<double> out;
    for (const std::string& item : split(s)) {
        double v = 0.0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size())
            throw UsageError("malformed number '" + item + "' in list '" + s + "'");
        out.push_back(v);
    }
    return out;
}

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    for (const std::string& item : split(s)) {
        int v = 0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size())
            throw UsageError("malformed integer '" + item + "' in list '" + s + "'");
        out.push_back(v);
    }
    return out;
}

FigureSeries::FigureSeries(std::string name_, std::vector<std::string> columns_)
    : name(std::move(name_)), columns(std::move(columns_)) {
    for (std::size_t i = 0; i < columns.size(); ++i)
        for (std::size_t k = i + 1; k < columns.size(); ++k)
            if (columns[i] == columns[k]) throw UsageError("duplicate column '" + columns[i] + "'");
}

void FigureSeries::add_row(std::vector<double> row) {
    if (row.size() != columns.size()) throw UsageError("row width does not match columns");
    rows.push_back(std::move(row));
}

std::size_t FigureSeries::column(const std::string& col) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == col) return i;
    throw UsageError("no column named '" + col + "'");
}

std::string FigureSeries::to_csv() const {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_number(row[i]);
        out += '\n';
    }
    return out;
}

json FigureSeries::to_json() const {
    json rows_json = json::array();
    for (const auto& row : rows) rows_json.push_back(row);
    return {{"name", name}, {"columns", columns}, {"rows", rows_json}};
}

std::vector<double> grid(double min, double max, double step) {
    if (!std::isfinite(min) || !std::isfinite(max) || !(step > 0.0) || max < min)
        throw UsageError("grid needs finite bounds with min <= max and step > 0");
    const double span = (max - min) / step;
    if (span > static_cast<double>(kMaxGridPoints)) throw UsageError("grid has too many points");
    const auto n = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    std::vector<double> xs;
    xs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Snap away accumulated binary noise (0.30000000000000004 -> 0.3).
        const double x = std::round((min + static_cast<double>(i) * step) * 1e12) / 1e12;
        xs.push_back(x == 0.0 ? 0.0 : x);
    }
    return xs;
}

FigureSeries power_curve_series(const PowerCurveOptions& o) {
    if (o.r_values.empty()) throw UsageError("power-curve needs at least one r value");
    for (double r : o.r_values)
        if (!(r > 1.0 + 1e-9)) throw UsageError("power-curve: every r must exceed 1");
    const auto xs = grid(o.x_min, o.x_max, o.step);
    for (double x : xs)
        if (!(x > 0.0 && x < 1.0)) throw UsageError("power-curve: x must lie in (0, 1)");

    FigureSeries s("power_curve", {"x", "r", "phi_g"});
    for (double r : o.r_values)
        for (double x : xs)
            s.add_row({x, r, normal_cdf(g_function(PowerValue(x), RelativeStrength(r)))});
    return s;
}

FigureSeries cdf_approx_series(const CdfApproxOptions& o) {
    FigureSeries s("cdf_approx", {"x", "phi", "linear", "abs_error"});
    for (double x : grid(o.x_min, o.x_max, o.step)) {
        const double linear = 0.5 + x * kInvSqrt2Pi;
        s.add_row({x, normal_cdf(x), linear, linear_cdf_error(x)});
    }
    return s;
}

std::string render_series(const FigureSeries& series, OutputFormat format) {
    if (format == OutputFormat::Json) return series.to_json().dump(2) + "\n";
    return series.to_csv();
}

std::string cmd_thresholds(OutputFormat format) {
    struct Row {
        const char* name;
        const char* inequality;
        const char* closed_form;
        double a;
        double b;
        LambdaThreshold t;
    };
    const Row rows[] = {
        {"exclude_middle", "sqrt(3/2)*lambda + sqrt(3/8)*(1-lambda) > 1", "sqrt(8/3) - 1",
         power_ratio(ArmChoice::TwoArmExtremes), power_ratio(ArmChoice::TwoArmAdjacent),
         exclude_middle_threshold()},
        {"adjacent_pair", "sqrt(2/3)*lambda + sqrt(8/3)*(1-lambda) < 1", "2 - sqrt(3/2)",
         std::sqrt(2.0 / 3.0), std::sqrt(8.0 / 3.0), adjacent_pair_threshold()},
    };
    auto check = [](const Row& r) { return r.t.lambda * r.a + (1.0 - r.t.lambda) * r.b; };

    if (format == OutputFormat::Json) {
        json j = json::object();
        for (const Row& r : rows) {
            j[r.name] = {{"lambda", r.t.lambda},
                         {"closed_form", r.closed_form},
                         {"inequality", r.inequality},
                         {"favorable_ratio", r.a},
                         {"unfavorable_ratio", r.b},
                         {"check", check(r)}};
        }
        return j.dump(2) + "\n";
    }
    if (format == OutputFormat::Csv) {
        std::string out = "name,lambda,favorable_ratio,unfavorable_ratio,check\n";
        for (const Row& r : rows)
            out += std::string(r.name) + "," + format_number(r.t.lambda) + "," +
                   format_number(r.a) + "," + format_number(r.b) + "," + format_number(check(r)) +
                   "\n";
        return out;
    }
    std::string out;
    for (const Row& r : rows) {
        out += std::string(r.name) + ": lambda > " + fixed(r.t.lambda, 6) + "  (" +
               r.closed_form + ")\n";
        out += "  " + std::string(r.inequality) + "\n";
        out += "  check: " + fixed(r.t.lambda, 6) + " * " + fixed(r.a, 6) + " + (1 - " +
               fixed(r.t.lambda, 6) + ") * " + fixed(r.b, 6) + " = " + fixed(check(r), 12) + "\n";
    }
    return out;
}

std::string cmd_posterior(const PosteriorOptions& o, const ScenarioConfig& config,
                          OutputFormat format) {
    if (o.counts.size() != 3) throw UsageError("--counts needs three integers (L,M,H)");
    if (o.n < 0) throw UsageError("--n must be non-negative");
    for (int c : o.counts)
        if (c < 0 || c > o.n) throw UsageError("--counts must lie in [0, n]");
    const TrialCounts counts = TrialCounts::uniform(o.counts[0], o.counts[1], o.counts[2], o.n);

    const ShapePosterior post =
        o.method == PosteriorMethod::Sampling
            ? posterior_shapes(counts, config.priors, config.margin, o.samples, config.seed,
                               o.workers)
            : posterior_shapes_quadrature(counts, config.priors, config.margin, o.grid_cells);
    const ShapeId shape = post.most_probable();
    const Dose dose = dose_for_shape(shape);

    if (format == OutputFormat::Json) {
        json probs = json::object();
        for (ShapeId s : kAllShapes) probs[std::string(to_string(s))] = post[s];
        json j = {{"counts", o.counts},   {"n", o.n},
                  {"margin", config.margin.value()},
                  {"method", to_string(o.method)},
                  {"posterior", probs},   {"shape", to_string(shape)},
                  {"dose", to_string(dose)}};
        if (o.method == PosteriorMethod::Sampling) {
            j["samples"] = o.samples;
            j["seed"] = config.seed;
        } else {
            j["grid_cells"] = o.grid_cells;
        }
        return j.dump(2) + "\n";
    }
    if (format == OutputFormat::Csv) {
        std::string out = "shape,probability\n";
        for (ShapeId s : kAllShapes)
            out += std::string(to_string(s)) + "," + format_number(post[s]) + "\n";
        return out;
    }
    std::string out = "counts: L=" + std::to_string(o.counts[0]) + "/" + std::to_string(o.n) +
                      " M=" + std::to_string(o.counts[1]) + "/" + std::to_string(o.n) +
                      " H=" + std::to_string(o.counts[2]) + "/" + std::to_string(o.n) + "\n";
    if (o.method == PosteriorMethod::Sampling)
        out += "method: sampling, " + std::to_string(o.samples) + " prior draws, seed " +
               std::to_string(config.seed) + "\n";
    else
        out += "method: quadrature, " + std::to_string(o.grid_cells) + " cells per axis\n";
    for (ShapeId s : kAllShapes) {
        std::string label = std::string(to_string(s)) + " (" + std::string(describe(s)) + ")";
        label.resize(24, ' ');
        out += "  " + label + percent(post[s]) + "\n";
    }
    out += "most probable shape: " + std::string(to_string(shape)) + "\n";
    out += "selected dose: " + std::string(to_string(dose)) + "\n";
    return out;
}

json report_to_json(const ScenarioConfig& config, const PcsReport& r) {
    json freq = json::object();
    json cnt = json::object();
    for (Dose d : kAllDoses) {
        freq[std::string(to_string(d))] = r.selected_frequency[index(d)];
        cnt[std::string(to_string(d))] = r.selected_count[index(d)];
    }
    return {{"config", to_json(config)},
            {"design", to_string(r.design.kind)},
            {"n_per_arm", r.design.n_per_arm},
            {"optimal", to_string(r.scenario.optimal)},
            {"replicates", r.replicates},
            {"seed", r.seed},
            {"selected_count", cnt},
            {"selected_frequency", freq},
            {"pcs", r.pcs},
            {"pcs_std_error", r.pcs_std_error}};
}

std::string report_to_csv(const PcsReport& r) {
    std::string out =
        "design,n_per_arm,dose,selected_count,selected_frequency,optimal,pcs,pcs_std_error,"
        "replicates,seed\n";
    for (Dose d : kAllDoses) {
        out += std::string(to_string(r.design.kind)) + "," + std::to_string(r.design.n_per_arm) +
               "," + std::string(to_string(d)) + "," +
               std::to_string(r.selected_count[index(d)]) + "," +
               format_number(r.selected_frequency[index(d)]) + "," +
               std::string(to_string(r.scenario.optimal)) + "," + format_number(r.pcs) + "," +
               format_number(r.pcs_std_error) + "," + std::to_string(r.replicates) + "," +
               std::to_string(r.seed) + "\n";
    }
    return out;
}

std::string cmd_simulate(const ScenarioConfig& config, OutputFormat format, unsigned workers) {
    const PcsReport report = simulate_pcs(config.design(), config.scenario(), config.replicates,
                                          config.seed, config.selection(), workers);
    if (format == OutputFormat::Csv) return report_to_csv(report);
    if (format == OutputFormat::Text) {
        std::string out = std::string(to_string(report.design.kind)) + ", " +
                          std::to_string(report.design.n_per_arm) + " per arm, " +
                          std::to_string(report.replicates) + " replicates, seed " +
                          std::to_string(report.seed) + "\n";
        for (Dose d : kAllDoses)
            out += "  select " + std::string(to_string(d)) + ": " +
                   percent(report.frequency(d)) + "\n";
        out += "PCS (optimal " + std::string(to_string(report.scenario.optimal)) +
               "): " + percent(report.pcs) + " +/- " + percent(report.pcs_std_error) + " (1 SE)\n";
        return out;
    }
    return report_to_json(config, report).dump(2) + "\n";
}

RandomizationLevel parse_randomization(const std::string& s) {
    for (RandomizationLevel l : kAllRandomizationLevels)
        if (s == to_string(l)) return l;
    throw UsageError("unknown randomization level '" + s + "' (valid: none, 2dose, 3dose)");
}

ExpansionLevel parse_expansion(const std::string& s) {
    for (ExpansionLevel l : kAllExpansionLevels)
        if (s == to_string(l)) return l;
    throw UsageError("unknown expansion level '" + s +
                     "' (valid: none, backfill-low, extended-moderate, extended-high)");
}

std::string cmd_rate_table(OutputFormat format) {
    if (format == OutputFormat::Json) {
        json cells = json::array();
        for (ExpansionLevel e : kAllExpansionLevels)
            for (RandomizationLevel r : kAllRandomizationLevels) {
                const StarRating s = rate(r, e);
                cells.push_back({{"expansion", to_string(e)},
                                 {"randomization", to_string(r)},
                                 {"stars", s.stars()},
                                 {"rendered", s.render()}});
            }
        return json{{"cells", cells}}.dump(2) + "\n";
    }
    if (format == OutputFormat::Text) {
        std::string out;
        for (ExpansionLevel e : kAllExpansionLevels) {
            std::string label(describe(e));
            label.resize(66, ' ');
            out += label;
            for (RandomizationLevel r : kAllRandomizationLevels) {
                std::string cell = rate(r, e).render();
                cell.resize(7, ' ');
                out += cell;
            }
            out += '\n';
        }
        return out;
    }
    std::string out = "expansion";
    for (RandomizationLevel r : kAllRandomizationLevels) out += "," + std::string(to_string(r));
    out += '\n';
    for (ExpansionLevel e : kAllExpansionLevels) {
        out += std::string(to_string(e));
        for (RandomizationLevel r : kAllRandomizationLevels) out += "," + rate(r, e).render();
        out += '\n';
    }
    return out;
}

std::string cmd_rate(RandomizationLevel randomization, ExpansionLevel expansion,
                     OutputFormat format) {
    const StarRating s = rate(randomization, expansion);
    if (format == OutputFormat::Json)
        return json{{"randomization", to_string(randomization)},
                    {"expansion", to_string(expansion)},
                    {"stars", s.stars()},
                    {"rendered", s.render()},
                    {"viable", s.viable()}}
                   .dump(2) +
               "\n";
    if (format == OutputFormat::Csv)
        return "randomization,expansion,stars,rendered\n" + std::string(to_string(randomization)) +
               "," + std::string(to_string(expansion)) + "," + std::to_string(s.stars()) + "," +
               s.render() + "\n";
    std::string out = s.render();
    if (!s.viable()) out += " (not a viable strategy)";
    return out + "\n";
}

}  // namespace ddl::cli
