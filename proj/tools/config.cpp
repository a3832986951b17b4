#include "config.hpp"

#include <fstream>
#include <set>

#include "ddl/error.hpp"

namespace ddl::cli {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, _] : j.items())
        if (!allowed.contains(key)) throw ConfigError(where + ": unknown key '" + key + "'");
}

double number(const json& j, const std::string& where) {
    if (!j.is_number()) throw ConfigError(where + ": expected a number");
    return j.get<double>();
}

std::uint64_t count(const json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
        throw ConfigError(where + ": expected a non-negative integer");
    return j.get<std::uint64_t>();
}

std::string text(const json& j, const std::string& where) {
    if (!j.is_string()) throw ConfigError(where + ": expected a string");
    return j.get<std::string>();
}

BetaParams beta_from_json(const json& j, const std::string& where) {
    check_keys(j, {"a", "b"}, where);
    if (!j.contains("a") || !j.contains("b")) throw ConfigError(where + ": needs both 'a' and 'b'");
    return BetaParams(number(j["a"], where + ".a"), number(j["b"], where + ".b"));
}

json beta_to_json(const BetaParams& p) { return {{"a", p.a()}, {"b", p.b()}}; }

}  // namespace

Dose parse_dose(const std::string& s) {
    if (s == "L") return Dose::L;
    if (s == "M") return Dose::M;
    if (s == "H") return Dose::H;
    throw UsageError("unknown dose '" + s + "' (expected L, M or H)");
}

DosePair parse_pair(const std::string& s) {
    if (s == "LM") return DosePair::LM;
    if (s == "LH") return DosePair::LH;
    if (s == "MH") return DosePair::MH;
    throw UsageError("unknown dose pair '" + s + "' (expected LM, LH or MH)");
}

DesignKind parse_design_kind(const std::string& s) {
    if (s == "three-arm") return DesignKind::ThreeArm;
    if (s == "two-arm-mixed") return DesignKind::TwoArmMixed;
    if (s == "two-arm-fixed") return DesignKind::TwoArmFixed;
    throw UsageError("unknown design '" + s +
                     "' (expected three-arm, two-arm-mixed or two-arm-fixed)");
}

PosteriorMethod parse_posterior_method(const std::string& s) {
    if (s == "sampling") return PosteriorMethod::Sampling;
    if (s == "quadrature") return PosteriorMethod::Quadrature;
    throw UsageError("unknown posterior method '" + s + "' (expected sampling or quadrature)");
}

SuperiorityPrior parse_superiority_prior(const std::string& s) {
    if (s == "dose") return SuperiorityPrior::DoseSpecific;
    if (s == "uniform") return SuperiorityPrior::Uniform;
    throw UsageError("unknown superiority prior '" + s + "' (expected dose or uniform)");
}

DesignSpec ScenarioConfig::design() const {
    DesignSpec d;
    d.kind = design_kind;
    d.pair = pair;
    d.distribution = pair_distribution;
    d.n_per_arm = n_per_arm.value_or(total_n / d.arms());
    d.validate();
    return d;
}

TrueScenario ScenarioConfig::scenario() const {
    TrueScenario s = TrueScenario::from_truth(truth, margin);
    if (optimal && *optimal != s.optimal)
        throw ConfigError("optimal dose '" + std::string(to_string(*optimal)) +
                          "' contradicts the truth triple (rule gives '" +
                          std::string(to_string(s.optimal)) + "')");
    return s;
}

SelectionSettings ScenarioConfig::selection() const {
    SelectionSettings s;
    s.priors = priors;
    s.margin = margin;
    s.posterior_samples = posterior_samples;
    s.method = posterior_method;
    s.superiority_prior = superiority_prior;
    return s;
}

ScenarioConfig config_from_json(const json& j) {
    ScenarioConfig c;
    try {
        check_keys(j,
                   {"priors", "margin", "truth", "optimal", "design", "total_n", "replicates",
                    "posterior_samples", "posterior_method", "superiority_prior", "seed"},
                   "config");
        if (j.contains("priors")) {
            const json& p = j["priors"];
            check_keys(p, {"low", "mid", "high"}, "priors");
            if (p.contains("low")) c.priors.low = beta_from_json(p["low"], "priors.low");
            if (p.contains("mid")) c.priors.mid = beta_from_json(p["mid"], "priors.mid");
            if (p.contains("high")) c.priors.high = beta_from_json(p["high"], "priors.high");
        }
        if (j.contains("margin")) c.margin = ComparabilityMargin(number(j["margin"], "margin"));
        if (j.contains("truth")) {
            const json& t = j["truth"];
            if (!t.is_array() || t.size() != 3) throw ConfigError("truth: expected [pL, pM, pH]");
            c.truth = ResponseTriple(number(t[0], "truth[0]"), number(t[1], "truth[1]"),
                                     number(t[2], "truth[2]"));
        }
        if (j.contains("optimal")) c.optimal = parse_dose(text(j["optimal"], "optimal"));
        if (j.contains("design")) {
            const json& d = j["design"];
            check_keys(d, {"kind", "n_per_arm", "pair", "pair_distribution"}, "design");
            if (d.contains("kind")) c.design_kind = parse_design_kind(text(d["kind"], "design.kind"));
            if (d.contains("n_per_arm"))
                c.n_per_arm = static_cast<int>(count(d["n_per_arm"], "design.n_per_arm"));
            if (d.contains("pair")) c.pair = parse_pair(text(d["pair"], "design.pair"));
            if (d.contains("pair_distribution")) {
                const json& pd = d["pair_distribution"];
                check_keys(pd, {"LM", "LH", "MH"}, "design.pair_distribution");
                auto get = [&](const char* k) {
                    return pd.contains(k) ? number(pd[k], std::string("design.pair_distribution.") + k)
                                          : 0.0;
                };
                c.pair_distribution = PairDistribution(get("LM"), get("LH"), get("MH"));
            }
        }
        if (j.contains("total_n")) c.total_n = static_cast<int>(count(j["total_n"], "total_n"));
        if (j.contains("replicates")) c.replicates = count(j["replicates"], "replicates");
        if (j.contains("posterior_samples"))
            c.posterior_samples = count(j["posterior_samples"], "posterior_samples");
        if (j.contains("posterior_method"))
            c.posterior_method = parse_posterior_method(text(j["posterior_method"], "posterior_method"));
        if (j.contains("superiority_prior"))
            c.superiority_prior =
                parse_superiority_prior(text(j["superiority_prior"], "superiority_prior"));
        if (j.contains("seed")) c.seed = count(j["seed"], "seed");

        c.design();
        c.scenario();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    } catch (const UsageError& e) {
        throw ConfigError(e.what());
    }
    return c;
}

json to_json(const ScenarioConfig& c) {
    const DesignSpec d = c.design();
    json design = {{"kind", to_string(d.kind)}, {"n_per_arm", d.n_per_arm}};
    if (d.kind == DesignKind::TwoArmFixed) design["pair"] = to_string(d.pair);
    if (d.kind == DesignKind::TwoArmMixed) {
        design["pair_distribution"] = {{"LM", d.distribution.probability(DosePair::LM)},
                                       {"LH", d.distribution.probability(DosePair::LH)},
                                       {"MH", d.distribution.probability(DosePair::MH)}};
    }
    const auto& t = c.truth.values();
    return {
        {"priors",
         {{"low", beta_to_json(c.priors.low)},
          {"mid", beta_to_json(c.priors.mid)},
          {"high", beta_to_json(c.priors.high)}}},
        {"margin", c.margin.value()},
        {"truth", {t[0], t[1], t[2]}},
        {"optimal", to_string(c.scenario().optimal)},
        {"design", design},
        {"total_n", c.total_n},
        {"replicates", c.replicates},
        {"posterior_samples", c.posterior_samples},
        {"posterior_method", to_string(c.posterior_method)},
        {"superiority_prior", to_string(c.superiority_prior)},
        {"seed", c.seed},
    };
}

ScenarioConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + path.string() + "': " + e.what());
    }
    return config_from_json(j);
}

}  // namespace ddl::cli
