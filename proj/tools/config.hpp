#pragma once

// Scenario configuration read from JSON. Every field is optional; absent
// fields take the defaults below. Example with all fields:
//
// {
//   "priors": {"low": {"a": 0.1, "b": 1.9}, "mid": {"a": 0.6, "b": 1.4},
//              "high": {"a": 0.8, "b": 1.2}},
//   "margin": 0.025,
//   "truth": [0.10, 0.20, 0.30],
//   "optimal": "H",
//   "design": {"kind": "three-arm", "n_per_arm": 30, "pair": "MH",
//              "pair_distribution": {"LM": 0.4, "LH": 0.2, "MH": 0.4}},
//   "total_n": 90,
//   "replicates": 10000,
//   "posterior_samples": 100000,
//   "posterior_method": "sampling",
//   "superiority_prior": "uniform",
//   "seed": 20251016
// }
//
// Without design.n_per_arm, each arm gets total_n / arms patients.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "ddl/shape_model.hpp"
#include "ddl/trial_sim.hpp"

namespace ddl::cli {

class ConfigError : public std::runtime_error {
   public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class UsageError : public std::runtime_error {
   public:
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr std::uint64_t kDefaultSeed = 20251016;
inline constexpr const char* kDefaultConfigEnv = "DDL_DEFAULT_CONFIG";

struct ScenarioConfig {
    DosePriorSet priors = DosePriorSet::defaults();
    ComparabilityMargin margin{};
    ResponseTriple truth{0.10, 0.20, 0.30};
    std::optional<Dose> optimal;

    DesignKind design_kind = DesignKind::ThreeArm;
    std::optional<int> n_per_arm;
    DosePair pair = DosePair::MH;
    PairDistribution pair_distribution = PairDistribution::defaults();
    int total_n = 90;

    std::uint64_t replicates = 10'000;
    std::size_t posterior_samples = 100'000;
    PosteriorMethod posterior_method = PosteriorMethod::Sampling;
    SuperiorityPrior superiority_prior = SuperiorityPrior::Uniform;
    std::uint64_t seed = kDefaultSeed;

    DesignSpec design() const;
    TrueScenario scenario() const;
    SelectionSettings selection() const;
};

/// Throws ConfigError on unknown keys, wrong types or invalid values.
ScenarioConfig config_from_json(const nlohmann::json& j);

/// Fully resolved echo (n_per_arm and optimal filled in); reading it back
/// yields an identical run.
nlohmann::json to_json(const ScenarioConfig& config);

ScenarioConfig load_config(const std::filesystem::path& path);

Dose parse_dose(const std::string& s);
DosePair parse_pair(const std::string& s);
DesignKind parse_design_kind(const std::string& s);
PosteriorMethod parse_posterior_method(const std::string& s);
SuperiorityPrior parse_superiority_prior(const std::string& s);

}  // namespace ddl::cli
