#pragma once

// Five-star rating of Phase 3 dose readiness for combinations of dose
// randomization and expansion of the dose-escalation cohort.

#include <array>
#include <string>
#include <string_view>

namespace ddl {

enum class RandomizationLevel {
    None,
    TwoDose,    // 30-40 patients per dose
    ThreeDose,  // 20-30 patients per dose
};

enum class ExpansionLevel {
    None,
    BackfillLowSimilarity,     // 10 per dose
    ExtendedBackfillModerate,  // 20+ per dose, >= 2 doses, moderate similarity
    ExtendedBackfillHigh,      // 20+ per dose, >= 2 doses, high similarity
};

inline constexpr std::array<RandomizationLevel, 3> kAllRandomizationLevels = {
    RandomizationLevel::None, RandomizationLevel::TwoDose, RandomizationLevel::ThreeDose};
inline constexpr std::array<ExpansionLevel, 4> kAllExpansionLevels = {
    ExpansionLevel::None, ExpansionLevel::BackfillLowSimilarity,
    ExpansionLevel::ExtendedBackfillModerate, ExpansionLevel::ExtendedBackfillHigh};

// Command-line names: none / 2dose / 3dose and none / backfill-low /
// extended-moderate / extended-high.
std::string_view to_string(RandomizationLevel level);
std::string_view to_string(ExpansionLevel level);
std::string_view describe(RandomizationLevel level);
std::string_view describe(ExpansionLevel level);

class StarRating {
   public:
    explicit StarRating(int stars);
    int stars() const { return stars_; }
    bool viable() const { return stars_ > 0; }

    /// "*" repeated, or "-" for a strategy that is not viable.
    std::string render() const;

    bool operator==(const StarRating&) const = default;

   private:
    int stars_;
};

StarRating rate(RandomizationLevel randomization, ExpansionLevel expansion);

}  // namespace ddl
