#include "ddl/readiness.hpp"

#include "ddl/error.hpp"

namespace ddl {

namespace {

// Rows: expansion level; columns: randomization level.
constexpr int kStars[4][3] = {
    {0, 2, 3},
    {1, 3, 4},
    {2, 4, 5},
    {3, 5, 5},
};

}  // namespace

std::string_view to_string(RandomizationLevel level) {
    switch (level) {
        case RandomizationLevel::None: return "none";
        case RandomizationLevel::TwoDose: return "2dose";
        case RandomizationLevel::ThreeDose: return "3dose";
    }
    return "?";
}

std::string_view to_string(ExpansionLevel level) {
    switch (level) {
        case ExpansionLevel::None: return "none";
        case ExpansionLevel::BackfillLowSimilarity: return "backfill-low";
        case ExpansionLevel::ExtendedBackfillModerate: return "extended-moderate";
        case ExpansionLevel::ExtendedBackfillHigh: return "extended-high";
    }
    return "?";
}

std::string_view describe(RandomizationLevel level) {
    switch (level) {
        case RandomizationLevel::None: return "no dose randomization";
        case RandomizationLevel::TwoDose: return "2-dose randomization (30-40/dose)";
        case RandomizationLevel::ThreeDose: return "3-dose randomization (20-30/dose)";
    }
    return "?";
}

std::string_view describe(ExpansionLevel level) {
    switch (level) {
        case ExpansionLevel::None: return "no expansion of dose escalation";
        case ExpansionLevel::BackfillLowSimilarity: return "backfill (low similarity, 10/dose)";
        case ExpansionLevel::ExtendedBackfillModerate:
            return "extended backfill (moderate similarity, 20+/dose, >=2 doses)";
        case ExpansionLevel::ExtendedBackfillHigh:
            return "extended backfill (high similarity, 20+/dose, >=2 doses)";
    }
    return "?";
}

StarRating::StarRating(int stars) : stars_(stars) {
    if (stars < 0 || stars > 5) throw DomainError("star rating must lie in 0..5");
}

std::string StarRating::render() const {
    return stars_ == 0 ? std::string("-") : std::string(static_cast<std::size_t>(stars_), '*');
}

StarRating rate(RandomizationLevel randomization, ExpansionLevel expansion) {
    return StarRating(kStars[static_cast<int>(expansion)][static_cast<int>(randomization)]);
}

}  // namespace ddl
