#include <gtest/gtest.h>

#include "ddl/error.hpp"
#include "ddl/readiness.hpp"

namespace ddl {
namespace {

using R = RandomizationLevel;
using E = ExpansionLevel;

TEST(Rate, Table) {
    const int expected[4][3] = {{0, 2, 3}, {1, 3, 4}, {2, 4, 5}, {3, 5, 5}};
    for (std::size_t e = 0; e < 4; ++e)
        for (std::size_t r = 0; r < 3; ++r)
            EXPECT_EQ(rate(kAllRandomizationLevels[r], kAllExpansionLevels[e]).stars(),
                      expected[e][r]);
}

TEST(Rate, Examples) {
    EXPECT_EQ(rate(R::TwoDose, E::None).render(), "**");
    EXPECT_EQ(rate(R::None, E::BackfillLowSimilarity).render(), "*");
    EXPECT_EQ(rate(R::TwoDose, E::ExtendedBackfillHigh).stars(), 5);
    EXPECT_EQ(rate(R::ThreeDose, E::None).stars(), 3);
    EXPECT_EQ(rate(R::None, E::None).render(), "-");
    EXPECT_FALSE(rate(R::None, E::None).viable());
}

TEST(Rate, MonotoneInBothDirections) {
    for (E e : kAllExpansionLevels)
        for (std::size_t r = 1; r < 3; ++r)
            EXPECT_GE(rate(kAllRandomizationLevels[r], e).stars(),
                      rate(kAllRandomizationLevels[r - 1], e).stars());
    for (R r : kAllRandomizationLevels)
        for (std::size_t e = 1; e < 4; ++e)
            EXPECT_GE(rate(r, kAllExpansionLevels[e]).stars(),
                      rate(r, kAllExpansionLevels[e - 1]).stars());
}

TEST(Rate, ThreeDoseOneStarAboveTwoDose) {
    for (E e : kAllExpansionLevels) {
        const int two = rate(R::TwoDose, e).stars();
        const int three = rate(R::ThreeDose, e).stars();
        if (two < 5) EXPECT_EQ(three, two + 1);
        else EXPECT_EQ(three, 5);
    }
}

TEST(StarRating, Bounds) {
    EXPECT_THROW(StarRating(-1), DomainError);
    EXPECT_THROW(StarRating(6), DomainError);
    EXPECT_EQ(StarRating(5).render(), "*****");
}

TEST(Names, Stable) {
    EXPECT_EQ(to_string(R::TwoDose), "2dose");
    EXPECT_EQ(to_string(R::ThreeDose), "3dose");
    EXPECT_EQ(to_string(E::ExtendedBackfillHigh), "extended-high");
    EXPECT_EQ(to_string(E::BackfillLowSimilarity), "backfill-low");
}

}  // namespace
}  // namespace ddl
