#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "mrtop/errors.hpp"
#include "mrtop/skyband.hpp"
#include "support/oracles.hpp"

using namespace mrtop;

namespace {

std::vector<std::size_t> rows(const SkybandSet& s) { return s.rows; }

/// Domination count computed directly, independent of exact_skyband.
bool in_skyband(const std::vector<DataTuple>& d, std::size_t i, std::uint32_t k) {
    std::size_t dominators = 0;
    for (const auto& u : d) {
        dominators += u.a1 > d[i].a1 && u.a2 > d[i].a2;
    }
    return dominators < k;
}

}  // namespace

TEST(ExactSkyband, Chain) {
    const std::vector<DataTuple> d{{"a", 1, 1}, {"b", 2, 2}, {"c", 3, 3}};
    EXPECT_EQ(rows(exact_skyband(d, 1)), (std::vector<std::size_t>{2}));
    EXPECT_EQ(rows(exact_skyband(d, 2)), (std::vector<std::size_t>{1, 2}));
    EXPECT_TRUE(exact_skyband(d, 1).exact);
}

TEST(ExactSkyband, Antichain) {
    const std::vector<DataTuple> d{{"a", 1, 3}, {"b", 2, 2}, {"c", 3, 1}};
    EXPECT_EQ(rows(exact_skyband(d, 1)), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(TopByAttribute, TiesBrokenByOtherAttribute) {
    const std::vector<DataTuple> d{{"a", 2, 1}, {"b", 2, 3}, {"c", 1, 5}};
    EXPECT_EQ(top_by_a1(d, 1), (std::vector<std::size_t>{1}));
    EXPECT_EQ(top_by_a2(d, 2), (std::vector<std::size_t>{2, 1}));
}

TEST(ApproximateSkyband, WholeRelationWhenSizeIsK) {
    std::mt19937_64 rng(2);
    const auto d = oracle::random_relation(4, rng);
    EXPECT_EQ(approximate_skyband(d, 4, 0.5).size(), 4u);
    EXPECT_FALSE(approximate_skyband(d, 4, 0.5).exact);
}

TEST(ApproximateSkyband, Antichain) {
    const std::vector<DataTuple> d{{"a", 1, 3}, {"b", 2, 2}, {"c", 3, 1}};
    EXPECT_EQ(rows(approximate_skyband(d, 1, 0.5)), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(ApproximateSkyband, ExcludesDominatedTuple) {
    const std::vector<DataTuple> d{{"a", 3, 3}, {"b", 1, 1}, {"c", 2, 2}};
    const SkybandSet s = approximate_skyband(d, 1, 0.5);
    EXPECT_TRUE(s.contains(0));
    EXPECT_FALSE(s.contains(1));
}

TEST(ApproximateSkyband, RequiresKTuples) {
    const std::vector<DataTuple> d{{"a", 1, 1}};
    EXPECT_THROW(approximate_skyband(d, 2, 0.5), DomainError);
}

// A skyline tuple that never ranks first: the contour test alone drops it,
// the widened approximation keeps it.
TEST(ContourCandidates, MissSkylineTupleThatNeverRanksFirst) {
    const std::vector<DataTuple> d{{"x", 3, 1}, {"y", 1, 3}, {"m", 1.9, 1.9}};
    EXPECT_TRUE(exact_skyband(d, 1).contains(2));
    EXPECT_FALSE(contour_candidates(d, 1, 0.5).contains(2));
    EXPECT_TRUE(approximate_skyband(d, 1, 0.5).contains(2));
}

TEST(ContourCandidates, ContainsSeedTuples) {
    std::mt19937_64 rng(8);
    for (int round = 0; round < 20; ++round) {
        const auto d = oracle::random_relation(60, rng);
        const std::uint32_t k = 1 + round % 5;
        const SkybandSet c = contour_candidates(d, k, 0.5);
        for (std::size_t r : top_by_a1(d, k)) {
            EXPECT_TRUE(c.contains(r));
        }
        for (std::size_t r : top_by_a2(d, k)) {
            EXPECT_TRUE(c.contains(r));
        }
        EXPECT_LE(c.size(), d.size());
    }
}

TEST(Property, ApproximationHasPerfectRecall) {
    std::mt19937_64 rng(13);
    for (int round = 0; round < 60; ++round) {
        const auto d = oracle::random_relation(20 + round * 5, rng);
        const std::uint32_t k = 1 + round % 10;
        const SkybandSet approx = approximate_skyband(d, k, 0.5);
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (in_skyband(d, i, k)) {
                EXPECT_TRUE(approx.contains(i)) << "round " << round << " row " << i;
            }
        }
    }
}

TEST(Property, ExactSkybandMatchesDirectCount) {
    std::mt19937_64 rng(17);
    for (int round = 0; round < 20; ++round) {
        const auto d = oracle::random_relation(80, rng);
        const std::uint32_t k = 1 + round % 6;
        const SkybandSet s = exact_skyband(d, k);
        for (std::size_t i = 0; i < d.size(); ++i) {
            EXPECT_EQ(s.contains(i), in_skyband(d, i, k));
        }
    }
}

TEST(Property, MembershipSurvivesSubsets) {
    std::mt19937_64 rng(19);
    std::bernoulli_distribution keep(0.5);
    for (int round = 0; round < 30; ++round) {
        const auto d = oracle::random_relation(70, rng);
        const std::uint32_t k = 1 + round % 4;
        const SkybandSet full = exact_skyband(d, k);
        std::vector<DataTuple> sub;
        std::vector<std::size_t> origin;
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (full.contains(i) || keep(rng)) {
                sub.push_back(d[i]);
                origin.push_back(i);
            }
        }
        const SkybandSet part = exact_skyband(sub, k);
        for (std::size_t j = 0; j < sub.size(); ++j) {
            if (full.contains(origin[j])) {
                EXPECT_TRUE(part.contains(j));
            }
        }
    }
}
