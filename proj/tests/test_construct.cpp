#include <gtest/gtest.h>

#include <map>
#include <set>

#include "latincs/bounds.hpp"
#include "latincs/construct.hpp"
#include "oracles.hpp"

using namespace latincs;

namespace {

const LatinSquare kOrder2 = LatinSquare::from_rows({{1, 2}, {2, 1}});

oracle::Grid to_grid(const LatinSquare& sq) {
    oracle::Grid g;
    for (int r = 1; r <= sq.order(); ++r)
        for (int c = 1; c <= sq.order(); ++c) g.push_back(sq.at(r, c));
    return g;
}

}  // namespace

TEST(RandomLatinSquare, SmallOrders) {
    EXPECT_EQ(random_latin_square(1, 123), LatinSquare::from_rows({{1}}));
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto sq = random_latin_square(2, seed);
        EXPECT_TRUE(validate(sq.as_partial()));
        EXPECT_TRUE(sq == kOrder2 || sq == LatinSquare::from_rows({{2, 1}, {1, 2}}));
    }
}

TEST(RandomLatinSquare, DeterministicAndVaried) {
    std::set<std::string> seen;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto sq = random_latin_square(6, seed);
        EXPECT_TRUE(validate(sq.as_partial()));
        EXPECT_EQ(sq, random_latin_square(6, seed));
        seen.insert(serialize_square_text(sq));
    }
    EXPECT_GE(seen.size(), 95u);
}

TEST(RandomLatinSquare, LargeOrdersAreValid) {
    for (int n : {16, 33, 64}) EXPECT_TRUE(validate(random_latin_square(n, 3).as_partial()));
}

TEST(CyclicLatinSquare, Examples) {
    EXPECT_EQ(cyclic_latin_square(2), kOrder2);
    EXPECT_EQ(cyclic_latin_square(3), LatinSquare::from_rows({{1, 2, 3}, {2, 3, 1}, {3, 1, 2}}));
    EXPECT_EQ(cyclic_latin_square(1), LatinSquare::from_rows({{1}}));
}

TEST(BirthOrder, RejectsForeignEntries) {
    EXPECT_THROW(BirthOrder(kOrder2, {{1, 1, 1}, {1, 2, 2}, {2, 1, 2}}), PreconditionError);
    EXPECT_THROW(BirthOrder(kOrder2, {{1, 1, 1}, {1, 2, 2}, {2, 1, 2}, {2, 2, 2}}), PreconditionError);
    EXPECT_THROW(BirthOrder(kOrder2, {{1, 1, 1}, {1, 1, 1}, {2, 1, 2}, {2, 2, 1}}), PreconditionError);
}

TEST(BirthTimeConstruct, SingleCellIsVacuouslyForced) {
    const auto sq = cyclic_latin_square(1);
    EXPECT_TRUE(birth_time_construct(sq, random_birth_order(sq, 0)).empty());
}

TEST(BirthTimeConstruct, HandTracedOrders) {
    const BirthOrder row_major(kOrder2, {{1, 1, 1}, {1, 2, 2}, {2, 1, 2}, {2, 2, 1}});
    EXPECT_EQ(birth_time_construct(kOrder2, row_major), PartialLatinSquare(2, {{1, 1, 1}}));

    const BirthOrder diagonal_first(kOrder2, {{1, 1, 1}, {2, 2, 1}, {1, 2, 2}, {2, 1, 2}});
    EXPECT_EQ(birth_time_construct(kOrder2, diagonal_first), PartialLatinSquare(2, {{1, 1, 1}, {2, 2, 1}}));
}

TEST(BirthTimeConstruct, ReplayCertifiesAndSearchAgrees) {
    for (int n = 2; n <= 10; ++n) {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            const auto sq = random_latin_square(n, seed);
            const auto order = random_birth_order(sq, seed + 100);
            const auto c = birth_time_construct(sq, order);
            EXPECT_TRUE(is_contained_in(c, sq));
            EXPECT_TRUE(certify_by_replay(sq, order, c));
            const auto completion = is_uniquely_completable(c);
            ASSERT_TRUE(completion) << "n=" << n << " seed=" << seed;
            EXPECT_EQ(*completion, sq);
        }
    }
}

TEST(BirthTimeConstruct, ReplayRejectsMissingEntry) {
    const auto sq = random_latin_square(6, 1);
    const auto order = random_birth_order(sq, 2);
    const auto c = birth_time_construct(sq, order);
    ASSERT_FALSE(c.empty());
    // The first-born entry is never forced by the empty prefix.
    const Entry first = order.sequence().front();
    EXPECT_TRUE(c.contains(first));
    EXPECT_FALSE(certify_by_replay(sq, order, c.without(first)));
}

TEST(BirthTimeConstruct, AccumulatedVariantKeepsASuperset) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto sq = random_latin_square(7, seed);
        const auto order = random_birth_order(sq, seed);
        const auto prefix = birth_time_construct(sq, order, ForcingReference::prefix);
        const auto accumulated = birth_time_construct(sq, order, ForcingReference::accumulated);
        for (const auto& e : prefix.entries()) EXPECT_TRUE(accumulated.contains(e));
        EXPECT_EQ(count_completions(accumulated, 2).count, 1u);
    }
}

TEST(RandomBirthOrder, Deterministic) {
    const auto sq = random_latin_square(5, 0);
    EXPECT_EQ(random_birth_order(sq, 42).sequence(), random_birth_order(sq, 42).sequence());
    EXPECT_NE(random_birth_order(sq, 42).sequence(), random_birth_order(sq, 43).sequence());
    EXPECT_EQ(random_birth_order(cyclic_latin_square(1), 9).sequence().size(), 1u);
}

TEST(RandomBirthOrder, UniformOverOrder2Permutations) {
    constexpr int kSamples = 10000;
    std::map<std::vector<Entry>, int> freq;
    for (int s = 0; s < kSamples; ++s) ++freq[random_birth_order(kOrder2, s).sequence()];
    EXPECT_EQ(freq.size(), 24u);
    const double p = 1.0 / 24.0;
    const double mean = kSamples * p;
    const double sd = std::sqrt(kSamples * p * (1 - p));
    for (const auto& [perm, count] : freq) EXPECT_LE(std::abs(count - mean), 5 * sd);
}

TEST(TrialStats, Summary) {
    const auto s = TrialStats::from_sizes({1, 2, 3, 4});
    EXPECT_DOUBLE_EQ(s.mean, 2.5);
    EXPECT_NEAR(s.stddev, std::sqrt(5.0 / 3.0), 1e-12);
    EXPECT_NEAR(s.stderr_mean, std::sqrt(5.0 / 3.0) / 2.0, 1e-12);
    EXPECT_EQ(s.min, 1);
    EXPECT_EQ(s.max, 4);
}

TEST(SampleUcSizes, Order1) {
    const auto s = sample_uc_sizes(cyclic_latin_square(1), 10, 0);
    EXPECT_EQ(s.mean, 0.0);
    EXPECT_EQ(s.max, 0);
}

TEST(SampleUcSizes, MatchesExpectationAtOrder2) {
    const auto s = sample_uc_sizes(kOrder2, 10000, 1);
    EXPECT_LE(std::abs(s.mean - 4.0 / 3.0), 3 * s.stderr_mean);
}

TEST(SampleUcSizes, MatchesExpectationAtOrder8) {
    const auto s = sample_uc_sizes(random_latin_square(8, 1), 2000, 1);
    EXPECT_LE(std::abs(s.mean - wallis_expected_size(8)), 3 * s.stderr_mean);
}

TEST(SampleUcSizes, ThreadCountDoesNotChangeResults) {
    const auto sq = random_latin_square(7, 4);
    const auto serial = sample_uc_sizes(sq, 300, 9, 1);
    const auto parallel = sample_uc_sizes(sq, 300, 9, 4);
    EXPECT_EQ(serial.sizes, parallel.sizes);
    EXPECT_THROW(sample_uc_sizes(sq, 0, 9), PreconditionError);
}

TEST(MinimizeToCritical, FullOrder2SquareShrinksToOneEntry) {
    const auto out = minimize_to_critical(kOrder2.as_partial(), kOrder2);
    EXPECT_EQ(out.size(), 1);
    EXPECT_TRUE(is_critical(out));
    // every single entry of the order-2 square is a critical set
    for (const auto& e : kOrder2.entries()) EXPECT_TRUE(is_critical(PartialLatinSquare(2, {e})));
}

TEST(MinimizeToCritical, FixedPointOnCriticalInput) {
    const PartialLatinSquare critical(2, {{2, 1, 2}});
    EXPECT_EQ(minimize_to_critical(critical, kOrder2), critical);
    const auto one = cyclic_latin_square(1);
    EXPECT_TRUE(minimize_to_critical(PartialLatinSquare(1), one).empty());
}

TEST(MinimizeToCritical, RejectsNonUniquelyCompletableInput) {
    EXPECT_THROW(minimize_to_critical(PartialLatinSquare(2), kOrder2), PreconditionError);
    EXPECT_THROW(minimize_to_critical(PartialLatinSquare(2, {{1, 1, 2}}), kOrder2), PreconditionError);
}

TEST(MinimizeToCritical, OutputIsCriticalAndNoLarger) {
    for (std::uint64_t seed = 0; seed < 15; ++seed) {
        const auto sq = random_latin_square(5, seed);
        const auto order = random_birth_order(sq, seed);
        const auto uc = birth_time_construct(sq, order);
        for (const auto& removal : {order.reversed(), shuffled_removal_order(uc, seed)}) {
            const auto crit = minimize_to_critical(uc, sq, removal);
            EXPECT_LE(crit.size(), uc.size());
            EXPECT_TRUE(is_contained_in(crit, sq));
            EXPECT_TRUE(is_critical(crit));
        }
    }
}

TEST(ScsExhaustive, Examples) {
    EXPECT_EQ(scs_exhaustive(cyclic_latin_square(1)).size, 0);
    EXPECT_EQ(scs_exhaustive(kOrder2).size, 1);
    EXPECT_EQ(scs_exhaustive(LatinSquare::from_rows({{2, 1}, {1, 2}})).size, 1);
    const auto three = scs_exhaustive(cyclic_latin_square(3));
    EXPECT_EQ(three.size, 2);
    EXPECT_TRUE(is_critical(three.witness));
}

TEST(ScsExhaustive, AgreesWithSubsetSweepOracle) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const auto sq = random_latin_square(3, seed);
        EXPECT_EQ(scs_exhaustive(sq).size, oracle::smallest_uc_subset_size(3, to_grid(sq)));
    }
}

TEST(ScsExhaustive, NoLargerThanAnyMinimizedConstruction) {
    for (int n = 1; n <= 3; ++n) {
        const auto sq = random_latin_square(n, n);
        const int scs = scs_exhaustive(sq).size;
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const auto order = random_birth_order(sq, seed);
            const auto crit = minimize_to_critical(birth_time_construct(sq, order), sq, order.reversed());
            EXPECT_LE(scs, crit.size());
        }
    }
}

TEST(ScsExhaustive, Guards) {
    EXPECT_THROW(scs_exhaustive(cyclic_latin_square(5)), BudgetExceeded);
    EXPECT_THROW(scs_exhaustive(cyclic_latin_square(3), 1), BudgetExceeded);
}
