#include <gtest/gtest.h>

#include "latincs/census.hpp"
#include "latincs/completion.hpp"
#include "oracles.hpp"

using namespace latincs;

TEST(CountPlsBySize, Order2Examples) {
    EXPECT_EQ(count_pls_by_size(2, 0), 1);
    EXPECT_EQ(count_pls_by_size(2, 1), 8);
    EXPECT_EQ(count_pls_by_size(2, 2), 16);
    EXPECT_EQ(count_pls_by_size(2, 3), 8);
    EXPECT_EQ(count_pls_by_size(2, 4), 2);
}

TEST(CountPlsBySize, MatchesArrayScanOracle) {
    for (int n = 1; n <= 3; ++n) {
        const auto expected = oracle::pls_census(n);
        for (int k = 0; k <= n * n; ++k) EXPECT_EQ(count_pls_by_size(n, k), expected[k]) << n << "," << k;
    }
}

TEST(CountPlsBySize, SingleCellsAndFullSquares) {
    for (int n = 1; n <= 4; ++n) {
        EXPECT_EQ(count_pls_by_size(n, 1), n * n * n);
        EXPECT_EQ(count_pls_by_size(n, n * n), count_latin_squares(n));
    }
}

TEST(CensusTable, AgreesWithPerSizeCounts) {
    for (int n = 1; n <= 3; ++n) {
        const auto table = census_table(n);
        EXPECT_EQ(table.order, n);
        ASSERT_EQ(table.counts.size(), static_cast<std::size_t>(n * n + 1));
        EXPECT_EQ(table.counts[0], 1);
        for (int k = 0; k <= n * n; ++k) EXPECT_EQ(table.counts[k], count_pls_by_size(n, k));
    }
}

TEST(CensusTable, ThreadCountDoesNotChangeResults) {
    EXPECT_EQ(census_table(3, kDefaultNodeBudget, 1), census_table(3, kDefaultNodeBudget, 3));
}

TEST(CensusTable, CsvRoundTrip) {
    const auto table = census_table(2);
    const auto csv = census_to_csv(table);
    EXPECT_EQ(csv, "k,count\n0,1\n1,8\n2,16\n3,8\n4,2\n");
    EXPECT_EQ(parse_census_csv(csv), table);
    EXPECT_THROW(parse_census_csv("k,count\n0,1\n1,8\n2,3\n"), ParseError);
    EXPECT_THROW(parse_census_csv("k,n\n0,1\n1,1\n"), ParseError);
    EXPECT_THROW(parse_census_csv("k,count\n0,1\n2,1\n"), ParseError);
}

TEST(CensusTable, BudgetIsEnforced) {
    EXPECT_THROW(census_table(3, 1000), BudgetExceeded);
    EXPECT_THROW(count_pls_by_size(4, 8, 1000), BudgetExceeded);
    EXPECT_THROW(count_pls_by_size(3, 10), PreconditionError);
}

TEST(CountPlsOfShape, Examples) {
    EXPECT_EQ(count_pls_of_shape(Shape::full(2)), 2);
    EXPECT_EQ(count_pls_of_shape(Shape(3, {{2, 3}})), 3);
    EXPECT_EQ(count_pls_of_shape(Shape(3, {})), 1);
}

TEST(CountPlsOfShape, SumOverShapesMatchesDirectCount) {
    for (int n = 1; n <= 3; ++n)
        for (int k = 0; k <= n * n; ++k) {
            BigInt total = 0;
            enumerate_shapes(n, k, [&](const Shape& s) { total += count_pls_of_shape(s); });
            EXPECT_EQ(total, count_pls_by_size(n, k));
        }
}

TEST(CountPlsOfShape, InvariantUnderTransposition) {
    enumerate_shapes(3, 4, [](const Shape& s) {
        std::vector<Cell> transposed;
        for (const auto& c : s.cells()) transposed.push_back({c.col, c.row});
        EXPECT_EQ(count_pls_of_shape(s), count_pls_of_shape(Shape(3, transposed)));
    });
}

TEST(CountPlsOfShape, Guards) {
    EXPECT_THROW(count_pls_of_shape(Shape::full(6)), BudgetExceeded);
    EXPECT_THROW(count_pls_of_shape(Shape::full(5), 1000), BudgetExceeded);
}

TEST(CountLatinSquares, Examples) {
    EXPECT_EQ(count_latin_squares(1), 1);
    EXPECT_EQ(count_latin_squares(2), 2);
    EXPECT_EQ(count_latin_squares(3), 12);
    EXPECT_EQ(count_latin_squares(4), 576);
    EXPECT_THROW(count_latin_squares(6), BudgetExceeded);
}

TEST(CountLatinSquares, AgreesWithCompletionCounterAndBruteForce) {
    for (int n = 1; n <= 4; ++n) {
        const BigInt direct = count_latin_squares(n);
        EXPECT_EQ(direct, count_completions(PartialLatinSquare(n), 1ULL << 40).count);
        EXPECT_EQ(direct, oracle::all_latin_squares(n).size());
    }
}

TEST(EnumerateShapes, CountsAndOrder) {
    auto count = [](int n, int k) {
        int c = 0;
        enumerate_shapes(n, k, [&](const Shape&) { ++c; });
        return c;
    };
    EXPECT_EQ(count(2, 4), 1);
    EXPECT_EQ(count(2, 1), 4);
    EXPECT_EQ(count(2, 2), 6);
    EXPECT_EQ(count(3, 0), 1);

    std::vector<std::vector<Cell>> seen;
    enumerate_shapes(2, 2, [&](const Shape& s) { seen.push_back(s.cells()); });
    EXPECT_EQ(seen.front(), (std::vector<Cell>{{1, 1}, {1, 2}}));
    EXPECT_EQ(seen.back(), (std::vector<Cell>{{2, 1}, {2, 2}}));
    EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
}

TEST(EnumerateShapes, Guard) {
    EXPECT_THROW(enumerate_shapes(8, 32, [](const Shape&) {}), BudgetExceeded);
}
