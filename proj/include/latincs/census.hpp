#pragma once

// Exact enumeration of partial Latin squares: totals by size, counts per
// shape, Latin square counts and shape enumeration. These are the ground
// truth the counting bounds are checked against.

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "latincs/bigint.hpp"
#include "latincs/core.hpp"
#include "latincs/error.hpp"
#include "latincs/parallel.hpp"

namespace latincs {

inline constexpr std::uint64_t kDefaultNodeBudget = 1'000'000'000ULL;

/// Exact counts of partial Latin squares of order n, indexed by size k = 0..n².
struct CensusTable {
    int order = 0;
    std::vector<BigInt> counts;

    friend bool operator==(const CensusTable&, const CensusTable&) = default;
};

namespace detail {

/// Shared node counter. Workers flush in batches; the run fails iff the final
/// total exceeds the budget, which does not depend on scheduling.
class NodeBudget {
public:
    explicit NodeBudget(std::uint64_t budget) : budget_(budget) {}

    void add(std::uint64_t nodes) {
        if (used_.fetch_add(nodes, std::memory_order_relaxed) + nodes > budget_) fail();
    }
    std::uint64_t used() const { return used_.load(std::memory_order_relaxed); }

    [[noreturn]] void fail() const {
        throw BudgetExceeded("node budget of " + std::to_string(budget_) + " exceeded");
    }

private:
    std::uint64_t budget_;
    std::atomic<std::uint64_t> used_{0};
};

class LocalTicker {
public:
    explicit LocalTicker(NodeBudget& shared) : shared_(shared) {}
    ~LocalTicker() = default;

    void tick() {
        if (++pending_ == kBatch) flush();
    }
    void flush() {
        const std::uint64_t p = pending_;
        pending_ = 0;
        shared_.add(p);
    }

private:
    static constexpr std::uint64_t kBatch = 1 << 14;
    NodeBudget& shared_;
    std::uint64_t pending_ = 0;
};

/// Number of ways to fill r chosen cells of a row with distinct symbols,
/// summed over the C(n, r) choices of cells: C(n, r) * n! / (n - r)!.
inline long double row_fillings(int n, int r) {
    long double v = 1.0L;
    for (int i = 0; i < r; ++i) v *= static_cast<long double>(n - i) * (n - i) / (i + 1);
    return v;
}

// Cell-by-cell walk in row-major order. Each cell is left empty or takes a
// symbol free in its row and column. Leaves are tallied by filled count.
class PlsWalker {
public:
    PlsWalker(int n, int target_k, NodeBudget& budget)
        : n_(n), cells_(n * n), target_(target_k), all_(full_mask(n)), row_used_(n, 0), col_used_(n, 0),
          counts_(n * n + 1, 0), ticker_(budget) {}

    void seed_first_row(const std::vector<int>& row) {
        for (int c = 0; c < n_; ++c) {
            if (row[c] == 0) continue;
            row_used_[0] |= symbol_bit(row[c]);
            col_used_[c] |= symbol_bit(row[c]);
            ++seeded_;
        }
    }

    void run(int start_pos) {
        walk(start_pos, seeded_);
        ticker_.flush();
    }

    const std::vector<std::uint64_t>& counts() const { return counts_; }

private:
    void walk(int pos, int filled) {
        ticker_.tick();
        if (target_ >= 0 && (filled > target_ || filled + (cells_ - pos) < target_)) return;
        if (pos == cells_) {
            ++counts_[filled];
            return;
        }
        const int r = pos / n_, c = pos % n_;
        walk(pos + 1, filled);
        for (Mask cand = all_ & ~(row_used_[r] | col_used_[c]); cand; cand &= cand - 1) {
            const Mask bit = cand & (~cand + 1);
            row_used_[r] |= bit;
            col_used_[c] |= bit;
            walk(pos + 1, filled + 1);
            row_used_[r] &= ~bit;
            col_used_[c] &= ~bit;
        }
    }

    int n_;
    int cells_;
    int target_;
    Mask all_;
    std::vector<Mask> row_used_;
    std::vector<Mask> col_used_;
    std::vector<std::uint64_t> counts_;
    int seeded_ = 0;
    LocalTicker ticker_;
};

/// All fillings of the first row (0 = empty), in lexicographic order.
inline std::vector<std::vector<int>> first_row_fillings(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> row(n, 0);
    auto rec = [&](auto&& self, int c, Mask used) -> void {
        if (c == n) {
            out.push_back(row);
            return;
        }
        row[c] = 0;
        self(self, c + 1, used);
        for (int s = 1; s <= n; ++s) {
            if (used & symbol_bit(s)) continue;
            row[c] = s;
            self(self, c + 1, used | symbol_bit(s));
        }
        row[c] = 0;
    };
    rec(rec, 0, 0);
    return out;
}

/// Parallel over first-row fillings; per-branch tallies summed in branch order.
inline std::vector<BigInt> run_census(int n, int target_k, std::uint64_t budget, unsigned threads) {
    NodeBudget shared(budget);
    const auto branches = first_row_fillings(n);
    std::vector<std::vector<std::uint64_t>> partial(branches.size());
    parallel_for(branches.size(), threads, [&](std::size_t i) {
        PlsWalker walker(n, target_k, shared);
        walker.seed_first_row(branches[i]);
        walker.run(n);
        partial[i] = walker.counts();
    });
    std::vector<BigInt> totals(n * n + 1, 0);
    for (const auto& p : partial)
        for (std::size_t k = 0; k < p.size(); ++k) totals[k] += p[k];
    return totals;
}

}  // namespace detail

/// Loose a-priori work estimate for count_pls_by_size: the number of arrays
/// of size k that are Latin along rows only, i.e. the coefficient of x^k in
/// (sum_r C(n,r) n!/(n-r)! x^r)^n.
inline long double estimate_pls_by_size_work(int n, int k) {
    std::vector<long double> poly(1, 1.0L);
    for (int row = 0; row < n; ++row) {
        std::vector<long double> next(poly.size() + n, 0.0L);
        for (std::size_t i = 0; i < poly.size(); ++i)
            for (int r = 0; r <= n; ++r) next[i + r] += poly[i] * detail::row_fillings(n, r);
        poly = std::move(next);
    }
    return (k >= 0 && k < static_cast<int>(poly.size())) ? poly[k] : 0.0L;
}

/// Same estimate summed over every k: the product of per-row bounds.
inline long double estimate_census_work(int n) {
    long double per_row = 0.0L;
    for (int r = 0; r <= n; ++r) per_row += detail::row_fillings(n, r);
    return std::pow(per_row, static_cast<long double>(n));
}

/// Exact number of partial Latin squares of order n with exactly k filled cells.
inline BigInt count_pls_by_size(int n, int k, std::uint64_t budget = kDefaultNodeBudget,
                                unsigned threads = 0) {
    check_order(n);
    if (k < 0 || k > n * n) throw PreconditionError("size k must lie in [0, n^2]");
    if (estimate_pls_by_size_work(n, k) > static_cast<long double>(budget))
        throw BudgetExceeded("estimated work for order " + std::to_string(n) + ", size " +
                             std::to_string(k) + " exceeds the node budget");
    return detail::run_census(n, k, budget, threads)[k];
}

/// Counts for every k in one enumeration pass.
inline CensusTable census_table(int n, std::uint64_t budget = kDefaultNodeBudget, unsigned threads = 0) {
    check_order(n);
    if (estimate_census_work(n) > static_cast<long double>(budget))
        throw BudgetExceeded("estimated census work for order " + std::to_string(n) +
                             " exceeds the node budget");
    return {n, detail::run_census(n, -1, budget, threads)};
}

inline constexpr int kShapeCountMaxOrder = 5;

/// Loose upper bound on symbol assignments to a shape: prod_i n!/(n - r_i)!.
inline long double estimate_shape_work(const Shape& shape) {
    const int n = shape.order();
    long double v = 1.0L;
    for (int r : shape.row_counts())
        for (int i = 0; i < r; ++i) v *= n - i;
    return v;
}

/// Exact number of ways to put symbols on the shape's cells so that the
/// result is a partial Latin square.
inline BigInt count_pls_of_shape(const Shape& shape, std::uint64_t budget = kDefaultNodeBudget) {
    const int n = shape.order();
    if (n > kShapeCountMaxOrder)
        throw BudgetExceeded("shape counting is limited to order <= " + std::to_string(kShapeCountMaxOrder));
    if (estimate_shape_work(shape) > static_cast<long double>(budget))
        throw BudgetExceeded("estimated shape work exceeds the node budget");

    const auto& cells = shape.cells();  // row-major
    const int total = static_cast<int>(cells.size());
    std::vector<Mask> row_used(n, 0), col_used(n, 0);
    detail::NodeBudget shared(budget);
    detail::LocalTicker ticker(shared);
    std::uint64_t count = 0;
    auto rec = [&](auto&& self, int i) -> void {
        ticker.tick();
        if (i == total) {
            ++count;
            return;
        }
        const int r = cells[i].row - 1, c = cells[i].col - 1;
        for (Mask cand = full_mask(n) & ~(row_used[r] | col_used[c]); cand; cand &= cand - 1) {
            const Mask bit = cand & (~cand + 1);
            row_used[r] |= bit;
            col_used[c] |= bit;
            self(self, i + 1);
            row_used[r] &= ~bit;
            col_used[c] &= ~bit;
        }
    };
    rec(rec, 0);
    ticker.flush();
    return BigInt(count);
}

inline constexpr int kLatinCountMaxOrder = 5;

/// Exact number of Latin squares of order n by plain backtracking over the grid.
inline BigInt count_latin_squares(int n) {
    check_order(n);
    if (n > kLatinCountMaxOrder)
        throw BudgetExceeded("Latin square counting is limited to order <= " +
                             std::to_string(kLatinCountMaxOrder));
    std::vector<Mask> row_used(n, 0), col_used(n, 0);
    std::uint64_t count = 0;
    const int cells = n * n;
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == cells) {
            ++count;
            return;
        }
        const int r = pos / n, c = pos % n;
        for (Mask cand = full_mask(n) & ~(row_used[r] | col_used[c]); cand; cand &= cand - 1) {
            const Mask bit = cand & (~cand + 1);
            row_used[r] |= bit;
            col_used[c] |= bit;
            self(self, pos + 1);
            row_used[r] &= ~bit;
            col_used[c] &= ~bit;
        }
    };
    rec(rec, 0);
    return BigInt(count);
}

inline constexpr std::uint64_t kDefaultShapeLimit = 10'000'000ULL;

inline BigInt binomial(int a, int b) {
    if (b < 0 || b > a) return 0;
    BigInt v = 1;
    for (int i = 1; i <= b; ++i) v = v * (a - b + i) / i;
    return v;
}

/// Calls visit(shape) for every k-subset of the n² cells, lexicographically
/// by row-major cell index.
template <typename Visitor>
void enumerate_shapes(int n, int k, Visitor&& visit, std::uint64_t limit = kDefaultShapeLimit) {
    check_order(n);
    const int total = n * n;
    if (k < 0 || k > total) throw PreconditionError("size k must lie in [0, n^2]");
    if (binomial(total, k) > limit)
        throw BudgetExceeded("C(" + std::to_string(total) + ", " + std::to_string(k) +
                             ") shapes exceeds the enumeration limit");
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        std::vector<Cell> cells;
        cells.reserve(k);
        for (int i : idx) cells.push_back({i / n + 1, i % n + 1});
        visit(Shape(n, std::move(cells)));
        int pos = k - 1;
        while (pos >= 0 && idx[pos] == total - k + pos) --pos;
        if (pos < 0) return;
        ++idx[pos];
        for (int j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

// ---------------------------------------------------------------------------
// CSV: header "k,count", one row per k.

inline std::string census_to_csv(const CensusTable& table) {
    std::string out = "k,count\n";
    for (std::size_t k = 0; k < table.counts.size(); ++k)
        out += std::to_string(k) + "," + table.counts[k].str() + "\n";
    return out;
}

inline CensusTable parse_census_csv(std::string_view text) {
    const auto lines = detail::split_lines(text);
    if (lines.front() != "k,count") throw ParseError("expected header 'k,count'", 1);
    CensusTable table;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto line = lines[i];
        const auto comma = line.find(',');
        if (comma == std::string_view::npos) throw ParseError("missing comma", static_cast<int>(i + 1));
        const int k = detail::parse_int_token(line.substr(0, comma), static_cast<int>(i + 1), 1);
        if (k != static_cast<int>(i - 1)) throw ParseError("rows must list k = 0, 1, ...", static_cast<int>(i + 1));
        const auto digits = line.substr(comma + 1);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos)
            throw ParseError("bad count", static_cast<int>(i + 1), 2);
        table.counts.emplace_back(std::string(digits));
    }
    const int cells = static_cast<int>(table.counts.size()) - 1;
    const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(cells))));
    if (cells < 1 || n * n != cells) throw ParseError("row count is not n^2 + 1");
    table.order = n;
    return table;
}

}  // namespace latincs
