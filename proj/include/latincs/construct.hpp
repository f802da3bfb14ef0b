#pragma once

// Birth-time construction of uniquely completable sets, minimization to
// critical sets, test-square generators, Monte Carlo statistics and exact
// smallest-critical-set search for tiny orders.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "latincs/completion.hpp"
#include "latincs/core.hpp"
#include "latincs/parallel.hpp"
#include "latincs/rng.hpp"

namespace latincs {

// ---------------------------------------------------------------------------
// Test squares

inline LatinSquare cyclic_latin_square(int n) {
    check_order(n);
    PartialLatinSquare pls(n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) pls.insert({i, j, (i + j - 2) % n + 1});
    return LatinSquare(std::move(pls));
}

namespace detail {

// Fills one row as a system of distinct representatives of the per-column
// available symbols. Branches on the column with the fewest options; symbol
// order at each branch is shuffled.
class RowFiller {
public:
    RowFiller(int n, std::span<const Mask> col_available, Rng& rng)
        : n_(n), available_(col_available), rng_(rng), assignment_(n, 0) {}

    std::optional<std::vector<int>> fill(std::uint64_t node_limit) {
        nodes_ = 0;
        node_limit_ = node_limit;
        std::fill(assignment_.begin(), assignment_.end(), 0);
        if (search(0, 0)) return assignment_;
        return std::nullopt;
    }

private:
    bool search(int assigned, Mask used) {
        if (assigned == n_) return true;
        if (++nodes_ > node_limit_) return false;
        int best = -1;
        int best_count = n_ + 1;
        for (int c = 0; c < n_; ++c) {
            if (assignment_[c]) continue;
            const int count = std::popcount(available_[c] & ~used);
            if (count < best_count) {
                best_count = count;
                best = c;
            }
        }
        if (best_count == 0) return false;
        int options[kMaxOrder];
        int count = 0;
        for (Mask m = available_[best] & ~used; m; m &= m - 1) options[count++] = std::countr_zero(m) + 1;
        rng_.shuffle(std::span<int>(options, count));
        for (int i = 0; i < count; ++i) {
            assignment_[best] = options[i];
            if (search(assigned + 1, used | symbol_bit(options[i]))) return true;
            if (nodes_ > node_limit_) break;
        }
        assignment_[best] = 0;
        return false;
    }

    int n_;
    std::span<const Mask> available_;
    Rng& rng_;
    std::vector<int> assignment_;
    std::uint64_t nodes_ = 0;
    std::uint64_t node_limit_ = 0;
};

}  // namespace detail

/// Random Latin square built row by row with shuffled candidate lists.
///
/// Every Latin rectangle extends to a Latin square, so each row only needs a
/// search for a permutation avoiding the symbols already used in each column.
/// The result is deterministic per seed but NOT uniformly distributed over
/// all Latin squares of order n.
inline LatinSquare random_latin_square(int n, std::uint64_t seed) {
    check_order(n);
    Rng rng(seed);
    PartialLatinSquare pls(n);
    std::vector<Mask> available(n);
    for (int r = 1; r <= n; ++r) {
        for (int c = 1; c <= n; ++c) available[c - 1] = full_mask(n) & ~pls.col_used(c);
        detail::RowFiller filler(n, available, rng);
        std::optional<std::vector<int>> row;
        // A fresh shuffle escapes a rare deep search; a completion always exists.
        for (std::uint64_t limit = 4096; !row; limit *= 2) row = filler.fill(limit);
        for (int c = 1; c <= n; ++c) pls.insert({r, c, (*row)[c - 1]});
    }
    return LatinSquare(std::move(pls));
}

// ---------------------------------------------------------------------------
// Birth orders and the construction

/// A permutation of the n² entries of a Latin square, earliest-born first.
class BirthOrder {
public:
    /// Throws PreconditionError unless `sequence` is a permutation of square's entries.
    BirthOrder(const LatinSquare& square, std::vector<Entry> sequence) : sequence_(std::move(sequence)) {
        const int n = square.order();
        if (static_cast<int>(sequence_.size()) != n * n)
            throw PreconditionError("birth order must list all n^2 entries");
        std::vector<char> seen(static_cast<std::size_t>(n) * n, 0);
        for (const auto& e : sequence_) {
            if (e.row < 1 || e.row > n || e.col < 1 || e.col > n || square.at(e.row, e.col) != e.symbol)
                throw PreconditionError("birth order entry " + to_string(e) + " is not in the square");
            auto& flag = seen[static_cast<std::size_t>(e.row - 1) * n + (e.col - 1)];
            if (flag) throw PreconditionError("birth order repeats cell of " + to_string(e));
            flag = 1;
        }
        order_ = n;
    }

    int order() const noexcept { return order_; }
    const std::vector<Entry>& sequence() const noexcept { return sequence_; }

    /// Latest-born first; the default removal order for minimization.
    std::vector<Entry> reversed() const { return {sequence_.rbegin(), sequence_.rend()}; }

private:
    int order_ = 0;
    std::vector<Entry> sequence_;
};

/// Uniformly random permutation of the entries. Sampling the permutation
/// directly is the discrete equivalent of i.i.d. uniform birth times.
inline BirthOrder random_birth_order(const LatinSquare& square, std::uint64_t seed) {
    Rng rng(seed);
    auto entries = square.entries();
    rng.shuffle(std::span<Entry>(entries));
    return BirthOrder(square, std::move(entries));
}

enum class ForcingReference {
    prefix,       // forcing tested against every earlier-born entry
    accumulated,  // forcing tested against the kept set only (comparison variant)
};

/// Walks the birth order and keeps each entry that is not forced by the
/// reference set (by default, all earlier-born entries).
inline PartialLatinSquare birth_time_construct(const LatinSquare& square, const BirthOrder& order,
                                               ForcingReference reference = ForcingReference::prefix) {
    if (order.order() != square.order()) throw PreconditionError("birth order / square order mismatch");
    const int n = square.order();
    PartialLatinSquare prefix(n);
    PartialLatinSquare kept(n);
    for (const auto& e : order.sequence()) {
        const PartialLatinSquare& ref = reference == ForcingReference::prefix ? prefix : kept;
        if (forced_symbol(ref, e.cell()) != e.symbol) kept.insert(e);
        prefix.insert(e);
    }
    return kept;
}

/// Replays `order` adding entries of `ucset` verbatim and checks that every
/// other entry is forced by its prefix. Success certifies that `ucset` is
/// uniquely completable to `square` without any search.
inline bool certify_by_replay(const LatinSquare& square, const BirthOrder& order,
                              const PartialLatinSquare& ucset) {
    PartialLatinSquare prefix(square.order());
    for (const auto& e : order.sequence()) {
        if (!ucset.contains(e) && forced_symbol(prefix, e.cell()) != e.symbol) return false;
        prefix.insert(e);
    }
    return true;
}

// ---------------------------------------------------------------------------
// Monte Carlo

struct TrialStats {
    std::size_t trials = 0;
    std::vector<int> sizes;
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation
    double stderr_mean = 0.0;
    int min = 0;
    int max = 0;

    static TrialStats from_sizes(std::vector<int> sizes) {
        TrialStats s;
        s.trials = sizes.size();
        s.sizes = std::move(sizes);
        if (s.trials == 0) return s;
        const double n = static_cast<double>(s.trials);
        s.mean = std::accumulate(s.sizes.begin(), s.sizes.end(), 0.0) / n;
        double ss = 0.0;
        for (int v : s.sizes) ss += (v - s.mean) * (v - s.mean);
        s.stddev = s.trials > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
        s.stderr_mean = s.stddev / std::sqrt(n);
        auto [lo, hi] = std::minmax_element(s.sizes.begin(), s.sizes.end());
        s.min = *lo;
        s.max = *hi;
        return s;
    }
};

/// Runs the construction over `trials` independent birth orders. Trial i
/// draws its order from substream (seed, i), so the statistics do not depend
/// on `threads`.
inline TrialStats sample_uc_sizes(const LatinSquare& square, std::size_t trials, std::uint64_t seed,
                                  unsigned threads = 0,
                                  ForcingReference reference = ForcingReference::prefix) {
    if (trials == 0) throw PreconditionError("trials must be at least 1");
    std::vector<int> sizes(trials, 0);
    parallel_for(trials, threads, [&](std::size_t i) {
        const auto order = random_birth_order(square, Rng::substream(seed, i).next());
        sizes[i] = birth_time_construct(square, order, reference).size();
    });
    return TrialStats::from_sizes(std::move(sizes));
}

// ---------------------------------------------------------------------------
// Minimization

inline std::vector<Entry> shuffled_removal_order(const PartialLatinSquare& set, std::uint64_t seed) {
    auto entries = set.entries();
    Rng rng(seed);
    rng.shuffle(std::span<Entry>(entries));
    return entries;
}

/// Single greedy pass: drops each entry (in `removal_order`) whose removal
/// keeps exactly one completion. One pass suffices: an entry kept at some
/// point stays necessary because later removals only shrink the set.
/// Entries of `removal_order` not in `ucset` are skipped; entries of `ucset`
/// missing from `removal_order` are never removed.
inline PartialLatinSquare minimize_to_critical(const PartialLatinSquare& ucset, const LatinSquare& square,
                                               std::span<const Entry> removal_order) {
    if (ucset.order() != square.order()) throw PreconditionError("order mismatch");
    if (!is_contained_in(ucset, square) || count_completions(ucset, 2).count != 1)
        throw PreconditionError("input set is not uniquely completable to the given square");
    PartialLatinSquare current = ucset;
    for (const auto& e : removal_order) {
        if (!current.contains(e)) continue;
        current.erase(e.row, e.col);
        if (count_completions(current, 2).count != 1) current.insert(e);
    }
    return current;
}

/// Minimization with the default latest-first order taken from row-major
/// reversed entries (used when no birth order is at hand).
inline PartialLatinSquare minimize_to_critical(const PartialLatinSquare& ucset, const LatinSquare& square) {
    auto order = ucset.entries();
    std::reverse(order.begin(), order.end());
    return minimize_to_critical(ucset, square, order);
}

// ---------------------------------------------------------------------------
// Exhaustive smallest critical set

struct SmallestCriticalSet {
    int size = 0;
    PartialLatinSquare witness;
};

inline constexpr int kScsMaxOrder = 4;

/// Tries every k-subset of the square's entries for k = 0, 1, ..., size_limit
/// (lexicographic in row-major entry index) and returns the first uniquely
/// completable one. A minimum uniquely completable set is critical.
inline SmallestCriticalSet scs_exhaustive(const LatinSquare& square, int size_limit) {
    const int n = square.order();
    if (n > kScsMaxOrder)
        throw BudgetExceeded("exhaustive critical-set search is limited to order <= " +
                             std::to_string(kScsMaxOrder));
    const auto entries = square.entries();
    const int total = n * n;
    size_limit = std::min(size_limit, total);
    for (int k = 0; k <= size_limit; ++k) {
        std::vector<int> idx(k);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            PartialLatinSquare subset(n);
            for (int i : idx) subset.insert(entries[i]);
            if (count_completions(subset, 2).count == 1) return {k, std::move(subset)};
            int pos = k - 1;
            while (pos >= 0 && idx[pos] == total - k + pos) --pos;
            if (pos < 0) break;
            ++idx[pos];
            for (int j = pos + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    throw BudgetExceeded("no uniquely completable subset of size <= " + std::to_string(size_limit));
}

inline SmallestCriticalSet scs_exhaustive(const LatinSquare& square) {
    return scs_exhaustive(square, square.order() * square.order());
}

}  // namespace latincs
