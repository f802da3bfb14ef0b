#pragma once

// Forcing, forcing closure, completion counting and unique completability.
//
// "Forcing" here is strictly the naked-single rule: P forces (i,j;k) when
// every other symbol at (i,j) already conflicts with P. Unique completability
// is always decided by full backtracking, never by forcing alone.

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "latincs/core.hpp"

namespace latincs {

/// Per-cell candidate view over a partial Latin square. Candidates of an empty
/// cell are all symbols minus (row_used | col_used); a filled cell's candidate
/// set is its placed symbol.
class CandidateGrid {
public:
    explicit CandidateGrid(const PartialLatinSquare& pls) : square_(pls), all_(full_mask(pls.order())) {}

    int order() const noexcept { return square_.order(); }
    const PartialLatinSquare& square() const noexcept { return square_; }
    bool contradictory() const noexcept { return contradictory_; }
    bool complete() const noexcept { return square_.full(); }

    Mask candidates(int row, int col) const {
        if (int s = square_.at(row, col)) return symbol_bit(s);
        return all_ & ~(square_.row_used(row) | square_.col_used(col));
    }

    void place(int row, int col, int symbol) { square_.insert({row, col, symbol}); }

    /// Adds forced entries until a fixpoint; returns false (and flags the grid)
    /// if some empty cell ends up with no candidate.
    bool close() {
        const int n = order();
        bool changed = true;
        while (changed) {
            changed = false;
            for (int r = 1; r <= n; ++r) {
                Mask empty_cols = full_mask(n) & ~square_.row_filled(r);
                for (; empty_cols; empty_cols &= empty_cols - 1) {
                    const int c = std::countr_zero(empty_cols) + 1;
                    const Mask cand = all_ & ~(square_.row_used(r) | square_.col_used(c));
                    if (cand == 0) {
                        contradictory_ = true;
                        return false;
                    }
                    if ((cand & (cand - 1)) == 0) {
                        square_.insert({r, c, std::countr_zero(cand) + 1});
                        changed = true;
                    }
                }
            }
        }
        return true;
    }

    /// Empty cell with the fewest candidates, ties broken row-major. Requires
    /// at least one empty cell.
    Cell most_constrained_cell() const {
        const int n = order();
        Cell best{0, 0};
        int best_count = n + 1;
        for (int r = 1; r <= n; ++r) {
            Mask empty_cols = full_mask(n) & ~square_.row_filled(r);
            for (; empty_cols; empty_cols &= empty_cols - 1) {
                const int c = std::countr_zero(empty_cols) + 1;
                const int count = std::popcount(candidates(r, c));
                if (count < best_count) {
                    best_count = count;
                    best = {r, c};
                    if (count <= 1) return best;
                }
            }
        }
        return best;
    }

private:
    PartialLatinSquare square_;
    Mask all_;
    bool contradictory_ = false;
};

struct CompletionCount {
    std::uint64_t count = 0;
    bool capped = false;

    friend bool operator==(const CompletionCount&, const CompletionCount&) = default;
};

struct ClosureResult {
    PartialLatinSquare square;
    bool contradictory = false;
};

namespace detail {

inline void require_empty(const PartialLatinSquare& pls, Cell cell) {
    if (cell.row < 1 || cell.row > pls.order() || cell.col < 1 || cell.col > pls.order())
        throw PreconditionError("cell out of range");
    if (pls.filled(cell))
        throw PreconditionError("cell (" + std::to_string(cell.row) + "," + std::to_string(cell.col) +
                                ") is already filled");
}

inline void count_recursive(CandidateGrid grid, std::uint64_t cap, std::uint64_t& found,
                            std::vector<PartialLatinSquare>* solutions) {
    if (!grid.close()) return;
    if (grid.complete()) {
        ++found;
        if (solutions) solutions->push_back(grid.square());
        return;
    }
    const Cell cell = grid.most_constrained_cell();
    for (Mask cand = grid.candidates(cell.row, cell.col); cand && found < cap; cand &= cand - 1) {
        CandidateGrid child = grid;
        child.place(cell.row, cell.col, std::countr_zero(cand) + 1);
        count_recursive(std::move(child), cap, found, solutions);
    }
}

}  // namespace detail

/// Symbols k' such that pls ∪ {(cell; k')} is still a partial Latin square.
inline SymbolSet candidates(const PartialLatinSquare& pls, Cell cell) {
    detail::require_empty(pls, cell);
    return SymbolSet(full_mask(pls.order()) & ~(pls.row_used(cell.row) | pls.col_used(cell.col)));
}

/// The forced symbol at an empty cell, if the cell has exactly one candidate.
inline std::optional<int> forced_symbol(const PartialLatinSquare& pls, Cell cell) {
    const SymbolSet cand = candidates(pls, cell);
    if (cand.size() == 1) return cand.first();
    return std::nullopt;
}

inline ClosureResult forcing_closure(const PartialLatinSquare& pls) {
    CandidateGrid grid(pls);
    const bool ok = grid.close();
    return {grid.square(), !ok};
}

/// Number of Latin squares containing `pls`, stopping at `cap`. Search runs
/// forcing closure at every node and branches on the most constrained cell,
/// trying symbols in ascending order.
inline CompletionCount count_completions(const PartialLatinSquare& pls, std::uint64_t cap) {
    if (cap == 0) throw PreconditionError("cap must be at least 1");
    std::uint64_t found = 0;
    detail::count_recursive(CandidateGrid(pls), cap, found, nullptr);
    return {found, found >= cap};
}

/// Every completion of `pls`, up to `cap` of them, in search order.
inline std::vector<LatinSquare> completions(const PartialLatinSquare& pls, std::uint64_t cap) {
    std::vector<PartialLatinSquare> raw;
    std::uint64_t found = 0;
    detail::count_recursive(CandidateGrid(pls), cap, found, &raw);
    std::vector<LatinSquare> out;
    out.reserve(raw.size());
    for (auto& p : raw) out.emplace_back(std::move(p));
    return out;
}

/// The unique completion, or nothing when there are zero or several.
inline std::optional<LatinSquare> is_uniquely_completable(const PartialLatinSquare& pls) {
    auto found = completions(pls, 2);
    if (found.size() != 1) return std::nullopt;
    return std::move(found.front());
}

/// Definitional critical-set test: exactly one completion, and removing any
/// single entry leaves at least two.
inline bool is_critical(const PartialLatinSquare& pls) {
    if (count_completions(pls, 2).count != 1) return false;
    for (const auto& e : pls.entries())
        if (count_completions(pls.without(e), 2).count < 2) return false;
    return true;
}

}  // namespace latincs
