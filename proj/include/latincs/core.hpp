#pragma once

// Data model for (partial) Latin squares and shapes, plus the square text format.
//
// Everything that crosses the public API is 1-based: rows, columns and symbols
// all live in [1, n]. Internally rows/columns/symbols index bit positions
// 0..n-1, so symbol s occupies bit (s - 1) of a row or column mask.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "latincs/error.hpp"

namespace latincs {

using Mask = std::uint64_t;

inline constexpr int kMaxOrder = 64;

/// Bits 0..n-1 set.
constexpr Mask full_mask(int n) noexcept {
    return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

constexpr Mask symbol_bit(int symbol) noexcept { return Mask{1} << (symbol - 1); }

inline void check_order(int n) {
    if (n < 1 || n > kMaxOrder)
        throw PreconditionError("order must lie in [1, 64], got " + std::to_string(n));
}

struct Cell {
    int row = 1;
    int col = 1;

    friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// One filled cell, the triple (row, col; symbol).
struct Entry {
    int row = 1;
    int col = 1;
    int symbol = 1;

    Cell cell() const noexcept { return {row, col}; }

    friend auto operator<=>(const Entry&, const Entry&) = default;
};

inline std::string to_string(const Entry& e) {
    return "(" + std::to_string(e.row) + "," + std::to_string(e.col) + ";" +
           std::to_string(e.symbol) + ")";
}

/// A set of symbols in [1, n], stored as a bitmask.
class SymbolSet {
public:
    constexpr SymbolSet() = default;
    constexpr explicit SymbolSet(Mask bits) : bits_(bits) {}

    constexpr Mask bits() const noexcept { return bits_; }
    constexpr bool empty() const noexcept { return bits_ == 0; }
    constexpr int size() const noexcept { return std::popcount(bits_); }
    constexpr bool contains(int symbol) const noexcept { return (bits_ & symbol_bit(symbol)) != 0; }

    /// Smallest symbol in the set; the set must be non-empty.
    constexpr int first() const noexcept { return std::countr_zero(bits_) + 1; }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        for (Mask m = bits_; m; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
        return out;
    }

    friend constexpr bool operator==(SymbolSet, SymbolSet) = default;

private:
    Mask bits_ = 0;
};

class LatinSquare;

/// A conflict-free set of entries of a fixed order, with occupancy bitmasks
/// kept in sync with the grid. Insertions that would break the Latin property
/// are rejected (insert throws, try_insert returns false).
class PartialLatinSquare {
public:
    explicit PartialLatinSquare(int order)
        : order_((check_order(order), order)),
          grid_(static_cast<std::size_t>(order) * order, 0),
          row_used_(order, 0),
          col_used_(order, 0),
          row_filled_(order, 0) {}

    /// Builds from entries, rejecting any Latin-property violation.
    PartialLatinSquare(int order, const std::vector<Entry>& entries) : PartialLatinSquare(order) {
        for (const auto& e : entries) insert(e);
    }

    int order() const noexcept { return order_; }
    int size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    bool full() const noexcept { return size_ == order_ * order_; }

    /// Symbol at (row, col), 0 when empty.
    int at(int row, int col) const { return grid_[index(row, col)]; }
    int at(Cell c) const { return at(c.row, c.col); }
    bool filled(int row, int col) const { return at(row, col) != 0; }
    bool filled(Cell c) const { return at(c) != 0; }

    Mask row_used(int row) const { return row_used_[row - 1]; }
    Mask col_used(int col) const { return col_used_[col - 1]; }
    Mask row_filled(int row) const { return row_filled_[row - 1]; }

    bool contains(const Entry& e) const {
        return in_range(e) && at(e.row, e.col) == e.symbol;
    }

    /// True iff `e` can be added without breaking the partial Latin property.
    bool can_insert(const Entry& e) const {
        if (!in_range(e) || filled(e.row, e.col)) return false;
        const Mask bit = symbol_bit(e.symbol);
        return ((row_used_[e.row - 1] | col_used_[e.col - 1]) & bit) == 0;
    }

    bool try_insert(const Entry& e) {
        if (!can_insert(e)) return false;
        place(e);
        return true;
    }

    void insert(const Entry& e) {
        if (!in_range(e))
            throw PreconditionError("entry " + to_string(e) + " out of range for order " +
                                    std::to_string(order_));
        if (filled(e.row, e.col))
            throw PreconditionError("cell (" + std::to_string(e.row) + "," + std::to_string(e.col) +
                                    ") already filled");
        const Mask bit = symbol_bit(e.symbol);
        if (row_used_[e.row - 1] & bit)
            throw PreconditionError("duplicate symbol in row " + std::to_string(e.row));
        if (col_used_[e.col - 1] & bit)
            throw PreconditionError("duplicate symbol in column " + std::to_string(e.col));
        place(e);
    }

    /// Removes the entry at (row, col); no-op for an empty cell.
    void erase(int row, int col) {
        auto& slot = grid_[index(row, col)];
        if (slot == 0) return;
        const Mask bit = symbol_bit(slot);
        row_used_[row - 1] &= ~bit;
        col_used_[col - 1] &= ~bit;
        row_filled_[row - 1] &= ~(Mask{1} << (col - 1));
        slot = 0;
        --size_;
    }

    PartialLatinSquare with(const Entry& e) const {
        PartialLatinSquare copy = *this;
        copy.insert(e);
        return copy;
    }

    PartialLatinSquare without(const Entry& e) const {
        PartialLatinSquare copy = *this;
        if (copy.contains(e)) copy.erase(e.row, e.col);
        return copy;
    }

    /// Entries in canonical row-major order.
    std::vector<Entry> entries() const {
        std::vector<Entry> out;
        out.reserve(size_);
        for (int r = 1; r <= order_; ++r)
            for (int c = 1; c <= order_; ++c)
                if (int s = at(r, c)) out.push_back({r, c, s});
        return out;
    }

    friend bool operator==(const PartialLatinSquare& a, const PartialLatinSquare& b) {
        return a.order_ == b.order_ && a.grid_ == b.grid_;
    }

    /// Recomputes every mask from the grid and compares; the audit behind validate().
    bool masks_consistent() const {
        int count = 0;
        for (int r = 1; r <= order_; ++r) {
            Mask used = 0, filled_bits = 0;
            for (int c = 1; c <= order_; ++c) {
                int s = at(r, c);
                if (s == 0) continue;
                if (s < 1 || s > order_) return false;
                if (used & symbol_bit(s)) return false;
                used |= symbol_bit(s);
                filled_bits |= Mask{1} << (c - 1);
                ++count;
            }
            if (used != row_used_[r - 1] || filled_bits != row_filled_[r - 1]) return false;
        }
        for (int c = 1; c <= order_; ++c) {
            Mask used = 0;
            for (int r = 1; r <= order_; ++r) {
                int s = at(r, c);
                if (s == 0) continue;
                if (used & symbol_bit(s)) return false;
                used |= symbol_bit(s);
            }
            if (used != col_used_[c - 1]) return false;
        }
        return count == size_;
    }

private:
    std::size_t index(int row, int col) const {
        return static_cast<std::size_t>(row - 1) * order_ + (col - 1);
    }

    bool in_range(const Entry& e) const noexcept {
        return e.row >= 1 && e.row <= order_ && e.col >= 1 && e.col <= order_ && e.symbol >= 1 &&
               e.symbol <= order_;
    }

    void place(const Entry& e) {
        const Mask bit = symbol_bit(e.symbol);
        grid_[index(e.row, e.col)] = static_cast<std::uint8_t>(e.symbol);
        row_used_[e.row - 1] |= bit;
        col_used_[e.col - 1] |= bit;
        row_filled_[e.row - 1] |= Mask{1} << (e.col - 1);
        ++size_;
    }

    int order_;
    int size_ = 0;
    std::vector<std::uint8_t> grid_;
    std::vector<Mask> row_used_;
    std::vector<Mask> col_used_;
    std::vector<Mask> row_filled_;
};

/// A completely filled partial Latin square: every row and column is a
/// permutation of 1..n.
class LatinSquare {
public:
    /// Throws PreconditionError unless `pls` is full.
    explicit LatinSquare(PartialLatinSquare pls) : cells_(std::move(pls)) {
        if (!cells_.full())
            throw PreconditionError("not a complete Latin square: " + std::to_string(cells_.size()) +
                                    " of " + std::to_string(cells_.order() * cells_.order()) +
                                    " cells filled");
    }

    /// Row-major grid of symbols, each row given as a vector.
    static LatinSquare from_rows(const std::vector<std::vector<int>>& rows) {
        const int n = static_cast<int>(rows.size());
        PartialLatinSquare pls(n);
        for (int r = 0; r < n; ++r) {
            if (static_cast<int>(rows[r].size()) != n)
                throw PreconditionError("row " + std::to_string(r + 1) + " has wrong length");
            for (int c = 0; c < n; ++c) pls.insert({r + 1, c + 1, rows[r][c]});
        }
        return LatinSquare(std::move(pls));
    }

    int order() const noexcept { return cells_.order(); }
    int at(int row, int col) const { return cells_.at(row, col); }
    int at(Cell c) const { return cells_.at(c); }
    Entry entry(int row, int col) const { return {row, col, at(row, col)}; }
    std::vector<Entry> entries() const { return cells_.entries(); }
    const PartialLatinSquare& as_partial() const noexcept { return cells_; }

    friend bool operator==(const LatinSquare& a, const LatinSquare& b) { return a.cells_ == b.cells_; }

private:
    PartialLatinSquare cells_;
};

/// Set of cell positions with per-row and per-column counts.
class Shape {
public:
    /// Cells are sorted into row-major order; duplicates or out-of-range cells throw.
    Shape(int order, std::vector<Cell> cells)
        : order_((check_order(order), order)),
          cells_(std::move(cells)),
          row_counts_(order, 0),
          col_counts_(order, 0) {
        std::sort(cells_.begin(), cells_.end());
        for (std::size_t i = 0; i < cells_.size(); ++i) {
            const Cell& c = cells_[i];
            if (c.row < 1 || c.row > order_ || c.col < 1 || c.col > order_)
                throw PreconditionError("shape cell out of range");
            if (i > 0 && cells_[i - 1] == c) throw PreconditionError("duplicate shape cell");
            ++row_counts_[c.row - 1];
            ++col_counts_[c.col - 1];
        }
    }

    static Shape full(int order) {
        std::vector<Cell> cells;
        for (int r = 1; r <= order; ++r)
            for (int c = 1; c <= order; ++c) cells.push_back({r, c});
        return Shape(order, std::move(cells));
    }

    int order() const noexcept { return order_; }
    int size() const noexcept { return static_cast<int>(cells_.size()); }
    const std::vector<Cell>& cells() const noexcept { return cells_; }
    const std::vector<int>& row_counts() const noexcept { return row_counts_; }
    const std::vector<int>& col_counts() const noexcept { return col_counts_; }

    friend bool operator==(const Shape& a, const Shape& b) {
        return a.order_ == b.order_ && a.cells_ == b.cells_;
    }

private:
    int order_;
    std::vector<Cell> cells_;
    std::vector<int> row_counts_;
    std::vector<int> col_counts_;
};

/// True iff `entries` form a partial Latin square of order n.
inline bool validate(int order, const std::vector<Entry>& entries) {
    if (order < 1 || order > kMaxOrder) return false;
    PartialLatinSquare pls(order);
    for (const auto& e : entries)
        if (!pls.try_insert(e)) return false;
    return true;
}

/// Audits an existing object: Latin property plus mask consistency.
inline bool validate(const PartialLatinSquare& pls) { return pls.masks_consistent(); }

inline Shape shape_of(const PartialLatinSquare& pls) {
    std::vector<Cell> cells;
    cells.reserve(pls.size());
    for (const auto& e : pls.entries()) cells.push_back(e.cell());
    return Shape(pls.order(), std::move(cells));
}

inline bool is_contained_in(const PartialLatinSquare& pls, const LatinSquare& square) {
    if (pls.order() != square.order())
        throw PreconditionError("order mismatch: " + std::to_string(pls.order()) + " vs " +
                                std::to_string(square.order()));
    for (const auto& e : pls.entries())
        if (square.at(e.row, e.col) != e.symbol) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Text format: first line n; then n lines of n whitespace-separated tokens,
// 0 for empty; trailing newline required.

inline std::string serialize_square_text(const PartialLatinSquare& pls) {
    std::string out = std::to_string(pls.order()) + "\n";
    for (int r = 1; r <= pls.order(); ++r) {
        for (int c = 1; c <= pls.order(); ++c) {
            if (c > 1) out += ' ';
            out += std::to_string(pls.at(r, c));
        }
        out += '\n';
    }
    return out;
}

inline std::string serialize_square_text(const LatinSquare& square) {
    return serialize_square_text(square.as_partial());
}

namespace detail {

inline int parse_int_token(std::string_view token, int line, int column) {
    if (token.empty() || token.size() > 9)
        throw ParseError("bad integer token '" + std::string(token) + "'", line, column);
    int value = 0;
    for (char ch : token) {
        if (ch < '0' || ch > '9')
            throw ParseError("bad integer token '" + std::string(token) + "'", line, column);
        value = value * 10 + (ch - '0');
    }
    return value;
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) tokens.push_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

/// Splits on '\n'; requires the text to end with a newline.
inline std::vector<std::string_view> split_lines(std::string_view text) {
    if (text.empty() || text.back() != '\n') throw ParseError("missing trailing newline");
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\n') {
            lines.push_back(text.substr(start, i - start));
            start = i + 1;
        }
    }
    return lines;
}

}  // namespace detail

/// Parses the square text format. Errors carry the 1-based file line and,
/// where relevant, the offending grid row/column in the message.
inline PartialLatinSquare parse_square_text(std::string_view text) {
    const auto lines = detail::split_lines(text);
    const auto header = detail::split_ws(lines.front());
    if (header.size() != 1) throw ParseError("first line must hold the order", 1);
    const int n = detail::parse_int_token(header[0], 1, 1);
    if (n < 1 || n > kMaxOrder) throw ParseError("order must lie in [1, 64]", 1, 1);
    if (static_cast<int>(lines.size()) != n + 1)
        throw ParseError("expected " + std::to_string(n + 1) + " lines, found " +
                         std::to_string(lines.size()));

    PartialLatinSquare pls(n);
    for (int r = 1; r <= n; ++r) {
        const auto tokens = detail::split_ws(lines[r]);
        if (static_cast<int>(tokens.size()) != n)
            throw ParseError("row " + std::to_string(r) + ": expected " + std::to_string(n) +
                                 " tokens, found " + std::to_string(tokens.size()),
                             r + 1);
        for (int c = 1; c <= n; ++c) {
            const int s = detail::parse_int_token(tokens[c - 1], r + 1, c);
            if (s == 0) continue;
            if (s > n)
                throw ParseError("symbol " + std::to_string(s) + " out of range at row " +
                                     std::to_string(r) + ", column " + std::to_string(c),
                                 r + 1, c);
            if (pls.row_used(r) & symbol_bit(s))
                throw ParseError("duplicate symbol in row " + std::to_string(r), r + 1, c);
            if (pls.col_used(c) & symbol_bit(s))
                throw ParseError("duplicate symbol in column " + std::to_string(c), r + 1, c);
            pls.insert({r, c, s});
        }
    }
    return pls;
}

}  // namespace latincs
