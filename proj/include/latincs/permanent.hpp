#pragma once

// Exact permanents of rectangular 0-1 matrices and the rectangular Brégman
// upper bound
//
//   per(A) <= n!^((n-m)/n) / (n-m)! * prod_i (r_i!)^(1/r_i)
//
// for an m x n matrix (m <= n) with r_i ones in row i.

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "latincs/bigint.hpp"
#include "latincs/core.hpp"
#include "latincs/special.hpp"

namespace latincs {

class BinaryMatrix {
public:
    /// Row i's bit j is column j + 1. Requires rows <= cols <= 64.
    BinaryMatrix(int cols, std::vector<Mask> row_bits) : cols_(cols), bits_(std::move(row_bits)) {
        const int m = rows();
        if (cols_ < 1 || cols_ > kMaxOrder) throw PreconditionError("column count must lie in [1, 64]");
        if (m < 1 || m > cols_) throw PreconditionError("need 1 <= rows <= cols");
        for (Mask b : bits_)
            if (b & ~full_mask(cols_)) throw PreconditionError("row mask has bits beyond the last column");
    }

    static BinaryMatrix all_ones(int rows, int cols) { return {cols, std::vector<Mask>(rows, full_mask(cols))}; }

    static BinaryMatrix identity(int n) {
        std::vector<Mask> bits(n);
        for (int i = 0; i < n; ++i) bits[i] = Mask{1} << i;
        return {n, std::move(bits)};
    }

    int rows() const noexcept { return static_cast<int>(bits_.size()); }
    int cols() const noexcept { return cols_; }
    Mask row_bits(int i) const { return bits_[i]; }
    const std::vector<Mask>& row_masks() const noexcept { return bits_; }
    int row_ones(int i) const { return std::popcount(bits_[i]); }
    bool at(int i, int j) const { return (bits_[i] >> j) & 1; }

    friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

private:
    int cols_;
    std::vector<Mask> bits_;
};

inline constexpr int kPermanentMaxCols = 24;
inline constexpr int kNaivePermanentMaxCols = 8;

namespace detail {

inline BigInt to_bigint(unsigned __int128 v) {
    BigInt out = static_cast<std::uint64_t>(v >> 64);
    out <<= 64;
    out += static_cast<std::uint64_t>(v);
    return out;
}

}  // namespace detail

/// Sum over injections sigma: rows -> columns of prod a[i][sigma(i)].
/// Recursion over rows with a used-column mask; the row index equals the
/// mask's popcount, so the memo is keyed on the mask alone.
inline BigInt permanent_exact(const BinaryMatrix& a) {
    if (a.cols() > kPermanentMaxCols)
        throw BudgetExceeded("exact permanent is limited to " + std::to_string(kPermanentMaxCols) + " columns");
    const int m = a.rows();
    // n!/(n-m)! <= 24! < 2^80
    using Wide = unsigned __int128;
    std::unordered_map<std::uint32_t, Wide> memo;
    auto rec = [&](auto&& self, int row, std::uint32_t used) -> Wide {
        if (row == m) return 1;
        if (auto it = memo.find(used); it != memo.end()) return it->second;
        Wide total = 0;
        for (Mask free = a.row_bits(row) & ~Mask{used}; free; free &= free - 1)
            total += self(self, row + 1, used | static_cast<std::uint32_t>(free & (~free + 1)));
        memo.emplace(used, total);
        return total;
    };
    return detail::to_bigint(rec(rec, 0, 0));
}

/// Direct enumeration of all n!/(n-m)! injections. Test oracle.
inline BigInt permanent_naive(const BinaryMatrix& a) {
    if (a.cols() > kNaivePermanentMaxCols)
        throw BudgetExceeded("naive permanent is limited to " + std::to_string(kNaivePermanentMaxCols) +
                             " columns");
    const int m = a.rows(), n = a.cols();
    std::vector<int> sigma(m);
    std::vector<bool> taken(n, false);
    std::uint64_t total = 0;
    auto rec = [&](auto&& self, int row) -> void {
        if (row == m) {
            std::uint64_t product = 1;
            for (int i = 0; i < m; ++i) product *= a.at(i, sigma[i]) ? 1 : 0;
            total += product;
            return;
        }
        for (int j = 0; j < n; ++j) {
            if (taken[j]) continue;
            taken[j] = true;
            sigma[row] = j;
            self(self, row + 1);
            taken[j] = false;
        }
    };
    rec(rec, 0);
    return BigInt(total);
}

/// Natural log of the rectangular Brégman bound. A zero row makes the
/// product term undefined (and the permanent 0); it is rejected.
inline double bregman_rect_bound(const BinaryMatrix& a) {
    const int m = a.rows(), n = a.cols();
    double value = static_cast<double>(n - m) / n * log_factorial(n) - log_factorial(n - m);
    for (int i = 0; i < m; ++i) {
        const int r = a.row_ones(i);
        if (r == 0) throw DomainError("row " + std::to_string(i + 1) + " has no ones");
        value += log_factorial(r) / r;
    }
    return value;
}

// ---------------------------------------------------------------------------
// Text format: "m n", then m lines of n characters from {0,1}.

inline std::string serialize_matrix_text(const BinaryMatrix& a) {
    std::string out = std::to_string(a.rows()) + " " + std::to_string(a.cols()) + "\n";
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) out += a.at(i, j) ? '1' : '0';
        out += '\n';
    }
    return out;
}

inline BinaryMatrix parse_matrix_text(std::string_view text) {
    const auto lines = detail::split_lines(text);
    const auto header = detail::split_ws(lines.front());
    if (header.size() != 2) throw ParseError("first line must be 'm n'", 1);
    const int m = detail::parse_int_token(header[0], 1, 1);
    const int n = detail::parse_int_token(header[1], 1, 2);
    if (n < 1 || n > kMaxOrder || m < 1 || m > n) throw ParseError("need 1 <= m <= n <= 64", 1);
    if (static_cast<int>(lines.size()) != m + 1)
        throw ParseError("expected " + std::to_string(m) + " matrix rows, found " +
                         std::to_string(lines.size() - 1));
    std::vector<Mask> bits(m, 0);
    for (int i = 0; i < m; ++i) {
        std::string_view row = lines[i + 1];
        if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
        if (static_cast<int>(row.size()) != n)
            throw ParseError("matrix row " + std::to_string(i + 1) + " must have " + std::to_string(n) +
                                 " characters",
                             i + 2);
        for (int j = 0; j < n; ++j) {
            if (row[j] == '1') bits[i] |= Mask{1} << j;
            else if (row[j] != '0') throw ParseError("matrix entries must be 0 or 1", i + 2, j + 1);
        }
    }
    return BinaryMatrix(n, std::move(bits));
}

}  // namespace latincs
