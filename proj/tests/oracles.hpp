#pragma once

// Brute-force reference implementations used only by tests. They avoid the
// library's search code paths entirely: squares come from stacking row
// permutations, PLS counts from scanning every (n+1)^(n²) array.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

using Grid = std::vector<int>;  // row-major, 0 = empty, symbols 1..n

/// Every Latin square of order n (n <= 4), as row-major grids.
inline std::vector<Grid> all_latin_squares(int n) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 1);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));

    std::vector<Grid> out;
    std::vector<int> pick(n, 0);
    auto rec = [&](auto&& self, int row) -> void {
        if (row == n) {
            Grid g;
            for (int r = 0; r < n; ++r) g.insert(g.end(), perms[pick[r]].begin(), perms[pick[r]].end());
            out.push_back(std::move(g));
            return;
        }
        for (std::size_t i = 0; i < perms.size(); ++i) {
            bool ok = true;
            for (int r = 0; r < row && ok; ++r)
                for (int c = 0; c < n && ok; ++c) ok = perms[pick[r]][c] != perms[i][c];
            if (!ok) continue;
            pick[row] = static_cast<int>(i);
            self(self, row + 1);
        }
    };
    rec(rec, 0);
    return out;
}

/// Number of squares in `squares` that agree with every filled cell of `partial`.
inline std::uint64_t count_extensions(const std::vector<Grid>& squares, const Grid& partial) {
    std::uint64_t count = 0;
    for (const auto& sq : squares) {
        bool ok = true;
        for (std::size_t i = 0; i < partial.size() && ok; ++i) ok = partial[i] == 0 || partial[i] == sq[i];
        count += ok;
    }
    return count;
}

inline bool is_partial_latin(int n, const Grid& g) {
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            const int s = g[r * n + c];
            if (s == 0) continue;
            for (int c2 = c + 1; c2 < n; ++c2)
                if (g[r * n + c2] == s) return false;
            for (int r2 = r + 1; r2 < n; ++r2)
                if (g[r2 * n + c] == s) return false;
        }
    return true;
}

/// counts[k] = number of partial Latin squares of order n with k filled cells,
/// by scanning all (n+1)^(n²) arrays (n <= 3).
inline std::vector<std::uint64_t> pls_census(int n) {
    const int cells = n * n;
    std::vector<std::uint64_t> counts(cells + 1, 0);
    Grid g(cells, 0);
    while (true) {
        if (is_partial_latin(n, g)) {
            int filled = 0;
            for (int v : g) filled += v != 0;
            ++counts[filled];
        }
        int i = 0;
        while (i < cells && g[i] == n) g[i++] = 0;
        if (i == cells) break;
        ++g[i];
    }
    return counts;
}

/// Smallest uniquely completable subset of `square` over all 2^(n²) subsets.
inline int smallest_uc_subset_size(int n, const Grid& square) {
    const auto squares = all_latin_squares(n);
    const int cells = n * n;
    int best = cells + 1;
    for (std::uint32_t mask = 0; mask < (1u << cells); ++mask) {
        const int size = __builtin_popcount(mask);
        if (size >= best) continue;
        Grid partial(cells, 0);
        for (int i = 0; i < cells; ++i)
            if (mask >> i & 1) partial[i] = square[i];
        if (count_extensions(squares, partial) == 1) best = size;
    }
    return best;
}

}  // namespace oracle
