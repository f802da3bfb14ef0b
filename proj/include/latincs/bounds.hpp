#pragma once

// Closed-form evaluators for the critical-set bounds and the counting
// bounds on partial Latin squares. Anything that can overflow is returned as
// a natural logarithm.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "latincs/core.hpp"
#include "latincs/error.hpp"
#include "latincs/special.hpp"

namespace latincs {

struct LogBracket {
    double lower = 0.0;
    double upper = 0.0;
};

/// Stirling bracket: sqrt(2πn)(n/e)^n <= n! <= sqrt(2πn)(n/e)^n e^(1/(12n)), in logs.
inline LogBracket stirling_log_factorial_bounds(long long n) {
    if (n < 1) throw DomainError("Stirling bracket needs n >= 1");
    const double x = static_cast<double>(n);
    const double lower = 0.5 * std::log(2.0 * std::numbers::pi * x) + x * std::log(x) - x;
    return {lower, lower + 1.0 / (12.0 * x)};
}

/// log((e a / b)^b), the standard upper bound on log C(a, b). b = 0 gives 0.
inline double log_binomial_upper(long long a, long long b) {
    if (a < 1 || b < 0 || b > a) throw DomainError("need a >= 1 and 0 <= b <= a");
    if (b == 0) return 0.0;
    const double bb = static_cast<double>(b);
    return bb * (1.0 + std::log(static_cast<double>(a)) - std::log(bb));
}

/// log C(a, b) through log-gamma.
inline double log_binomial(long long a, long long b) {
    if (a < 0 || b < 0 || b > a) throw DomainError("need 0 <= b <= a");
    return log_factorial(static_cast<double>(a)) - log_factorial(static_cast<double>(b)) -
           log_factorial(static_cast<double>(a - b));
}

// ---------------------------------------------------------------------------
// Expected size of the birth-time construction and the resulting upper bound

/// (2n-2)!! / (2n-1)!! = prod_{i=1}^{n-1} 2i/(2i+1), accumulated as a product
/// of factors below 1.
inline double wallis_ratio(long long n) {
    if (n < 1) throw DomainError("order must be positive");
    double ratio = 1.0;
    for (long long i = 1; i < n; ++i) ratio *= (2.0 * i) / (2.0 * i + 1.0);
    return ratio;
}

/// Exact E|C| of the birth-time construction at order n: n²(1 - (2n-2)!!/(2n-1)!!).
inline double wallis_expected_size(long long n) {
    const double x = static_cast<double>(n);
    return x * x * (1.0 - wallis_ratio(n));
}

/// n² - n sqrt(nπ)/2: every Latin square of order n has a critical set
/// smaller than this.
inline double critical_set_upper_bound(long long n) {
    if (n < 1) throw DomainError("order must be positive");
    const double x = static_cast<double>(n);
    return x * x - x * std::sqrt(x * std::numbers::pi) / 2.0;
}

// ---------------------------------------------------------------------------
// Counting bounds

/// Log of the per-shape bound
///   prod_i n!^((n-r_i)/n) / (n-r_i)!  *  prod_i prod_{j<c_i} (n-j)!^(1/(n-j)).
inline double shape_count_bound(const Shape& shape) {
    const int n = shape.order();
    const double log_n_fact = log_factorial(n);
    double value = 0.0;
    for (int r : shape.row_counts())
        value += static_cast<double>(n - r) / n * log_n_fact - log_factorial(n - r);
    for (int c : shape.col_counts())
        for (int j = 0; j < c; ++j) value += log_factorial(n - j) / (n - j);
    return value;
}

/// Log of the bound on the number of partial Latin squares of order n and size k:
///   C(n², k) n!^(2n - k/n) e^(n(3 + ln(2πn)²/4)) / ((n - k/n)!^(2n) e^k)
/// with (n - k/n)! = Γ(n - k/n + 1).
inline double pls_count_bound(long long n, long long k) {
    if (n < 1 || k < 0 || k > n * n) throw DomainError("need n >= 1 and 0 <= k <= n^2");
    const double x = static_cast<double>(n);
    const double per_row = static_cast<double>(k) / x;
    const double log_2pin = std::log(2.0 * std::numbers::pi * x);
    return log_binomial(n * n, k) + (2.0 * x - per_row) * log_factorial(x) +
           x * (3.0 + log_2pin * log_2pin / 4.0) - 2.0 * x * log_factorial(x - per_row) -
           static_cast<double>(k);
}

/// Log of the van der Waerden consequence L(n) >= (n!)^(2n) / n^(n²).
inline double vdw_log_count_lower(long long n) {
    if (n < 1) throw DomainError("order must be positive");
    const double x = static_cast<double>(n);
    return 2.0 * x * log_factorial(x) - x * x * std::log(x);
}

// ---------------------------------------------------------------------------
// Lower bound on the largest smallest-critical-set size

/// log(LHS) - log(RHS) of c^(3c) n^c <= e^(3c) e^(ln(2πn)²/n), with c = 1 - k/n².
/// Non-positive means the inequality holds at (n, c).
inline double size_inequality_gap(double n, double c) {
    if (!(c > 0.0 && c < 1.0)) throw DomainError("c must lie in (0, 1)");
    const double log_2pin = std::log(2.0 * std::numbers::pi * n);
    return 3.0 * c * std::log(c) + c * std::log(n) - 3.0 * c - log_2pin * log_2pin / n;
}

/// The c at which the asymptotic argument claims the gap turns positive:
/// e^(1 + 1/sqrt(n)) / n^(1/3).
inline double claimed_positive_endpoint(double n) {
    return std::exp(1.0 + 1.0 / std::sqrt(n)) / std::cbrt(n);
}

struct LowerBoundSolution {
    double order = 0;
    double c = 0;        // root of the gap, or sup of feasible c when not bracketed
    double k_lower = 0;  // n²(1 - c)
    double gap = 0;      // gap at c
    int iterations = 0;
    bool bracketed = false;
    bool used_claimed_endpoint = false;
};

inline constexpr double kGapTolerance = 1e-12;

/// Root of size_inequality_gap(n, .) on [n^(-1/3), 1). The gap is negative at
/// n^(-1/3) and increasing to the right of it. The upper end of the bracket is
/// the claimed endpoint when the gap is already positive there, otherwise just
/// below 1. Without a sign change (tiny n) the largest feasible c on a grid
/// over (0, 1) is reported instead.
inline LowerBoundSolution solve_lower_bound(double n) {
    if (!(n >= 2.0)) throw DomainError("solve_lower_bound needs n >= 2");
    LowerBoundSolution sol;
    sol.order = n;
    const auto gap = [n](double c) { return size_inequality_gap(n, c); };

    double lo = 1.0 / std::cbrt(n);
    double hi = claimed_positive_endpoint(n);
    if (hi < 1.0 && gap(hi) > 0.0) {
        sol.used_claimed_endpoint = true;
    } else {
        hi = std::nextafter(1.0, 0.0);
    }
    if (lo < 1.0 && gap(lo) < 0.0 && gap(hi) > 0.0) {
        sol.bracketed = true;
        double mid = 0.5 * (lo + hi);
        double g = gap(mid);
        for (int it = 0; it < 200 && std::abs(g) > kGapTolerance && hi - lo > 0.0; ++it) {
            (g < 0.0 ? lo : hi) = mid;
            const double next = 0.5 * (lo + hi);
            if (next == mid) break;
            mid = next;
            g = gap(mid);
            sol.iterations = it + 1;
        }
        sol.c = mid;
        sol.gap = g;
    } else {
        constexpr int kGrid = 100000;
        double best = 0.0;
        for (int i = 1; i < kGrid; ++i) {
            const double c = static_cast<double>(i) / kGrid;
            if (gap(c) <= 0.0) best = c;
        }
        if (best == 0.0) best = 1.0 / kGrid;
        sol.c = best;
        sol.gap = gap(best);
    }
    sol.k_lower = n * n * (1.0 - sol.c);
    return sol;
}

/// Previously known lower bound on lcs(n):
///   n²(1 - (2 + ln 2)/ln n) + n(1 + (2 ln 2 + ln 2π)/ln n) - ln 2 / ln n.
inline double lcs_reference_lower_bound(double n) {
    if (!(n >= 2.0)) throw DomainError("order must be at least 2");
    const double ln_n = std::log(n);
    const double ln2 = std::numbers::ln2;
    return n * n * (1.0 - (2.0 + ln2) / ln_n) +
           n * (1.0 + (2.0 * ln2 + std::log(2.0 * std::numbers::pi)) / ln_n) - ln2 / ln_n;
}

/// n² - e n^(5/3), the leading-order form of the lower bound on max scs(L).
inline double scs_asymptotic_lower(double n) { return n * n - std::numbers::e * std::pow(n, 5.0 / 3.0); }

}  // namespace latincs
