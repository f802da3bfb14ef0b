#pragma once

// BoundReport: evaluated bounds with formula labels and bound-vs-oracle
// verdicts, rendered as a flat key/value block or a JSON document.

#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "latincs/bigint.hpp"
#include "latincs/bounds.hpp"
#include "latincs/census.hpp"

namespace latincs {

inline constexpr double kSlackTolerance = 1e-9;

/// printf %.12g
inline std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct NamedValue {
    std::string name;
    std::optional<double> log_value;  // natural log; empty when the value is not positive
    double value_or_inf = 0.0;        // plain value, +inf once exp() would overflow
    std::string formula;

    static NamedValue from_log(std::string name, double log_value, std::string formula) {
        const double plain = log_value > 709.0 ? std::numeric_limits<double>::infinity() : std::exp(log_value);
        return {std::move(name), log_value, plain, std::move(formula)};
    }

    static NamedValue from_plain(std::string name, double value, std::string formula) {
        std::optional<double> lv;
        if (value > 0.0) lv = std::log(value);
        return {std::move(name), lv, value, std::move(formula)};
    }
};

/// bound >= oracle, compared in log space (or directly for plain values).
struct Comparison {
    std::string bound;
    std::string oracle;
    double slack = 0.0;  // bound - oracle
    bool holds = false;

    static Comparison make(std::string bound, double bound_value, std::string oracle, double oracle_value) {
        const double slack = bound_value - oracle_value;
        return {std::move(bound), std::move(oracle), slack, slack >= -kSlackTolerance};
    }
};

struct BoundReport {
    long long order = 0;
    std::optional<long long> size;
    std::vector<NamedValue> values;
    std::vector<Comparison> comparisons;

    bool all_hold() const {
        for (const auto& c : comparisons)
            if (!c.holds) return false;
        return true;
    }

    std::string to_text() const {
        std::string out = "order = " + std::to_string(order) + "\n";
        if (size) out += "size = " + std::to_string(*size) + "\n";
        for (const auto& v : values) {
            out += v.name + ".log_value = " + (v.log_value ? format_number(*v.log_value) : "none") + "\n";
            out += v.name + ".value_or_inf = " + format_number(v.value_or_inf) + "\n";
            out += v.name + ".formula = " + v.formula + "\n";
        }
        for (const auto& c : comparisons) {
            const std::string key = "check." + c.bound + ".vs." + c.oracle;
            out += key + ".slack = " + format_number(c.slack) + "\n";
            out += key + ".holds = " + (c.holds ? "true" : "false") + "\n";
        }
        return out;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["order"] = order;
        j["size"] = size ? nlohmann::json(*size) : nlohmann::json(nullptr);
        j["values"] = nlohmann::json::array();
        for (const auto& v : values) {
            nlohmann::json item;
            item["name"] = v.name;
            item["log_value"] = v.log_value ? nlohmann::json(*v.log_value) : nlohmann::json(nullptr);
            item["value_or_inf"] = std::isinf(v.value_or_inf) ? nlohmann::json("inf") : nlohmann::json(v.value_or_inf);
            item["formula"] = v.formula;
            j["values"].push_back(item);
        }
        j["comparisons"] = nlohmann::json::array();
        for (const auto& c : comparisons)
            j["comparisons"].push_back({{"bound", c.bound}, {"oracle", c.oracle}, {"slack", c.slack}, {"holds", c.holds}});
        return j;
    }
};

namespace formulas {
inline constexpr const char* kWallis = "E|C| = n^2 (1 - (2n-2)!!/(2n-1)!!)";
inline constexpr const char* kCriticalUpper = "scs(L) < n^2 - n sqrt(n pi)/2";
inline constexpr const char* kPlsCount =
    "#PLS(n,k) <= C(n^2,k) n!^(2n-k/n) e^(n(3+ln(2 pi n)^2/4)) / ((n-k/n)!^(2n) e^k)";
inline constexpr const char* kVdw = "L(n) >= (n!)^(2n) / n^(n^2)";
inline constexpr const char* kGapRoot = "root c* of c^(3c) n^c = e^(3c) e^(ln(2 pi n)^2/n)";
inline constexpr const char* kKLower = "max scs(L) >= n^2 (1 - c*)";
inline constexpr const char* kAsymptotic = "n^2 - e n^(5/3)";
inline constexpr const char* kLcsReference =
    "lcs(n) >= n^2(1-(2+ln2)/ln n) + n(1+(2 ln2+ln 2pi)/ln n) - ln2/ln n";
}  // namespace formulas

/// Evaluates every bound at order n (and size k when given). Exact oracles are
/// added as comparisons where they are cheap: L(n) for n <= 4 and the
/// partial Latin square count for n <= 3.
inline BoundReport make_bound_report(long long n, std::optional<long long> k = std::nullopt) {
    if (n < 1) throw DomainError("order must be positive");
    if (k && (*k < 0 || *k > n * n)) throw DomainError("size k must lie in [0, n^2]");
    BoundReport report;
    report.order = n;
    report.size = k;
    const double x = static_cast<double>(n);

    const double expected = wallis_expected_size(n);
    const double upper = critical_set_upper_bound(n);
    report.values.push_back(NamedValue::from_plain("wallis_expected_size", expected, formulas::kWallis));
    report.values.push_back(NamedValue::from_plain("critical_set_upper_bound", upper, formulas::kCriticalUpper));
    report.comparisons.push_back(Comparison::make("critical_set_upper_bound", upper, "wallis_expected_size", expected));

    if (k) {
        const double bound = pls_count_bound(n, *k);
        report.values.push_back(NamedValue::from_log("pls_count_bound", bound, formulas::kPlsCount));
        if (n <= 3) {
            const double exact = log_of(count_pls_by_size(static_cast<int>(n), static_cast<int>(*k)));
            report.values.push_back(NamedValue::from_log("pls_count_exact", exact, "exhaustive enumeration"));
            report.comparisons.push_back(Comparison::make("pls_count_bound", bound, "pls_count_exact", exact));
        }
    }

    const double vdw = vdw_log_count_lower(n);
    report.values.push_back(NamedValue::from_log("vdw_log_count_lower", vdw, formulas::kVdw));
    if (n <= 4) {
        const double exact = log_of(count_latin_squares(static_cast<int>(n)));
        report.values.push_back(NamedValue::from_log("latin_square_count", exact, "exhaustive enumeration"));
        report.comparisons.push_back(Comparison::make("latin_square_count", exact, "vdw_log_count_lower", vdw));
    }

    if (n >= 2) {
        const auto sol = solve_lower_bound(x);
        report.values.push_back(NamedValue::from_plain("lower_bound_c", sol.c, formulas::kGapRoot));
        report.values.push_back(NamedValue::from_plain("lower_bound_c_times_cbrt_n", sol.c * std::cbrt(x),
                                                       "c* n^(1/3), tends to e"));
        report.values.push_back(NamedValue::from_plain("lower_bound_gap", sol.gap, "gap at c*"));
        report.values.push_back(NamedValue::from_plain("lower_bound_bracketed", sol.bracketed ? 1.0 : 0.0,
                                                       "1 if c* is a bracketed root"));
        report.values.push_back(NamedValue::from_plain("lower_bound_k", sol.k_lower, formulas::kKLower));
        report.values.push_back(NamedValue::from_plain("asymptotic_lower", scs_asymptotic_lower(x), formulas::kAsymptotic));
        report.values.push_back(NamedValue::from_plain("lcs_reference_lower_bound", lcs_reference_lower_bound(x),
                                                       formulas::kLcsReference));
        report.comparisons.push_back(Comparison::make("critical_set_upper_bound", upper, "lower_bound_k", sol.k_lower));
    }
    return report;
}

}  // namespace latincs
