// latincs: command-line front end for critical-set construction, checking,
// partial Latin square census, permanents and bound reports.
//
// Exit codes: 0 success, 2 usage, 3 I/O, 4 semantic input error, 5 budget/guard.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "latincs/bounds.hpp"
#include "latincs/census.hpp"
#include "latincs/completion.hpp"
#include "latincs/construct.hpp"
#include "latincs/permanent.hpp"
#include "latincs/report.hpp"

namespace {

using namespace latincs;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitInput = 4;
constexpr int kExitBudget = 5;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input file content that parses but is semantically wrong for the command.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    long long n = 0;
    std::optional<long long> k;
    std::uint64_t seed = 0;
    bool entropy = false;
    std::size_t trials = 1000;
    std::string family = "random";
    bool minimize = false;
    std::string variant = "prefix";
    std::string removal = "reverse-birth";
    std::uint64_t cap = 2;
    std::uint64_t budget = kDefaultNodeBudget;
    unsigned threads = 0;
    std::string in;
    std::string out;
    std::string format = "text";
};

std::string read_file(const std::string& path) {
    if (path.empty()) throw IoError("--in is required");
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

/// Writes to --out, or stdout when no path is given.
void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f || !(f << text)) throw IoError("cannot write '" + path + "'");
}

std::uint64_t resolve_seed(const RunConfig& cfg) {
    if (!cfg.entropy) return cfg.seed;
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

json guards_json() {
    return {{"max_order", kMaxOrder},
            {"scs_max_order", kScsMaxOrder},
            {"shape_count_max_order", kShapeCountMaxOrder},
            {"latin_count_max_order", kLatinCountMaxOrder},
            {"permanent_max_cols", kPermanentMaxCols},
            {"default_node_budget", kDefaultNodeBudget}};
}

json document(const std::string& command) {
    return {{"tool", "latincs"}, {"command", command}, {"guards", guards_json()}};
}

void emit(const RunConfig& cfg, const json& doc, const std::string& text) {
    if (cfg.format == "json") std::cout << doc.dump(2) << "\n";
    else std::cout << text;
}

std::string kv(const std::string& key, const std::string& value) { return key + " = " + value + "\n"; }

LatinSquare read_full_square(const std::string& path) {
    auto pls = parse_square_text(read_file(path));
    if (!pls.full()) throw InputError("input is not a complete Latin square");
    return LatinSquare(std::move(pls));
}

// ---------------------------------------------------------------------------

int cmd_gen(const RunConfig& cfg) {
    if (cfg.n < 1 || cfg.n > kMaxOrder) throw CLI::ValidationError("--n", "order must lie in [1, 64]");
    const std::uint64_t seed = resolve_seed(cfg);
    const int n = static_cast<int>(cfg.n);
    const LatinSquare sq = cfg.family == "cyclic" ? cyclic_latin_square(n) : random_latin_square(n, seed);
    const std::string text = serialize_square_text(sq);
    if (cfg.out.empty() && cfg.format != "json") {
        std::cout << text;
        return kExitOk;
    }
    if (!cfg.out.empty()) write_output(cfg.out, text);
    json doc = document("gen");
    doc["n"] = n;
    doc["seed"] = seed;
    doc["family"] = cfg.family;
    doc["square"] = text;
    emit(cfg, doc, kv("n", std::to_string(n)) + kv("seed", std::to_string(seed)) + kv("family", cfg.family));
    return kExitOk;
}

int cmd_construct(const RunConfig& cfg) {
    const LatinSquare sq = read_full_square(cfg.in);
    const std::uint64_t seed = resolve_seed(cfg);
    const auto reference = cfg.variant == "accumulated" ? ForcingReference::accumulated : ForcingReference::prefix;
    const BirthOrder order = random_birth_order(sq, seed);
    const PartialLatinSquare uc = birth_time_construct(sq, order, reference);
    const bool replay_ok = reference == ForcingReference::prefix && certify_by_replay(sq, order, uc);

    PartialLatinSquare result = uc;
    if (cfg.minimize) {
        const auto removal = cfg.removal == "shuffle" ? shuffled_removal_order(uc, Rng::substream(seed, 1).next())
                                                      : order.reversed();
        result = minimize_to_critical(uc, sq, removal);
    }
    write_output(cfg.out, serialize_square_text(result));

    json doc = document("construct");
    doc["seed"] = seed;
    doc["n"] = sq.order();
    doc["variant"] = cfg.variant;
    doc["uc_size"] = uc.size();
    doc["replay_certified"] = replay_ok;
    doc["minimized"] = cfg.minimize;
    doc["output_size"] = result.size();
    doc["bound"] = critical_set_upper_bound(sq.order());
    std::string text = kv("seed", std::to_string(seed)) + kv("n", std::to_string(sq.order())) +
                       kv("variant", cfg.variant) + kv("uc_size", std::to_string(uc.size())) +
                       kv("replay_certified", replay_ok ? "true" : "false");
    if (cfg.minimize) text += kv("critical_size", std::to_string(result.size()));
    text += kv("critical_set_upper_bound", format_number(critical_set_upper_bound(sq.order())));
    // With no --out the set itself went to stdout; keep the summary off it.
    if (cfg.out.empty() && cfg.format != "json") std::cerr << text;
    else emit(cfg, doc, text);
    return kExitOk;
}

int cmd_check(const RunConfig& cfg) {
    const auto pls = parse_square_text(read_file(cfg.in));
    const std::uint64_t cap = std::max<std::uint64_t>(cfg.cap, 2);
    const CompletionCount count = count_completions(pls, cap);
    std::string verdict;
    if (count.count == 0) verdict = "non-completable";
    else if (count.count >= 2) verdict = "not-uniquely-completable";
    else verdict = is_critical(pls) ? "critical" : "uniquely-completable-not-minimal";
    const std::string shown =
        count.capped ? (cap == 2 ? std::string(">=2") : ">=" + std::to_string(count.count)) : std::to_string(count.count);

    json doc = document("check");
    doc["n"] = pls.order();
    doc["size"] = pls.size();
    doc["completions"] = shown;
    doc["cap"] = cap;
    doc["verdict"] = verdict;
    emit(cfg, doc,
         kv("n", std::to_string(pls.order())) + kv("size", std::to_string(pls.size())) + kv("completions", shown) +
             kv("verdict", verdict));
    return kExitOk;
}

int cmd_montecarlo(const RunConfig& cfg) {
    if (cfg.n < 1 || cfg.n > kMaxOrder) throw CLI::ValidationError("--n", "order must lie in [1, 64]");
    if (cfg.trials < 1) throw CLI::ValidationError("--trials", "must be at least 1");
    const std::uint64_t seed = resolve_seed(cfg);
    const int n = static_cast<int>(cfg.n);
    const LatinSquare sq = cfg.family == "cyclic" ? cyclic_latin_square(n) : random_latin_square(n, seed);
    const auto reference = cfg.variant == "accumulated" ? ForcingReference::accumulated : ForcingReference::prefix;
    const TrialStats stats = sample_uc_sizes(sq, cfg.trials, seed, cfg.threads, reference);
    const double expected = wallis_expected_size(n);
    const double bound = critical_set_upper_bound(n);
    const double diff = stats.mean - expected;
    const double z = stats.stderr_mean > 0 ? diff / stats.stderr_mean : (std::abs(diff) < 1e-12 ? 0.0 : INFINITY);
    const bool min_below = stats.min <= bound;

    json doc = document("montecarlo");
    doc["n"] = n;
    doc["seed"] = seed;
    doc["family"] = cfg.family;
    doc["variant"] = cfg.variant;
    doc["trials"] = stats.trials;
    doc["mean"] = stats.mean;
    doc["stddev"] = stats.stddev;
    doc["stderr"] = stats.stderr_mean;
    doc["min"] = stats.min;
    doc["max"] = stats.max;
    doc["wallis_expected_size"] = expected;
    doc["critical_set_upper_bound"] = bound;
    doc["z_score"] = std::isinf(z) ? json("inf") : json(z);
    doc["min_below_bound"] = min_below;
    emit(cfg, doc,
         kv("n", std::to_string(n)) + kv("seed", std::to_string(seed)) + kv("family", cfg.family) +
             kv("variant", cfg.variant) + kv("trials", std::to_string(stats.trials)) +
             kv("mean", format_number(stats.mean)) + kv("stddev", format_number(stats.stddev)) +
             kv("stderr", format_number(stats.stderr_mean)) + kv("min", std::to_string(stats.min)) +
             kv("max", std::to_string(stats.max)) + kv("wallis_expected_size", format_number(expected)) +
             kv("critical_set_upper_bound", format_number(bound)) + kv("z_score", format_number(z)) +
             kv("min_below_bound", min_below ? "true" : "false"));
    return kExitOk;
}

int cmd_census(const RunConfig& cfg) {
    if (cfg.n < 1 || cfg.n > kMaxOrder) throw CLI::ValidationError("--n", "order must lie in [1, 64]");
    const int n = static_cast<int>(cfg.n);
    const CensusTable table = census_table(n, cfg.budget, cfg.threads);
    const std::string csv = census_to_csv(table);
    if (!cfg.out.empty()) write_output(cfg.out, csv);

    json doc = document("census");
    doc["n"] = n;
    doc["budget"] = cfg.budget;
    doc["rows"] = json::array();
    std::string text = cfg.out.empty() ? csv + "\n" : "";
    text += "k,log_count,log_bound,slack,verdict\n";
    bool all_hold = true;
    for (int k = 0; k <= n * n; ++k) {
        const double exact = log_of(table.counts[k]);
        const double bound = pls_count_bound(n, k);
        const auto cmp = Comparison::make("pls_count_bound", bound, "count", exact);
        all_hold = all_hold && cmp.holds;
        const std::string verdict = cmp.holds ? "holds" : "violated";
        text += std::to_string(k) + "," + format_number(exact) + "," + format_number(bound) + "," +
                format_number(cmp.slack) + "," + verdict + "\n";
        doc["rows"].push_back({{"k", k},
                               {"count", table.counts[k].str()},
                               {"log_count", exact},
                               {"log_bound", bound},
                               {"slack", cmp.slack},
                               {"verdict", verdict}});
    }
    doc["all_hold"] = all_hold;
    emit(cfg, doc, text);
    return kExitOk;
}

int cmd_permanent(const RunConfig& cfg) {
    const BinaryMatrix a = parse_matrix_text(read_file(cfg.in));
    const BigInt per = permanent_exact(a);
    json doc = document("permanent");
    doc["rows"] = a.rows();
    doc["cols"] = a.cols();
    doc["permanent"] = per.str();
    std::string text = kv("rows", std::to_string(a.rows())) + kv("cols", std::to_string(a.cols())) +
                       kv("permanent", per.str());
    bool zero_row = false;
    for (int i = 0; i < a.rows(); ++i) zero_row = zero_row || a.row_ones(i) == 0;
    if (zero_row) {
        doc["verdict"] = "zero-row";
        text += kv("verdict", "zero-row");
    } else {
        const double bound = bregman_rect_bound(a);
        const auto cmp = Comparison::make("bregman_rect_bound", bound, "permanent", log_of(per));
        const double plain = bound > 709.0 ? INFINITY : std::exp(bound);
        doc["log_bound"] = bound;
        doc["bound"] = std::isinf(plain) ? json("inf") : json(plain);
        doc["slack"] = cmp.slack;
        doc["verdict"] = cmp.holds ? "holds" : "violated";
        text += kv("log_bound", format_number(bound)) + kv("bound", format_number(plain)) +
                kv("slack", format_number(cmp.slack)) + kv("verdict", cmp.holds ? "holds" : "violated");
    }
    emit(cfg, doc, text);
    return kExitOk;
}

int cmd_bounds(const RunConfig& cfg) {
    if (cfg.n < 1) throw CLI::ValidationError("--n", "order must be positive");
    const BoundReport report = make_bound_report(cfg.n, cfg.k);
    json doc = document("bounds");
    doc["report"] = report.to_json();
    emit(cfg, doc, report.to_text());
    return kExitOk;
}

int cmd_scs(const RunConfig& cfg) {
    const LatinSquare sq = read_full_square(cfg.in);
    const auto result = scs_exhaustive(sq);
    json doc = document("scs");
    doc["n"] = sq.order();
    doc["scs"] = result.size;
    doc["witness"] = serialize_square_text(result.witness);
    emit(cfg, doc, kv("n", std::to_string(sq.order())) + kv("scs", std::to_string(result.size)) + "witness:\n" +
                       serialize_square_text(result.witness));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Critical sets in Latin squares: construction, checking, census and bounds"};
    app.require_subcommand(1);
    RunConfig cfg;

    const auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    };
    const auto add_seed = [&](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "64-bit seed (default 0)");
        sub->add_flag("--entropy", cfg.entropy, "Draw the seed from the OS entropy source");
    };
    const auto add_family = [&](CLI::App* sub) {
        sub->add_option("--family", cfg.family, "Square family")->check(CLI::IsMember({"random", "cyclic"}));
    };
    const auto add_variant = [&](CLI::App* sub) {
        sub->add_option("--variant", cfg.variant, "Forcing reference set")
            ->check(CLI::IsMember({"prefix", "accumulated"}));
    };

    auto* gen = app.add_subcommand("gen", "Write a Latin square");
    gen->add_option("--n", cfg.n, "Order")->required();
    add_seed(gen);
    add_family(gen);
    gen->add_option("--out", cfg.out, "Output path (default stdout)");
    add_format(gen);

    auto* construct = app.add_subcommand("construct", "Birth-time construction of a uniquely completable set");
    construct->add_option("--in", cfg.in, "Latin square file")->required();
    add_seed(construct);
    construct->add_flag("--minimize", cfg.minimize, "Minimize to a critical set");
    add_variant(construct);
    construct->add_option("--removal", cfg.removal, "Minimization order")
        ->check(CLI::IsMember({"reverse-birth", "shuffle"}));
    construct->add_option("--out", cfg.out, "Output path (default stdout)");
    add_format(construct);

    auto* check = app.add_subcommand("check", "Classify a partial Latin square");
    check->add_option("--in", cfg.in, "Partial Latin square file")->required();
    check->add_option("--cap", cfg.cap, "Completion count cap (>= 2)");
    add_format(check);

    auto* montecarlo = app.add_subcommand("montecarlo", "Sample construction sizes");
    montecarlo->add_option("--n", cfg.n, "Order")->required();
    montecarlo->add_option("--trials", cfg.trials, "Number of trials");
    add_seed(montecarlo);
    add_family(montecarlo);
    add_variant(montecarlo);
    montecarlo->add_option("--threads", cfg.threads, "Worker threads (0 = hardware)");
    add_format(montecarlo);

    auto* census = app.add_subcommand("census", "Exact partial Latin square counts by size");
    census->add_option("--n", cfg.n, "Order")->required();
    census->add_option("--budget", cfg.budget, "Node budget");
    census->add_option("--threads", cfg.threads, "Worker threads (0 = hardware)");
    census->add_option("--out", cfg.out, "CSV output path");
    add_format(census);

    auto* permanent = app.add_subcommand("permanent", "Exact permanent and rectangular Bregman bound");
    permanent->add_option("--in", cfg.in, "Matrix file")->required();
    add_format(permanent);

    auto* bounds = app.add_subcommand("bounds", "Evaluate every bound at order n");
    bounds->add_option("--n", cfg.n, "Order")->required();
    bounds->add_option("--k", cfg.k, "Partial Latin square size");
    add_format(bounds);

    auto* scs = app.add_subcommand("scs", "Exact smallest critical set (order <= 4)");
    scs->add_option("--in", cfg.in, "Latin square file")->required();
    add_format(scs);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*gen) return cmd_gen(cfg);
        if (*construct) return cmd_construct(cfg);
        if (*check) return cmd_check(cfg);
        if (*montecarlo) return cmd_montecarlo(cfg);
        if (*census) return cmd_census(cfg);
        if (*permanent) return cmd_permanent(cfg);
        if (*bounds) return cmd_bounds(cfg);
        if (*scs) return cmd_scs(cfg);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const latincs::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitUsage;
}
