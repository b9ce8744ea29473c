// hadord: enumerate Hadamard-order construction families, compute rule
// closures over bit-indexed order sets, emit density curves and bound
// comparisons as CSV, and run the self-verification suites.
//
// Exit codes: 0 success, 1 usage error, 2 resource limit, 3 verification
// failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hadord/analysis.hpp"
#include "hadord/arith.hpp"
#include "hadord/cache.hpp"
#include "hadord/closure.hpp"
#include "hadord/common.hpp"
#include "hadord/curves.hpp"
#include "hadord/generators.hpp"
#include "hadord/selftest.hpp"

namespace {

using namespace hadord;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitResource = 2;
constexpr int kExitVerify = 3;

// Accepts plain integers and the "2^k" shorthand.
u64 parse_limit(const std::string& text) {
    if (text.rfind("2^", 0) == 0) {
        unsigned k = unsigned(std::stoul(text.substr(2)));
        if (k > 40) throw CLI::ValidationError("--limit", "2^k supports k <= 40");
        return u64(1) << k;
    }
    return std::stoull(text);
}

FamilyId parse_family_name(const std::string& name) {
    if (name == "paley" || name == "paley_pure") return FamilyId::paley_pure;
    if (name == "paley_doubled") return FamilyId::paley_doubled;
    if (name == "c1") return FamilyId::c1_small_orders;
    if (name == "c2") return FamilyId::c2_exponent;
    if (name == "c3") return FamilyId::c3_binary_digits;
    if (name == "c4") return FamilyId::c4_four_q_squared;
    if (name == "c5") return FamilyId::c5_four_q_fourth;
    if (name == "c6") return FamilyId::c6_twin_prime_power_square;
    if (name == "c7") return FamilyId::c7_cocyclic;
    if (name == "table") return FamilyId::external_table;
    throw CLI::ValidationError(
        "--families",
        "unknown family '" + name +
            "' (expected paley, paley_doubled, c1..c7, or table)");
}

ClosureRules parse_rules(const std::vector<std::string>& names) {
    ClosureRules rules;
    for (const std::string& name : names) {
        if (name == "kron") rules.kronecker = true;
        else if (name == "r2") rules.r2 = true;
        else if (name == "r4") rules.r4 = true;
        else
            throw CLI::ValidationError("--rules", "unknown rule '" + name +
                                                      "' (kron, r2, r4)");
    }
    rules.validate();
    return rules;
}

std::string rules_text(ClosureRules rules) {
    std::string out;
    if (rules.kronecker) out += "kron,";
    if (rules.r2) out += "r2,";
    if (rules.r4) out += "r4,";
    if (!out.empty()) out.pop_back();
    return out;
}

struct OrderPool {
    std::vector<u64> orders;
    std::string family_names; // canonical, for the config hash
};

OrderPool build_order_pool(const std::vector<std::string>& family_names,
                           u64 limit, const KnownOrdersTable* table,
                           u64 memory_budget) {
    if (family_names.empty())
        throw CLI::ValidationError("--families", "at least one family required");
    std::vector<GeneratorFamily> families;
    std::string canonical;
    for (const std::string& name : family_names) {
        FamilyId id = parse_family_name(name);
        const KnownOrdersTable* attach = nullptr;
        if (id == FamilyId::external_table || id == FamilyId::c1_small_orders)
            attach = table;
        if (id == FamilyId::external_table && !table)
            throw CLI::ValidationError("--families",
                                       "family 'table' requires --table");
        families.push_back({id, attach});
        canonical += name + ",";
    }
    u64 prime_limit = 2;
    for (const GeneratorFamily& f : families)
        prime_limit = std::max(prime_limit, required_prime_limit(f.id, limit));
    PrimeTable primes =
        sieve_primes(prime_limit, std::size_t(1) << 20, memory_budget);
    OrderPool pool;
    pool.orders = merged_family_orders(families, limit, primes);
    pool.family_names = canonical;
    return pool;
}

std::optional<KnownOrdersTable> maybe_load_table(const std::string& path) {
    if (path.empty()) return std::nullopt;
    return ingest_known_orders(path);
}

// Output stream selection: path or stdout.
class OutStream {
public:
    explicit OutStream(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_)
                throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& get() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

// ---------------------------------------------------------------------
// orders
// ---------------------------------------------------------------------

struct OrdersArgs {
    std::string limit_text = "2^26";
    std::vector<std::string> families;
    std::string table_path;
    std::string out_path;
    u64 mem_budget = kDefaultMemoryBudget;
};

int run_orders(const OrdersArgs& args) {
    u64 limit = parse_limit(args.limit_text);
    if (limit < 4) throw CLI::ValidationError("--limit", "must be >= 4");
    auto table = maybe_load_table(args.table_path);
    OrderPool pool = build_order_pool(args.families, limit,
                                      table ? &*table : nullptr, args.mem_budget);
    OutStream out(args.out_path);
    for (u64 v : pool.orders) out.get() << v << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------
// closure
// ---------------------------------------------------------------------

struct ClosureArgs {
    std::string limit_text = "2^26";
    std::vector<std::string> families = {"paley"};
    std::vector<std::string> rules = {"kron", "r2", "r4"};
    std::string table_path;
    std::string cache_path;
    bool force = false;
    u64 mem_budget = kDefaultMemoryBudget;
    unsigned threads = 1;
};

u64 closure_config_hash(u64 limit, const std::string& families,
                        ClosureRules rules, const std::string& table_path) {
    std::ostringstream key;
    key << "limit=" << limit << ";families=" << families
        << ";rules=" << rules_text(rules) << ";table=";
    if (!table_path.empty()) {
        std::ifstream in(table_path, std::ios::binary);
        std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
        key << fnv1a64(bytes);
    } else {
        key << '-';
    }
    return fnv1a64(key.str());
}

int run_closure(const ClosureArgs& args) {
    u64 limit = parse_limit(args.limit_text);
    if (limit < 4) throw CLI::ValidationError("--limit", "must be >= 4");
    if (args.cache_path.empty())
        throw CLI::ValidationError("--cache", "closure requires a cache path");
    ClosureRules rules = parse_rules(args.rules);
    auto table = maybe_load_table(args.table_path);
    std::string canonical;
    for (const std::string& name : args.families) canonical += name + ",";
    u64 config_hash = closure_config_hash(limit, canonical, rules, args.table_path);

    if (!args.force && std::filesystem::exists(args.cache_path)) {
        LoadedOrderSet loaded = load_order_set(args.cache_path, args.mem_budget);
        if (loaded.config_hash != config_hash || loaded.rules_byte != rules.byte())
            throw cache_error("cache config mismatch: " + args.cache_path +
                              " was built with a different configuration "
                              "(use --force to rebuild)");
        u64 members = loaded.set.popcount();
        std::cout << "cache hit: " << args.cache_path << " limit=" << limit
                  << " members=" << members << " members_from4="
                  << count_in_range(loaded.set, std::min<u64>(4, limit), limit)
                  << '\n';
        return kExitOk;
    }

    OrderPool pool = build_order_pool(args.families, limit,
                                      table ? &*table : nullptr, args.mem_budget);
    OrderSet set = rule_closure(pool.orders, limit, rules, args.mem_budget);
    save_order_set(set, args.cache_path, rules, config_hash);
    u64 from4 = count_in_range(set, std::min<u64>(4, limit), limit);
    std::cout << "closure written: " << args.cache_path << " limit=" << limit
              << " members=" << set.popcount() << " members_from4=" << from4
              << " density_from4=" << format_fixed6(double(from4) / double(limit))
              << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------------
// figure1
// ---------------------------------------------------------------------

struct Figure1Args {
    std::string limit_text = "2^26";
    std::vector<double> samples;
    std::string table_path;
    std::string out_path;
    u64 mem_budget = kDefaultMemoryBudget;
    unsigned threads = 1;
};

int run_figure1(const Figure1Args& args) {
    FigureConfig config;
    config.limit = parse_limit(args.limit_text);
    if (config.limit < 64)
        throw CLI::ValidationError("--limit", "figure1 needs limit >= 2^6");
    config.samples_log2 = args.samples;
    auto table = maybe_load_table(args.table_path);
    config.table = table ? &*table : nullptr;
    config.memory_budget = args.mem_budget;
    FigureResult figure = build_figure(config);
    OutStream out(args.out_path);
    write_figure_csv(out.get(), figure);
    return kExitOk;
}

// ---------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------

struct BoundsArgs {
    std::string limit_text = "2^20";
    std::vector<double> samples;
    std::vector<std::string> families = {"paley"};
    std::vector<std::string> rules = {"kron", "r2", "r4"};
    std::string table_path;
    std::string out_path;
    std::string mode = "from4";
    double epsilon = 0.0;
    double o1 = 0.0;
    u64 mem_budget = kDefaultMemoryBudget;
};

int run_bounds(const BoundsArgs& args) {
    u64 limit = parse_limit(args.limit_text);
    if (limit < 4) throw CLI::ValidationError("--limit", "must be >= 4");
    ClosureRules rules = parse_rules(args.rules);
    auto table = maybe_load_table(args.table_path);
    OrderPool pool = build_order_pool(args.families, limit,
                                      table ? &*table : nullptr, args.mem_budget);
    OrderSet set = rule_closure(pool.orders, limit, rules, args.mem_budget);

    std::vector<double> samples = args.samples;
    if (samples.empty())
        for (u32 k = 4; (u64(1) << k) <= limit; ++k) samples.push_back(k);
    std::vector<u64> xs;
    for (double s : samples) {
        u64 x = u64(std::llround(std::exp2(s)));
        if (x < 2 || x > limit)
            throw CLI::ValidationError("--samples",
                                       "sample outside [1, log2(limit)]");
        xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());

    if (args.mode != "from4" && args.mode != "all")
        throw CLI::ValidationError("--mode", "expected from4 or all");
    bool from4 = args.mode == "from4";
    BoundParams params;
    params.epsilon = args.epsilon;
    params.o1 = args.o1;
    OutStream out(args.out_path);
    std::ostream& os = out.get();
    os << "# empirical counts vs asymptotic lower-bound formulas\n"
       << "# families=" << pool.family_names << " rules=" << rules_text(rules)
       << " epsilon=" << format_fixed6(params.epsilon)
       << " o1=" << format_fixed6(params.o1) << " mode=" << args.mode << "\n"
       << "# empty cells: x below the formula's domain threshold\n";
    os << "x,count,density,paley_simple,paley_doubled,main_bound,ford_v\n";
    for (u64 x : xs) {
        u64 count = from4 ? (x >= 4 ? count_in_range(set, 4, x) : 0)
                          : counting_function(set, x);
        os << x << ',' << count << ','
           << format_fixed6(double(count) / double(x)) << ','
           << format_fixed6(paley_bound(double(x), PaleyBoundVariant::simple))
           << ','
           << format_fixed6(paley_bound(double(x), PaleyBoundVariant::doubled))
           << ',';
        try {
            os << format_fixed6(main_bound(double(x), params));
        } catch (const std::domain_error&) {
        }
        os << ',';
        try {
            os << format_fixed6(ford_v_estimate(double(x), params));
        } catch (const std::domain_error&) {
        }
        os << '\n';
    }
    return kExitOk;
}

// ---------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------

struct VerifyArgs {
    std::vector<std::string> suites = {"closure_oracle", "eq9", "lemma9",
                                       "exp_dom", "partition"};
    u64 seed = 42;
    bool self_test_negative = false;
    std::string out_path;
};

int run_verify(const VerifyArgs& args) {
    std::vector<SuiteResult> results;
    for (const std::string& name : args.suites) {
        if (name == "closure_oracle")
            results.push_back(
                run_closure_oracle_suite(args.seed, 100, args.self_test_negative));
        else if (name == "eq9")
            results.push_back(run_eq9_suite(args.seed));
        else if (name == "lemma9")
            results.push_back(run_lemma9_suite(args.seed));
        else if (name == "exp_dom")
            results.push_back(run_exp_domination_suite(args.seed));
        else if (name == "partition")
            results.push_back(run_partition_suite());
        else
            throw CLI::ValidationError(
                "--suites", "unknown suite '" + name +
                                "' (closure_oracle, eq9, lemma9, exp_dom, "
                                "partition)");
    }
    OutStream out(args.out_path);
    std::ostream& os = out.get();
    int total_failures = 0;
    os << "suite,cases,failures\n";
    for (const SuiteResult& r : results) {
        os << r.name << ',' << r.cases << ',' << r.failures << '\n';
        total_failures += r.failures;
        for (const std::string& m : r.messages)
            std::cerr << r.name << ": " << m << '\n';
    }
    os << "result," << (total_failures == 0 ? "pass" : "fail") << ",\n";
    return total_failures == 0 ? kExitOk : kExitVerify;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "hadord: Hadamard order constructions, product-rule closures, and "
        "density curves"};
    app.require_subcommand(1);

    OrdersArgs orders_args;
    CLI::App* orders = app.add_subcommand(
        "orders", "emit merged construction-family orders, one per line");
    orders->add_option("--limit", orders_args.limit_text,
                       "order limit (accepts 2^k)");
    orders->add_option("--families", orders_args.families,
                       "paley, paley_doubled, c1..c7, table")
        ->delimiter(',')
        ->required();
    orders->add_option("--table", orders_args.table_path,
                       "known-orders table file");
    orders->add_option("--out", orders_args.out_path, "output path (default stdout)");
    orders->add_option("--mem-budget", orders_args.mem_budget, "bytes");

    ClosureArgs closure_args;
    CLI::App* closure = app.add_subcommand(
        "closure", "compute a rule closure and persist the bitmap cache");
    closure->add_option("--limit", closure_args.limit_text, "order limit");
    closure->add_option("--families", closure_args.families, "generator families")
        ->delimiter(',');
    closure->add_option("--rules", closure_args.rules, "kron, r2, r4")
        ->delimiter(',');
    closure->add_option("--table", closure_args.table_path, "known-orders table");
    closure->add_option("--cache", closure_args.cache_path, "cache file path")
        ->required();
    closure->add_flag("--force", closure_args.force, "recompute even on cache hit");
    closure->add_option("--mem-budget", closure_args.mem_budget, "bytes");
    closure->add_option("--threads", closure_args.threads, "worker threads")
        ->check(CLI::Range(1u, 256u));

    Figure1Args figure_args;
    CLI::App* figure1 = app.add_subcommand(
        "figure1", "emit the three density curves with reference deltas as CSV");
    figure1->add_option("--limit", figure_args.limit_text, "order limit (>= 2^6)");
    figure1->add_option("--samples", figure_args.samples,
                        "log2(x) sample points (default: unit grid)")
        ->delimiter(',');
    figure1->add_option("--table", figure_args.table_path, "known-orders table");
    figure1->add_option("--out", figure_args.out_path, "output path");
    figure1->add_option("--mem-budget", figure_args.mem_budget, "bytes");
    figure1->add_option("--threads", figure_args.threads, "worker threads")
        ->check(CLI::Range(1u, 256u));

    BoundsArgs bounds_args;
    CLI::App* bounds = app.add_subcommand(
        "bounds", "compare empirical counts to the lower-bound formulas");
    bounds->add_option("--limit", bounds_args.limit_text, "order limit");
    bounds->add_option("--samples", bounds_args.samples, "log2(x) sample points")
        ->delimiter(',');
    bounds->add_option("--families", bounds_args.families, "generator families")
        ->delimiter(',');
    bounds->add_option("--rules", bounds_args.rules, "kron, r2, r4")
        ->delimiter(',');
    bounds->add_option("--table", bounds_args.table_path, "known-orders table");
    bounds->add_option("--out", bounds_args.out_path, "output path");
    bounds->add_option("--epsilon", bounds_args.epsilon,
                       "epsilon in the main bound exponent");
    bounds->add_option("--o1", bounds_args.o1, "O(1) stand-in in the V exponent");
    bounds->add_option("--mode", bounds_args.mode,
                       "density convention: from4 (count [4,x]) or all");
    bounds->add_option("--mem-budget", bounds_args.mem_budget, "bytes");

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand(
        "verify", "run the randomized property suites (exit 3 on failure)");
    verify->add_option("--suites", verify_args.suites,
                       "closure_oracle, eq9, lemma9, exp_dom, partition")
        ->delimiter(',');
    verify->add_option("--seed", verify_args.seed, "suite RNG seed");
    verify->add_flag("--self-test-negative", verify_args.self_test_negative,
                     "inject one flipped bit to prove failures are caught");
    verify->add_option("--out", verify_args.out_path, "summary output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (orders->parsed()) return run_orders(orders_args);
        if (closure->parsed()) return run_closure(closure_args);
        if (figure1->parsed()) return run_figure1(figure_args);
        if (bounds->parsed()) return run_bounds(bounds_args);
        if (verify->parsed()) return run_verify(verify_args);
    } catch (const resource_error& e) {
        std::cerr << "resource error: " << e.what() << '\n';
        return kExitResource;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const cache_error& e) {
        std::cerr << "cache error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
