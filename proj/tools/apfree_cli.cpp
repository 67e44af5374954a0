// apfree command-line tool.  Talks to the core exclusively through the
// public C API in apfree.h.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "apfree.h"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_diff = 1;
constexpr int exit_usage = 2;
constexpr int exit_not_admissible = 10;
constexpr int exit_undetermined = 11;

using json = nlohmann::json;

struct OwnedString {
    char* s = nullptr;
    ~OwnedString() { apf_string_free(s); }
    explicit operator bool() const { return s != nullptr; }
    std::string str() const { return s ? std::string(s) : std::string(); }
};

[[noreturn]] void die(const std::string& msg, int code = exit_usage) {
    std::cerr << "apfree: " << msg << '\n';
    std::exit(code);
}

void die_on(apf_status st, const std::string& what) {
    if (st != APF_OK)
        die(what + ": " + apf_last_error(),
            st == APF_ERR_INVALID_ARGUMENT || st == APF_ERR_PRECONDITION ? exit_usage : 1);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        die("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::pair<uint32_t, uint32_t> parse_range(const std::string& s) {
    const auto colon = s.find(':');
    try {
        if (colon == std::string::npos) {
            const uint32_t v = static_cast<uint32_t>(std::stoul(s));
            return {v, v};
        }
        const uint32_t a = static_cast<uint32_t>(std::stoul(s.substr(0, colon)));
        const uint32_t b = static_cast<uint32_t>(std::stoul(s.substr(colon + 1)));
        if (b < a)
            die("descending range '" + s + "'");
        return {a, b};
    } catch (const std::exception&) {
        die("bad range '" + s + "'");
    }
}

struct DigitSetArgs {
    std::string digits;
    std::string interval;
    std::string construct;
};

apf_digit_set* make_digit_set(uint32_t m, uint32_t k, const DigitSetArgs& args) {
    const int given = (!args.digits.empty()) + (!args.interval.empty()) +
                      (!args.construct.empty());
    if (given != 1)
        die("give exactly one of --digits, --interval, --construct");
    apf_digit_set* ds = nullptr;
    if (!args.construct.empty()) {
        die_on(apf_digit_set_construct(args.construct.c_str(), m, k, &ds),
               "construction failed");
    } else {
        const std::string spec = !args.digits.empty() ? args.digits : args.interval;
        die_on(apf_digit_set_parse(m, spec.c_str(), &ds), "bad digit set");
    }
    return ds;
}

std::string set_display(const apf_digit_set* ds) {
    OwnedString spec{apf_digit_set_spec(const_cast<apf_digit_set*>(ds))};
    return spec.str();
}

apf_search_options search_options(uint32_t jobs, double budget, const std::string& cache,
                                  bool composite) {
    apf_search_options opts;
    apf_search_options_init(&opts);
    opts.jobs = jobs;
    opts.budget_seconds = budget;
    opts.allow_composite = composite ? 1 : 0;
    static std::string cache_store;
    cache_store = cache;
    if (cache_store.empty()) {
        if (const char* env = std::getenv("APFREE_CACHE"))
            cache_store = env;
    }
    if (!cache_store.empty())
        opts.cache_path = cache_store.c_str();
    return opts;
}

int run_check(uint32_t m, uint32_t k, const DigitSetArgs& set_args,
              const std::string& method, const std::string& initial,
              const std::string& scheme, bool minimize, bool dump_matrix,
              bool dump_trace, const std::string& format, bool witness_mode,
              bool emit_vectors) {
    apf_check_options opts;
    apf_check_options_init(&opts);
    if (method == "auto")
        opts.method = APF_METHOD_AUTO;
    else if (method == "reduce")
        opts.method = APF_METHOD_REDUCE;
    else if (method == "lp")
        opts.method = APF_METHOD_LP;
    else
        die("bad --method '" + method + "'");

    std::string custom_text;
    if (initial == "A")
        opts.initial = APF_INITIAL_A;
    else if (initial == "rref")
        opts.initial = APF_INITIAL_RREF;
    else if (initial.rfind("custom:", 0) == 0) {
        custom_text = read_file(initial.substr(7));
        opts.initial = APF_INITIAL_CUSTOM;
        opts.custom_t = custom_text.c_str();
    } else if (!initial.empty()) {
        die("bad --initial '" + initial + "' (use A, rref or custom:FILE)");
    }
    opts.minimize_witness = minimize ? 1 : 0;
    opts.pair_scheme =
        scheme == "all" ? APF_SCHEME_ALL_PAIRS : APF_SCHEME_FIRST_TO_ALL;

    apf_digit_set* ds = make_digit_set(m, k, set_args);
    apf_check_result* result = nullptr;
    die_on(apf_check_run(ds, k, &opts, &result), "check failed");

    const int verdict = apf_check_verdict(result);
    OwnedString report{apf_check_report_json(result)};

    if (witness_mode) {
        if (verdict == APF_VERDICT_NOT_ADMISSIBLE) {
            OwnedString w{apf_check_witness_json(result, emit_vectors ? 1 : 0)};
            std::cout << w.str() << '\n';
        } else {
            std::cout << json{{"m", m},
                              {"k", k},
                              {"digits", json::parse(report.str())["digits"]},
                              {"verdict", "admissible"}}
                             .dump()
                      << '\n';
        }
    } else if (format == "json") {
        std::cout << report.str() << '\n';
    } else {
        const json j = json::parse(report.str());
        std::cout << "m=" << m << " k=" << k << " D={" << set_display(ds) << "}\n";
        std::cout << "verdict: " << j["verdict"].get<std::string>() << '\n';
        std::cout << "method:  " << j["method"].get<std::string>() << '\n';
        const json& cert = j["certificate"];
        if (cert.contains("outcome"))
            std::cout << "reduction: initial=" << cert["initial"].get<std::string>()
                      << " steps=" << cert["steps"] << " outcome="
                      << cert["outcome"].get<std::string>() << '\n';
        if (cert.contains("lp_optimum"))
            std::cout << "lp optimum: " << cert["lp_optimum"].get<std::string>() << '\n';
        if (cert.contains("rank"))
            std::cout << "rank(A): " << cert["rank"] << '\n';
        if (cert.contains("witness_weight")) {
            std::cout << "witness: weight " << cert["witness_weight"].get<std::string>()
                      << ", support " << cert["witness_support"] << ", expands into S(D,"
                      << cert["n"] << ")\n";
            OwnedString w{apf_check_witness_json(result, 0)};
            if (w)
                std::cout << w.str() << '\n';
        }
    }

    if (dump_matrix) {
        apf_status st = APF_OK;
        OwnedString text{apf_matrix_dump(ds, k, opts.pair_scheme, &st)};
        die_on(st, "matrix dump failed");
        std::cout << text.str();
    }
    if (dump_trace) {
        OwnedString trace{apf_check_trace_text(result)};
        if (trace)
            std::cout << trace.str();
        else
            std::cerr << "apfree: no reduction trace for this certificate\n";
    }

    apf_check_result_free(result);
    apf_digit_set_free(ds);
    switch (verdict) {
        case APF_VERDICT_ADMISSIBLE: return exit_ok;
        case APF_VERDICT_NOT_ADMISSIBLE: return exit_not_admissible;
        default: return exit_undetermined;
    }
}

void print_search_text(const json& r, bool show_count) {
    std::cout << "p=" << r["p"] << " k=" << r["k"]
              << (r["complete"].get<bool>() ? " max " : " max >= ") << r["max_size"]
              << '\n';
    if (show_count && !r["count_at_max"].is_null())
        std::cout << "count at max: " << r["count_at_max"] << '\n';
    if (!r["first_set"].is_null()) {
        std::cout << "first set: {";
        bool first = true;
        for (const auto& d : r["first_set"]) {
            if (!first)
                std::cout << ',';
            std::cout << d;
            first = false;
        }
        std::cout << "}\n";
    }
    const json& mb = r["method_breakdown"];
    std::cout << "verdicts: reduce-A " << mb["reduce-A"] << ", reduce-RREF "
              << mb["reduce-RREF"] << ", lp-trivial " << mb["lp-trivial"]
              << ", lp-witness " << mb["lp-witness"] << '\n';
    std::cout << "elapsed: " << r["elapsed_seconds"] << "s\n";
}

int run_search(uint32_t p, uint32_t k, uint32_t jobs, double budget, bool count,
               const std::string& cache, bool composite, const std::string& format) {
    const apf_search_options opts = search_options(jobs, budget, cache, composite);
    apf_search_report* report = nullptr;
    die_on(apf_search_run(p, k, &opts, &report), "search failed");
    OwnedString text{apf_search_report_json(report)};
    const json r = json::parse(text.str());
    if (format == "json") {
        std::cout << text.str() << '\n';
    } else if (format == "csv") {
        std::cout << "p,k,max_size,count,first_set\n";
        std::cout << r["p"] << ',' << r["k"] << ','
                  << (r["complete"].get<bool>() ? "" : ">=") << r["max_size"] << ',';
        if (!r["count_at_max"].is_null())
            std::cout << r["count_at_max"];
        std::cout << ',';
        if (!r["first_set"].is_null()) {
            bool first = true;
            std::cout << '"';
            for (const auto& d : r["first_set"]) {
                if (!first)
                    std::cout << ',';
                std::cout << d;
                first = false;
            }
            std::cout << '"';
        }
        std::cout << '\n';
    } else {
        print_search_text(r, count);
    }
    apf_search_report_free(report);
    return exit_ok;
}

int run_bound(uint32_t m, uint32_t k, uint64_t n, const std::string& format) {
    apf_status st = APF_OK;
    OwnedString text{format == "json" ? apf_bound_report_json(m, k, n, &st)
                                      : apf_bound_report_text(m, k, n, &st)};
    die_on(st, "bound report failed");
    std::cout << text.str();
    if (format == "json")
        std::cout << '\n';
    return exit_ok;
}

int run_table(const std::string& p_range, const std::string& k_range, bool diff,
              uint32_t jobs, double budget, const std::string& cache,
              const std::string& expected_path, const std::string& format) {
    const auto [plo, phi] = parse_range(p_range);
    const auto [klo, khi] = parse_range(k_range);
    const apf_search_options opts = search_options(jobs, budget, cache, false);
    const char* expected_csv = expected_path.empty() ? nullptr : expected_path.c_str();

    // expectations narrow the grid to rows the bundled data knows about
    apf_status st = APF_OK;
    OwnedString exp_text{apf_table_expectations_json(expected_csv, &st)};
    die_on(st, "cannot load expected table");
    std::map<std::pair<uint32_t, uint32_t>, json> expected;
    for (const auto& row : json::parse(exp_text.str()))
        expected[{row["p"].get<uint32_t>(), row["k"].get<uint32_t>()}] = row;

    std::map<std::pair<uint32_t, uint32_t>, std::string> cells;
    std::vector<std::string> diff_lines;
    json results = json::array();
    std::vector<uint32_t> ps, ks;

    for (uint32_t p = plo; p <= phi; ++p) {
        bool any = false;
        for (uint32_t k = klo; k <= khi; ++k) {
            if (!expected.count({p, k}))
                continue;
            any = true;
            if (std::find(ks.begin(), ks.end(), k) == ks.end())
                ks.push_back(k);

            if (diff) {
                apf_status vst = APF_OK;
                OwnedString vtext{apf_table_verify_json(p, k, expected_csv, &opts, &vst)};
                die_on(vst, "table verify failed");
                const json v = json::parse(vtext.str());
                const json& r = v["report"];
                cells[{p, k}] = std::string(r["complete"].get<bool>() ? "" : ">=") +
                                std::to_string(r["max_size"].get<uint32_t>());
                for (const auto& d : v["diffs"])
                    diff_lines.push_back("p=" + std::to_string(p) + " k=" +
                                         std::to_string(k) + ": " +
                                         d.get<std::string>());
                results.push_back(v);
            } else {
                apf_search_report* report = nullptr;
                const apf_status sst = apf_search_run(p, k, &opts, &report);
                if (sst == APF_ERR_PRECONDITION) {
                    cells[{p, k}] = "-";
                    continue;
                }
                die_on(sst, "search failed");
                OwnedString rtext{apf_search_report_json(report)};
                const json r = json::parse(rtext.str());
                cells[{p, k}] = std::string(r["complete"].get<bool>() ? "" : ">=") +
                                std::to_string(r["max_size"].get<uint32_t>());
                results.push_back(r);
                apf_search_report_free(report);
            }
        }
        if (any)
            ps.push_back(p);
    }
    std::sort(ks.begin(), ks.end());

    if (format == "json") {
        std::cout << results.dump() << '\n';
    } else {
        // CSV grid: rows p, columns k
        std::cout << "p";
        for (uint32_t k : ks)
            std::cout << ",k=" << k;
        std::cout << '\n';
        for (uint32_t p : ps) {
            std::cout << p;
            for (uint32_t k : ks) {
                std::cout << ',';
                auto it = cells.find({p, k});
                if (it != cells.end())
                    std::cout << it->second;
            }
            std::cout << '\n';
        }
    }
    if (diff) {
        for (const auto& line : diff_lines)
            std::cout << "DIFF " << line << '\n';
        std::cout << (diff_lines.empty() ? "table: no diffs" : "table: diffs found")
                  << '\n';
        return diff_lines.empty() ? exit_ok : exit_diff;
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"apfree: admissible digit sets, certificates, and table reproduction"};
    app.set_version_flag("--version", std::string(apf_version()));
    app.require_subcommand(1);

    // check / witness share most flags
    uint32_t m = 0, k = 0;
    DigitSetArgs set_args;
    std::string method = "auto", initial, scheme = "first", format = "text";
    bool minimize = false, dump_matrix = false, dump_trace = false, emit_vectors = false;

    auto add_set_flags = [&](CLI::App* cmd, bool with_k) {
        cmd->add_option("--m", m, "modulus")->required();
        if (with_k)
            cmd->add_option("--k", k, "progression length")->required();
        cmd->add_option("--digits", set_args.digits, "digit spec, e.g. 0:5,8");
        cmd->add_option("--interval", set_args.interval, "interval a:b");
        cmd->add_option("--construct", set_args.construct,
                        "named family: kodd, keven, conjecture");
    };

    CLI::App* check = app.add_subcommand("check", "certify one digit set");
    add_set_flags(check, true);
    check->add_option("--method", method, "auto|reduce|lp");
    check->add_option("--initial", initial, "A|rref|custom:FILE");
    check->add_option("--scheme", scheme, "first|all (pair scheme)");
    check->add_flag("--minimize-witness", minimize, "shrink counterexample support");
    check->add_flag("--dump-matrix", dump_matrix, "print the constraint matrix");
    check->add_flag("--dump-trace", dump_trace, "print the reduction trace");
    check->add_option("--format", format, "text|json");

    CLI::App* witness = app.add_subcommand("witness", "emit a counterexample witness");
    add_set_flags(witness, true);
    witness->add_flag("--emit-vectors", emit_vectors, "include the expanded vectors");
    witness->add_flag("--minimize", minimize, "shrink counterexample support");

    uint32_t p = 0, jobs = 1;
    double budget = 0.0;
    bool count = false, composite = false;
    std::string cache, search_format = "text";
    CLI::App* search = app.add_subcommand("search", "maximum admissible size modulo p");
    search->add_option("--p", p, "modulus")->required();
    search->add_option("--k", k, "progression length")->required();
    search->add_option("--jobs", jobs, "worker threads");
    search->add_option("--budget", budget, "wall-clock budget in seconds");
    search->add_flag("--count", count, "show the count at maximum size");
    search->add_option("--cache", cache, "verdict cache file (APFREE_CACHE)");
    search->add_flag("--composite", composite, "allow composite moduli");
    search->add_option("--format", search_format, "text|json|csv");

    uint64_t n = 0;
    std::string bound_format = "text";
    CLI::App* bound = app.add_subcommand("bound", "constructions and lower bounds");
    bound->add_option("--m", m, "modulus")->required();
    bound->add_option("--k", k, "progression length")->required();
    bound->add_option("--n", n, "dimension")->required();
    bound->add_option("--format", bound_format, "text|json");

    std::string p_range, k_range, expected_path, table_format = "csv";
    bool table_diff = false;
    CLI::App* table = app.add_subcommand("table", "reproduce the result tables");
    table->add_option("--p", p_range, "modulus or range a:b")->required();
    table->add_option("--k", k_range, "length or range a:b")->required();
    table->add_flag("--diff", table_diff, "diff against the bundled expected values");
    table->add_option("--jobs", jobs, "worker threads");
    table->add_option("--budget", budget, "wall-clock budget per cell in seconds");
    table->add_option("--cache", cache, "verdict cache file (APFREE_CACHE)");
    table->add_option("--expected", expected_path, "expected-values CSV path");
    table->add_option("--format", table_format, "csv|json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "apfree: " << e.what() << '\n';
        return exit_usage;
    }

    if (check->parsed())
        return run_check(m, k, set_args, method, initial, scheme, minimize, dump_matrix,
                         dump_trace, format, false, false);
    if (witness->parsed())
        return run_check(m, k, set_args, "auto", "", "first", minimize, false, false,
                         "json", true, emit_vectors);
    if (search->parsed())
        return run_search(p, k, jobs, budget, count, cache, composite, search_format);
    if (bound->parsed())
        return run_bound(m, k, n, bound_format);
    if (table->parsed())
        return run_table(p_range, k_range, table_diff, jobs, budget, cache, expected_path,
                         table_format);
    return exit_usage;
}
