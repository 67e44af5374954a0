#include "search.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <numeric>
#include <sstream>
#include <thread>

#include "error.hpp"

#ifndef APFREE_DATA_DIR
#define APFREE_DATA_DIR "data"
#endif

namespace apfree {

namespace {

std::string cache_key(uint32_t m, uint32_t k, const std::vector<uint32_t>& digits) {
    std::ostringstream os;
    os << m << '|' << k << '|';
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i)
            os << ',';
        os << digits[i];
    }
    return os.str();
}

std::optional<CertificateKind> kind_from_name(const std::string& s) {
    for (CertificateKind k :
         {CertificateKind::reduction_a, CertificateKind::reduction_rref,
          CertificateKind::reduction_custom, CertificateKind::lp_trivial,
          CertificateKind::witness})
        if (s == certificate_kind_name(k))
            return k;
    return std::nullopt;
}

}  // namespace

VerdictCache::VerdictCache(const std::string& path) : persistent_(true) {
    std::ifstream in(path);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        uint32_t m = 0, k = 0;
        std::string spec, verdict, kind;
        if (!(ls >> m >> k >> spec >> verdict >> kind))
            continue;  // tolerate a torn final line from an interrupted run
        const auto ck = kind_from_name(kind);
        if (!ck || (verdict != "admissible" && verdict != "not-admissible"))
            continue;
        std::vector<uint32_t> digits;
        try {
            digits = parse_digit_spec(m, spec).digits();
        } catch (const Error&) {
            continue;
        }
        entries_[cache_key(m, k, digits)] = {verdict == "admissible", *ck};
    }
    in.close();
    out_.open(path, std::ios::app);
    if (!out_)
        throw Error(ErrorCode::io, "cannot open verdict cache '" + path + "' for append");
}

std::optional<std::pair<bool, CertificateKind>> VerdictCache::lookup(
    uint32_t m, uint32_t k, const std::vector<uint32_t>& digits) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = entries_.find(cache_key(m, k, digits));
    if (it == entries_.end())
        return std::nullopt;
    return it->second;
}

void VerdictCache::store(uint32_t m, uint32_t k, const std::vector<uint32_t>& digits,
                         bool admissible, CertificateKind kind) {
    std::lock_guard<std::mutex> lock(mu_);
    const std::string key = cache_key(m, k, digits);
    if (entries_.count(key))
        return;
    if (persistent_) {
        // the line is on disk before the verdict becomes readable
        out_ << m << ' ' << k << ' ' << DigitSet(Modulus(m), digits).spec_string() << ' '
             << (admissible ? "admissible" : "not-admissible") << ' '
             << certificate_kind_name(kind) << '\n';
        out_.flush();
    }
    entries_[key] = {admissible, kind};
}

std::size_t VerdictCache::size() const {
    std::lock_guard<std::mutex> lock(mu_);
    return entries_.size();
}

namespace {

void bump(MethodBreakdown& mb, CertificateKind kind) {
    switch (kind) {
        case CertificateKind::reduction_a: ++mb.reduce_a; break;
        case CertificateKind::reduction_rref: ++mb.reduce_rref; break;
        case CertificateKind::lp_trivial: ++mb.lp_trivial; break;
        case CertificateKind::witness: ++mb.lp_witness; break;
        case CertificateKind::reduction_custom: break;  // not produced by the pipeline
    }
}

struct EnumConfig {
    std::optional<uint32_t> collect_size;  // collect sets of exactly this size
    bool collect_at_max = false;           // collect sets of the running maximum size
};

struct LocalAgg {
    uint32_t max_size = 0;
    uint64_t count_at_max = 0;
    std::optional<std::vector<uint32_t>> first;
    MethodBreakdown methods;
    std::vector<std::vector<uint32_t>> collected;
};

struct Shared {
    uint32_t p = 0;
    uint32_t k = 0;
    const EnumConfig* config = nullptr;
    VerdictCache* cache = nullptr;
    std::atomic<bool> stop{false};
    bool has_deadline = false;
    std::chrono::steady_clock::time_point deadline;

    void poll_deadline() {
        if (has_deadline && std::chrono::steady_clock::now() >= deadline)
            stop.store(true, std::memory_order_relaxed);
    }
};

void record(const Shared& sh, LocalAgg& agg, const std::vector<uint32_t>& digits) {
    const auto size = static_cast<uint32_t>(digits.size());
    if (sh.config->collect_size && size == *sh.config->collect_size)
        agg.collected.push_back(digits);
    if (size > agg.max_size) {
        agg.max_size = size;
        agg.count_at_max = 1;
        agg.first = digits;
        if (sh.config->collect_at_max) {
            agg.collected.clear();
            agg.collected.push_back(digits);
        }
    } else if (size == agg.max_size) {
        ++agg.count_at_max;
        if (!agg.first || digits < *agg.first)
            agg.first = digits;
        if (sh.config->collect_at_max)
            agg.collected.push_back(digits);
    }
}

bool decide(Shared& sh, const std::vector<uint32_t>& digits, MethodBreakdown& mb) {
    if (sh.cache) {
        if (auto hit = sh.cache->lookup(sh.p, sh.k, digits)) {
            bump(mb, hit->second);
            return hit->first;
        }
    }
    CheckOptions opts;
    opts.expand_witnesses = false;  // the witness itself is enough for pruning
    const CheckResult res = check_admissible(DigitSet(Modulus(sh.p), digits), sh.k, opts);
    bump(mb, res.certificate.kind);
    if (sh.cache)
        sh.cache->store(sh.p, sh.k, digits, res.admissible(), res.certificate.kind);
    return res.admissible();
}

void dfs(Shared& sh, std::vector<uint32_t>& digits, LocalAgg& agg) {
    for (uint32_t d = digits.back() + 1; d < sh.p; ++d) {
        sh.poll_deadline();
        if (sh.stop.load(std::memory_order_relaxed))
            return;
        digits.push_back(d);
        if (decide(sh, digits, agg.methods)) {
            record(sh, agg, digits);
            dfs(sh, digits, agg);
        }
        digits.pop_back();
    }
}

void merge(const Shared& sh, LocalAgg& into, LocalAgg&& from) {
    into.methods.reduce_a += from.methods.reduce_a;
    into.methods.reduce_rref += from.methods.reduce_rref;
    into.methods.lp_trivial += from.methods.lp_trivial;
    into.methods.lp_witness += from.methods.lp_witness;
    if (sh.config->collect_size) {
        into.collected.insert(into.collected.end(),
                              std::make_move_iterator(from.collected.begin()),
                              std::make_move_iterator(from.collected.end()));
    }
    if (from.max_size > into.max_size) {
        into.max_size = from.max_size;
        into.count_at_max = from.count_at_max;
        into.first = std::move(from.first);
        if (sh.config->collect_at_max)
            into.collected = std::move(from.collected);
    } else if (from.max_size == into.max_size && from.count_at_max > 0) {
        into.count_at_max += from.count_at_max;
        if (from.first && (!into.first || *from.first < *into.first))
            into.first = std::move(from.first);
        if (sh.config->collect_at_max)
            into.collected.insert(into.collected.end(),
                                  std::make_move_iterator(from.collected.begin()),
                                  std::make_move_iterator(from.collected.end()));
    }
}

// Runs the full enumeration; aggregates across a small worker pool that is
// fed admissible two-element prefixes.
LocalAgg enumerate_admissible(uint32_t p, uint32_t k, const SearchOptions& opts,
                              const EnumConfig& config, bool& complete) {
    if (p < 2)
        throw Error(ErrorCode::precondition, "modulus must be >= 2");
    if (k < 3)
        throw Error(ErrorCode::precondition, "progression length must be >= 3");
    if (!is_prime(p) && !opts.allow_composite)
        throw Error(ErrorCode::precondition,
                    "composite modulus " + std::to_string(p) +
                        " requires the composite flag");

    Shared sh;
    sh.p = p;
    sh.k = k;
    sh.config = &config;
    std::optional<VerdictCache> file_cache;
    VerdictCache memory_cache;
    if (!opts.cache_path.empty()) {
        file_cache.emplace(opts.cache_path);
        sh.cache = &*file_cache;
    } else {
        sh.cache = &memory_cache;
    }
    if (opts.budget_seconds > 0) {
        sh.has_deadline = true;
        sh.deadline = std::chrono::steady_clock::now() +
                      std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                          std::chrono::duration<double>(opts.budget_seconds));
    }

    LocalAgg total;
    std::vector<std::vector<uint32_t>> tasks;
    for (uint32_t d1 = 0; d1 < p && !sh.stop.load(std::memory_order_relaxed); ++d1) {
        std::vector<uint32_t> digits{d1};
        if (!decide(sh, digits, total.methods))
            continue;  // cannot happen: singletons are vacuously admissible
        record(sh, total, digits);
        for (uint32_t d2 = d1 + 1; d2 < p; ++d2) {
            sh.poll_deadline();
            if (sh.stop.load(std::memory_order_relaxed))
                break;
            digits = {d1, d2};
            if (decide(sh, digits, total.methods)) {
                record(sh, total, digits);
                tasks.push_back(digits);
            }
        }
    }

    const uint32_t jobs =
        std::max<uint32_t>(1, std::min<uint32_t>(opts.jobs, static_cast<uint32_t>(
                                                                std::max<std::size_t>(
                                                                    tasks.size(), 1))));
    if (jobs == 1) {
        for (auto& task : tasks) {
            if (sh.stop.load(std::memory_order_relaxed))
                break;
            std::vector<uint32_t> digits = task;
            dfs(sh, digits, total);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::mutex agg_mu;
        auto worker = [&]() {
            LocalAgg local;
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= tasks.size() || sh.stop.load(std::memory_order_relaxed))
                    break;
                std::vector<uint32_t> digits = tasks[i];
                dfs(sh, digits, local);
            }
            std::lock_guard<std::mutex> lock(agg_mu);
            merge(sh, total, std::move(local));
        };
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (uint32_t t = 0; t < jobs; ++t)
            pool.emplace_back(worker);
        for (auto& t : pool)
            t.join();
    }

    complete = !sh.stop.load(std::memory_order_relaxed);
    return total;
}

}  // namespace

SearchReport search_max(uint32_t p, uint32_t k, const SearchOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    EnumConfig config;
    config.collect_at_max = opts.keep_max_sets;

    SearchReport report;
    report.p = p;
    report.k = k;
    LocalAgg agg = enumerate_admissible(p, k, opts, config, report.complete);
    report.max_size = agg.max_size;
    if (report.complete)
        report.count_at_max = agg.count_at_max;
    if (agg.first)
        report.first_set = DigitSet(Modulus(p), *agg.first);
    if (opts.keep_max_sets && report.complete) {
        std::sort(agg.collected.begin(), agg.collected.end());
        report.max_sets = std::move(agg.collected);
    }
    report.methods = agg.methods;
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

std::string search_report_json(const SearchReport& r) {
    nlohmann::json j;
    j["p"] = r.p;
    j["k"] = r.k;
    j["max_size"] = r.max_size;
    j["complete"] = r.complete;
    j["count_at_max"] =
        r.count_at_max ? nlohmann::json(*r.count_at_max) : nlohmann::json(nullptr);
    j["first_set"] =
        r.first_set ? nlohmann::json(r.first_set->digits()) : nlohmann::json(nullptr);
    j["method_breakdown"] = {{"reduce-A", r.methods.reduce_a},
                             {"reduce-RREF", r.methods.reduce_rref},
                             {"lp-trivial", r.methods.lp_trivial},
                             {"lp-witness", r.methods.lp_witness}};
    j["elapsed_seconds"] = r.elapsed_seconds;
    return j.dump();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace

std::vector<TableExpectation> load_expected_table(const std::string& csv_path) {
    std::ifstream in(csv_path);
    if (!in)
        throw Error(ErrorCode::io, "cannot open expected table '" + csv_path + "'");
    std::vector<TableExpectation> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (header) {
            header = false;
            continue;
        }
        const auto f = split_csv_line(line);
        if (f.size() != 6)
            throw Error(ErrorCode::io, "bad expected-table row: " + line);
        TableExpectation e;
        e.p = static_cast<uint32_t>(std::stoul(f[0]));
        e.k = static_cast<uint32_t>(std::stoul(f[1]));
        std::string size = f[2];
        if (size.rfind(">=", 0) == 0) {
            e.lower_bound_only = true;
            size = size.substr(2);
        }
        e.size = static_cast<uint32_t>(std::stoul(size));
        if (!f[3].empty())
            e.count = std::stoull(f[3]);
        if (!f[4].empty())
            e.first_set_spec = f[4];
        std::istringstream fs(f[5]);
        std::string flag;
        while (std::getline(fs, flag, ';')) {
            if (flag == "star")
                e.starred = true;
            else if (flag == "typo")
                e.unverifiable = true;
            else if (!flag.empty())
                throw Error(ErrorCode::io, "unknown expected-table flag: " + flag);
        }
        rows.push_back(std::move(e));
    }
    return rows;
}

std::optional<TableExpectation> find_expectation(const std::vector<TableExpectation>& all,
                                                 uint32_t p, uint32_t k) {
    for (const auto& e : all)
        if (e.p == p && e.k == k)
            return e;
    return std::nullopt;
}

std::string default_expected_table_path() {
    return std::string(APFREE_DATA_DIR) + "/expected_tables.csv";
}

RowVerification verify_table_row(uint32_t p, uint32_t k, const TableExpectation& expected,
                                 const SearchOptions& opts) {
    RowVerification v;
    if (expected.p != p || expected.k != k) {
        v.diffs.push_back("expectation row is for a different (p, k)");
        return v;
    }

    // transcription guard: the recorded set must match the recorded size
    if (expected.first_set_spec) {
        try {
            const DigitSet fs = parse_digit_spec(p, *expected.first_set_spec);
            if (fs.size() != expected.size)
                v.diffs.push_back("expected data inconsistent: first set has size " +
                                  std::to_string(fs.size()) + ", row claims " +
                                  std::to_string(expected.size));
        } catch (const Error& e) {
            v.diffs.push_back(std::string("expected first set unparseable: ") + e.what());
        }
    }

    v.report = search_max(p, k, opts);
    const SearchReport& r = v.report;

    if (!expected.lower_bound_only) {
        if (!r.complete)
            v.diffs.push_back("search incomplete within budget; row needs an exact answer");
        if (r.max_size != expected.size)
            v.diffs.push_back("max size " + std::to_string(r.max_size) + " != expected " +
                              std::to_string(expected.size));
        if (expected.count && r.complete && r.count_at_max &&
            *r.count_at_max != *expected.count)
            v.diffs.push_back("count " + std::to_string(*r.count_at_max) +
                              " != expected " + std::to_string(*expected.count));
    } else {
        if (r.max_size < expected.size) {
            v.diffs.push_back("found max " + std::to_string(r.max_size) +
                              (r.complete ? " (complete search)" : " (within budget)") +
                              " below expected lower bound " + std::to_string(expected.size));
        }
        if (expected.count && r.complete && r.max_size == expected.size &&
            r.count_at_max && *r.count_at_max != *expected.count)
            v.diffs.push_back("count " + std::to_string(*r.count_at_max) +
                              " != expected " + std::to_string(*expected.count));
    }

    if (expected.first_set_spec && !expected.unverifiable) {
        try {
            const DigitSet fs = parse_digit_spec(p, *expected.first_set_spec);
            if (!check_admissible(fs, k).admissible())
                v.diffs.push_back("expected first set " + fs.to_string() +
                                  " is not admissible");
        } catch (const Error&) {
            // already reported above
        }
    }

    v.pass = v.diffs.empty();
    return v;
}

OrbitStats affine_orbit_count(uint32_t p, uint32_t k, uint32_t size,
                              const SearchOptions& opts) {
    EnumConfig config;
    config.collect_size = size;
    bool complete = false;
    LocalAgg agg = enumerate_admissible(p, k, opts, config, complete);
    if (!complete)
        throw Error(ErrorCode::precondition,
                    "orbit statistics need a completed search; raise the budget");

    std::map<std::vector<uint32_t>, uint64_t> orbits;
    std::vector<uint32_t> image;
    for (const auto& digits : agg.collected) {
        std::vector<uint32_t> canon;
        for (uint32_t a = 1; a < p; ++a) {
            if (std::gcd(a, p) != 1)
                continue;
            for (uint32_t b = 0; b < p; ++b) {
                image.clear();
                for (uint32_t d : digits)
                    image.push_back(
                        static_cast<uint32_t>((static_cast<uint64_t>(a) * d + b) % p));
                std::sort(image.begin(), image.end());
                if (canon.empty() || image < canon)
                    canon = image;
            }
        }
        ++orbits[canon];
    }

    OrbitStats stats;
    stats.set_count = agg.collected.size();
    stats.orbit_count = orbits.size();
    for (const auto& [_, n] : orbits)
        stats.orbit_sizes.push_back(n);
    std::sort(stats.orbit_sizes.rbegin(), stats.orbit_sizes.rend());
    return stats;
}

}  // namespace apfree
