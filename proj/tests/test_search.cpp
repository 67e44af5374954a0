#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <random>

#include "error.hpp"
#include "search.hpp"
#include "test_util.hpp"

using namespace apfree;
using apfree::test::interval_set;
using apfree::test::random_set;

namespace {

// independent full enumeration, no pruning, no cache
std::pair<uint32_t, uint64_t> brute_max_and_count(uint32_t p, uint32_t k) {
    uint32_t best = 0;
    uint64_t count = 0;
    for (uint32_t mask = 1; mask < (1u << p); ++mask) {
        std::vector<uint32_t> digits;
        for (uint32_t d = 0; d < p; ++d)
            if (mask & (1u << d))
                digits.push_back(d);
        CheckOptions opts;
        opts.expand_witnesses = false;
        if (!check_admissible(DigitSet(Modulus(p), digits), k, opts).admissible())
            continue;
        if (digits.size() > best) {
            best = static_cast<uint32_t>(digits.size());
            count = 1;
        } else if (digits.size() == best) {
            ++count;
        }
    }
    return {best, count};
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/apfree_test_" + name) {
        std::remove(path.c_str());
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("search_max reproduces the small exact rows") {
    const SearchReport r5 = search_max(5, 3);
    CHECK(r5.max_size == 3);
    CHECK(r5.count_at_max == 10);
    CHECK(*r5.first_set == interval_set(5, 0, 2));
    CHECK(r5.complete);
    CHECK(r5.max_sets.size() == 10);

    const SearchReport r7 = search_max(7, 3);
    CHECK(r7.max_size == 4);
    CHECK(r7.count_at_max == 35);
    CHECK(*r7.first_set == interval_set(7, 0, 3));
}

TEST_CASE("pruned search equals full enumeration") {
    for (uint32_t p : {5u, 7u}) {
        for (uint32_t k = 3; k <= 8; ++k) {
            const auto [max_size, count] = brute_max_and_count(p, k);
            const SearchReport r = search_max(p, k);
            CHECK(r.max_size == max_size);
            CHECK(r.count_at_max == count);
        }
    }
}

TEST_CASE("thread counts do not change the report") {
    SearchOptions serial;
    serial.jobs = 1;
    SearchOptions parallel;
    parallel.jobs = 4;
    const SearchReport a = search_max(11, 3, serial);
    const SearchReport b = search_max(11, 3, parallel);
    CHECK(a.max_size == b.max_size);
    CHECK(a.count_at_max == b.count_at_max);
    CHECK(*a.first_set == *b.first_set);
    CHECK(a.max_sets == b.max_sets);
    CHECK(a.methods.total() == b.methods.total());
}

TEST_CASE("every maximal set carries a revalidatable certificate") {
    const SearchReport r = search_max(7, 4);
    CHECK(r.max_size == 5);
    REQUIRE(r.count_at_max == 21);
    for (const auto& digits : r.max_sets) {
        const DigitSet d(Modulus(7), digits);
        const CheckResult res = check_admissible(d, 4);
        CHECK(res.admissible());
        const ConstraintSystem sys = build_system(d, 4);
        if (res.certificate.trace)
            CHECK(verify_trace(sys, *res.certificate.trace));
        else
            CHECK(decide_cone(sys).trivial);
    }
}

TEST_CASE("affine transport preserves verdicts") {
    std::mt19937 rng(59);
    CheckOptions copts;
    copts.expand_witnesses = false;
    for (int t = 0; t < 60; ++t) {
        const uint32_t p = std::vector<uint32_t>{5, 7, 11, 13}[rng() % 4];
        const DigitSet d = random_set(rng, p);
        uint32_t a = 1 + rng() % (p - 1);
        const uint32_t b = rng() % p;
        std::vector<uint32_t> mapped;
        for (uint32_t x : d.digits())
            mapped.push_back(static_cast<uint32_t>((static_cast<uint64_t>(a) * x + b) % p));
        const DigitSet image(Modulus(p), std::move(mapped));
        CHECK(check_admissible(d, 3, copts).admissible() ==
              check_admissible(image, 3, copts).admissible());
    }
}

TEST_CASE("budget exhaustion degrades to a lower bound") {
    SearchOptions opts;
    opts.budget_seconds = 1e-9;
    const SearchReport r = search_max(13, 3, opts);
    CHECK_FALSE(r.complete);
    CHECK_FALSE(r.count_at_max.has_value());
}

TEST_CASE("composite moduli sit behind a flag") {
    CHECK_THROWS_AS(search_max(9, 3), Error);
    SearchOptions opts;
    opts.allow_composite = true;
    const SearchReport r = search_max(9, 3, opts);
    CHECK(r.complete);
    CHECK(r.max_size >= 1);
}

TEST_CASE("verdict cache round trip and resume") {
    TempFile cache("cache_roundtrip");
    SearchOptions opts;
    opts.cache_path = cache.path;

    const SearchReport first = search_max(5, 3, opts);
    const SearchReport second = search_max(5, 3, opts);  // fully from cache
    CHECK(first.max_size == second.max_size);
    CHECK(first.count_at_max == second.count_at_max);
    CHECK(*first.first_set == *second.first_set);
    CHECK(first.methods.reduce_a == second.methods.reduce_a);
    CHECK(first.methods.lp_witness == second.methods.lp_witness);

    // the cache file carries one line per decided set
    VerdictCache reopened(cache.path);
    CHECK(reopened.size() == first.methods.total());
    const auto hit = reopened.lookup(5, 3, {0, 1, 2});
    REQUIRE(hit.has_value());
    CHECK(hit->first);

    // a pre-seeded partial cache is picked up seamlessly
    TempFile partial("cache_partial");
    {
        VerdictCache seed(partial.path);
        seed.store(5, 3, {0, 1, 2, 3}, false, CertificateKind::witness);
    }
    SearchOptions resumed;
    resumed.cache_path = partial.path;
    const SearchReport r = search_max(5, 3, resumed);
    CHECK(r.max_size == 3);
    CHECK(r.count_at_max == 10);
}

TEST_CASE("cache files tolerate a torn final line") {
    TempFile cache("cache_torn");
    {
        VerdictCache seed(cache.path);
        seed.store(5, 3, {0, 1}, true, CertificateKind::reduction_a);
    }
    {
        std::ofstream out(cache.path, std::ios::app);
        out << "5 3 0,1,2 admis";  // interrupted mid-write
    }
    VerdictCache reopened(cache.path);
    CHECK(reopened.size() == 1);
    CHECK(reopened.lookup(5, 3, {0, 1}).has_value());
    CHECK_FALSE(reopened.lookup(5, 3, {0, 1, 2}).has_value());
}

TEST_CASE("search report JSON shape") {
    const SearchReport r = search_max(5, 3);
    const auto j = nlohmann::json::parse(search_report_json(r));
    CHECK(j["p"] == 5);
    CHECK(j["k"] == 3);
    CHECK(j["max_size"] == 3);
    CHECK(j["complete"] == true);
    CHECK(j["count_at_max"] == 10);
    CHECK(j["first_set"] == nlohmann::json({0, 1, 2}));
    CHECK(j["method_breakdown"].contains("reduce-A"));
    CHECK(j["method_breakdown"].contains("lp-witness"));
    CHECK(j["elapsed_seconds"].is_number());
}

TEST_CASE("expected-table loader") {
    const auto rows = load_expected_table(default_expected_table_path());
    CHECK(rows.size() == 54);

    const auto r53 = find_expectation(rows, 5, 3);
    REQUIRE(r53.has_value());
    CHECK(r53->size == 3);
    CHECK(r53->count == 10);
    CHECK(r53->first_set_spec == "0:2");
    CHECK_FALSE(r53->lower_bound_only);
    CHECK_FALSE(r53->starred);

    const auto r233 = find_expectation(rows, 23, 3);
    REQUIRE(r233.has_value());
    CHECK(r233->lower_bound_only);
    CHECK(r233->size == 12);
    CHECK(r233->count == 4301);

    const auto r177 = find_expectation(rows, 17, 7);
    REQUIRE(r177.has_value());
    CHECK(r177->starred);
    CHECK(r177->size == 15);

    const auto r296 = find_expectation(rows, 29, 6);
    REQUIRE(r296.has_value());
    CHECK(r296->unverifiable);
    CHECK_FALSE(r296->first_set_spec.has_value());
    CHECK(r296->size == 22);

    const auto r293 = find_expectation(rows, 29, 3);
    REQUIRE(r293.has_value());
    CHECK_FALSE(r293->count.has_value());

    CHECK_FALSE(find_expectation(rows, 37, 3).has_value());
    CHECK_THROWS_AS(load_expected_table("/nonexistent/file.csv"), Error);
}

TEST_CASE("verify_table_row") {
    const auto rows = load_expected_table(default_expected_table_path());
    for (auto [p, k] : {std::pair{5u, 3u}, {7u, 3u}, {5u, 6u}, {7u, 8u}}) {
        const auto expected = find_expectation(rows, p, k);
        REQUIRE(expected.has_value());
        const RowVerification v = verify_table_row(p, k, *expected);
        CHECK(v.pass);
        CHECK(v.diffs.empty());
    }

    // a wrong expectation is reported, not silently passed
    TableExpectation wrong = *find_expectation(rows, 5, 3);
    wrong.count = 11;
    const RowVerification v = verify_table_row(5, 3, wrong);
    CHECK_FALSE(v.pass);
    REQUIRE(v.diffs.size() == 1);
    CHECK(v.diffs[0].find("count") != std::string::npos);

    // internally inconsistent expected data is flagged
    TableExpectation inconsistent = *find_expectation(rows, 5, 3);
    inconsistent.size = 4;
    const RowVerification v2 = verify_table_row(5, 3, inconsistent);
    CHECK_FALSE(v2.pass);
    bool flagged = false;
    for (const auto& d : v2.diffs)
        flagged = flagged || d.find("inconsistent") != std::string::npos;
    CHECK(flagged);
}

TEST_CASE("affine orbit statistics") {
    const OrbitStats s5 = affine_orbit_count(5, 3, 3);
    CHECK(s5.set_count == 10);  // C(5,3): every 3-subset is admissible
    CHECK(s5.orbit_count == 1);
    CHECK(s5.orbit_sizes == std::vector<uint64_t>{10});

    const OrbitStats s7 = affine_orbit_count(7, 3, 4);
    CHECK(s7.set_count == 35);  // C(7,4)
    uint64_t total = 0;
    for (uint64_t n : s7.orbit_sizes) {
        total += n;
        CHECK(42 % n == 0);  // orbit sizes divide |AGL(1,7)|
    }
    CHECK(total == 35);

    // 275 of the 462 six-subsets of Z_11 are admissible at k = 3
    SearchOptions opts;
    opts.jobs = 4;
    const OrbitStats s11 = affine_orbit_count(11, 3, 6, opts);
    CHECK(s11.set_count == 275);
    uint64_t total11 = 0;
    for (uint64_t n : s11.orbit_sizes) {
        total11 += n;
        CHECK(110 % n == 0);  // orbit sizes divide |AGL(1,11)|
    }
    CHECK(total11 == 275);

    SearchOptions starved;
    starved.budget_seconds = 1e-9;
    CHECK_THROWS_AS(affine_orbit_count(7, 3, 4, starved), Error);
}
