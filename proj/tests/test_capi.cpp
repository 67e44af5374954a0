// Exercises the public C surface only: apfree.h plus the shared library.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "apfree.h"

#ifndef APFREE_DATA_DIR
#define APFREE_DATA_DIR "data"
#endif

namespace {

using json = nlohmann::json;

std::string take(char* s) {
    REQUIRE(s != nullptr);
    std::string out(s);
    apf_string_free(s);
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("version and error strings") {
    CHECK(apf_version() != nullptr);
    CHECK(std::strlen(apf_version()) > 0);
}

TEST_CASE("digit set lifecycle") {
    apf_digit_set* ds = nullptr;
    const uint32_t digits[] = {0, 1, 2, 3, 4, 5};
    REQUIRE(apf_digit_set_new(11, digits, 6, &ds) == APF_OK);
    CHECK(apf_digit_set_modulus(ds) == 11);
    CHECK(apf_digit_set_size(ds) == 6);
    uint32_t out[8] = {};
    CHECK(apf_digit_set_digits(ds, out, 8) == 6);
    CHECK(out[5] == 5);
    CHECK(take(apf_digit_set_spec(ds)) == "0:5");
    apf_digit_set_free(ds);

    apf_digit_set* parsed = nullptr;
    REQUIRE(apf_digit_set_parse(13, "0:6,8", &parsed) == APF_OK);
    CHECK(apf_digit_set_size(parsed) == 8);
    apf_digit_set_free(parsed);

    apf_digit_set* bad = nullptr;
    CHECK(apf_digit_set_new(5, digits, 6, &bad) == APF_ERR_INVALID_ARGUMENT);
    CHECK(bad == nullptr);
    CHECK(std::strlen(apf_last_error()) > 0);
    CHECK(apf_digit_set_parse(5, "junk", &bad) == APF_ERR_INVALID_ARGUMENT);
}

TEST_CASE("constructions through the C surface") {
    apf_digit_set* ds = nullptr;
    REQUIRE(apf_digit_set_construct("kodd", 11, 5, &ds) == APF_OK);
    CHECK(apf_digit_set_size(ds) == 8);
    apf_digit_set_free(ds);

    REQUIRE(apf_digit_set_construct("keven", 11, 4, &ds) == APF_OK);
    CHECK(take(apf_digit_set_spec(ds)) == "0:5,8");
    apf_digit_set_free(ds);

    REQUIRE(apf_digit_set_construct("conjecture", 13, 0, &ds) == APF_OK);
    CHECK(take(apf_digit_set_spec(ds)) == "0:6,8");
    apf_digit_set_free(ds);

    CHECK(apf_digit_set_construct("kodd", 11, 4, &ds) == APF_ERR_PRECONDITION);
    CHECK(apf_digit_set_construct("nonsense", 11, 4, &ds) == APF_ERR_INVALID_ARGUMENT);
}

TEST_CASE("check: admissible with a reduction trace") {
    apf_digit_set* ds = nullptr;
    REQUIRE(apf_digit_set_parse(11, "0:5", &ds) == APF_OK);
    apf_check_result* r = nullptr;
    REQUIRE(apf_check_run(ds, 3, nullptr, &r) == APF_OK);
    CHECK(apf_check_verdict(r) == APF_VERDICT_ADMISSIBLE);

    const json report = json::parse(take(apf_check_report_json(r)));
    CHECK(report["verdict"] == "admissible");
    CHECK(report["method"] == "reduce-A");
    CHECK(report["certificate"]["outcome"] == "REDUCED");

    const std::string trace = take(apf_check_trace_text(r));
    CHECK(trace.rfind("initial=A\n", 0) == 0);
    CHECK(trace.find("outcome=REDUCED") != std::string::npos);
    CHECK(apf_check_witness_json(r, 0) == nullptr);

    apf_check_result_free(r);
    apf_digit_set_free(ds);
}

TEST_CASE("check: witness for a non-admissible set") {
    apf_digit_set* ds = nullptr;
    REQUIRE(apf_digit_set_parse(5, "0:3", &ds) == APF_OK);
    apf_check_result* r = nullptr;
    apf_check_options opts;
    apf_check_options_init(&opts);
    opts.minimize_witness = 1;
    REQUIRE(apf_check_run(ds, 3, &opts, &r) == APF_OK);
    CHECK(apf_check_verdict(r) == APF_VERDICT_NOT_ADMISSIBLE);

    const json w = json::parse(take(apf_check_witness_json(r, 1)));
    CHECK(w["m"] == 5);
    CHECK(w["k"] == 3);
    CHECK(w["digits"] == json({0, 1, 2, 3}));
    CHECK(w["x"].is_object());
    CHECK(w.contains("n"));
    CHECK(w["vectors"].size() == 3);

    const json w_bare = json::parse(take(apf_check_witness_json(r, 0)));
    CHECK_FALSE(w_bare.contains("vectors"));

    CHECK(apf_check_trace_text(r) == nullptr);
    apf_check_result_free(r);
    apf_digit_set_free(ds);
}

TEST_CASE("check: reduce-only stays undetermined when stuck") {
    apf_digit_set* ds = nullptr;
    REQUIRE(apf_digit_set_parse(5, "0:3", &ds) == APF_OK);
    apf_check_options opts;
    apf_check_options_init(&opts);
    opts.method = APF_METHOD_REDUCE;
    apf_check_result* r = nullptr;
    REQUIRE(apf_check_run(ds, 3, &opts, &r) == APF_OK);
    CHECK(apf_check_verdict(r) == APF_VERDICT_UNDETERMINED);
    const std::string trace = take(apf_check_trace_text(r));
    CHECK(trace.find("outcome=STUCK") != std::string::npos);
    apf_check_result_free(r);
    apf_digit_set_free(ds);
}

TEST_CASE("check: custom initial matrix") {
    apf_digit_set* ds = nullptr;
    REQUIRE(apf_digit_set_parse(11, "0:5", &ds) == APF_OK);

    // T = identity: same behaviour as initial matrix A
    std::string identity;
    for (int r = 0; r < 12; ++r) {
        for (int c = 0; c < 12; ++c)
            identity += (c ? " " : "") + std::string(r == c ? "1" : "0");
        identity += "\n";
    }
    apf_check_options opts;
    apf_check_options_init(&opts);
    opts.initial = APF_INITIAL_CUSTOM;
    opts.custom_t = identity.c_str();
    apf_check_result* r = nullptr;
    REQUIRE(apf_check_run(ds, 3, &opts, &r) == APF_OK);
    CHECK(apf_check_verdict(r) == APF_VERDICT_ADMISSIBLE);
    apf_check_result_free(r);

    const std::string singular(12 * 24, '0');  // parse error: not a 12x12 matrix text
    opts.custom_t = "0 0\n0 0\n";
    CHECK(apf_check_run(ds, 3, &opts, &r) == APF_ERR_INVALID_ARGUMENT);
    apf_digit_set_free(ds);
}

TEST_CASE("matrix dump matches the golden file") {
    apf_digit_set* ds = nullptr;
    REQUIRE(apf_digit_set_parse(11, "0:5", &ds) == APF_OK);
    apf_status st = APF_ERR_INTERNAL;
    const std::string dump = take(apf_matrix_dump(ds, 3, APF_SCHEME_FIRST_TO_ALL, &st));
    CHECK(st == APF_OK);
    CHECK(dump == slurp(std::string(APFREE_DATA_DIR) + "/m11_k3_interval05_matrix.txt"));
    apf_digit_set_free(ds);
}

TEST_CASE("search through the C surface") {
    apf_search_report* r = nullptr;
    REQUIRE(apf_search_run(5, 3, nullptr, &r) == APF_OK);
    CHECK(apf_search_max_size(r) == 3);
    CHECK(apf_search_complete(r) == 1);
    const json j = json::parse(take(apf_search_report_json(r)));
    CHECK(j["count_at_max"] == 10);
    CHECK(j["first_set"] == json({0, 1, 2}));
    apf_search_report_free(r);

    CHECK(apf_search_run(9, 3, nullptr, &r) == APF_ERR_PRECONDITION);
}

TEST_CASE("table verification through the C surface") {
    apf_status st = APF_ERR_INTERNAL;
    const json v = json::parse(take(apf_table_verify_json(5, 3, nullptr, nullptr, &st)));
    CHECK(st == APF_OK);
    CHECK(v["pass"] == true);
    CHECK(v["diffs"].empty());
    CHECK(v["report"]["max_size"] == 3);
    CHECK(v["expected"]["size"] == 3);

    char* missing = apf_table_verify_json(37, 3, nullptr, nullptr, &st);
    CHECK(missing == nullptr);
    CHECK(st == APF_ERR_INVALID_ARGUMENT);

    const json rows = json::parse(take(apf_table_expectations_json(nullptr, &st)));
    CHECK(st == APF_OK);
    CHECK(rows.size() == 54);
    CHECK(apf_default_expected_table_path() != nullptr);
}

TEST_CASE("bound reports through the C surface") {
    apf_status st = APF_ERR_INTERNAL;
    const json j = json::parse(take(apf_bound_report_json(11, 5, 16, &st)));
    CHECK(st == APF_OK);
    CHECK(j["construction"]["size"] == 8);
    CHECK(j["exact_size"] == "81729648000");

    const std::string text = take(apf_bound_report_text(11, 5, 16, &st));
    CHECK(text.find("kodd") != std::string::npos);

    char* bad = apf_bound_report_json(11, 2, 16, &st);
    CHECK(bad == nullptr);
    CHECK(st == APF_ERR_PRECONDITION);
}
