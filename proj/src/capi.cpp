#include "apfree.h"

#include <json.hpp>

#include <cstring>
#include <new>
#include <string>

#include "bounds.hpp"
#include "error.hpp"
#include "feasex.hpp"
#include "search.hpp"
#include "version.hpp"
#include "zmod.hpp"

using namespace apfree;

struct apf_digit_set {
    DigitSet set;
};

struct apf_check_result {
    DigitSet set;
    uint32_t k;
    CheckResult result;
};

struct apf_search_report {
    SearchReport report;
};

namespace {

thread_local std::string g_last_error;

apf_status status_of(const Error& e) {
    g_last_error = e.what();
    switch (e.code()) {
        case ErrorCode::invalid_argument: return APF_ERR_INVALID_ARGUMENT;
        case ErrorCode::precondition: return APF_ERR_PRECONDITION;
        case ErrorCode::cap_exceeded: return APF_ERR_CAP_EXCEEDED;
        case ErrorCode::io: return APF_ERR_IO;
        case ErrorCode::internal: return APF_ERR_INTERNAL;
    }
    return APF_ERR_INTERNAL;
}

template <typename F>
apf_status guarded(F&& f) {
    try {
        f();
        return APF_OK;
    } catch (const Error& e) {
        return status_of(e);
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return APF_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return APF_ERR_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out != nullptr)
        std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename F>
char* guarded_string(apf_status* status, F&& f) {
    char* out = nullptr;
    const apf_status st = guarded([&]() { out = dup_string(f()); });
    if (status != nullptr)
        *status = st;
    return st == APF_OK ? out : nullptr;
}

}  // namespace

extern "C" {

const char* apf_version(void) { return APFREE_VERSION; }

const char* apf_last_error(void) { return g_last_error.c_str(); }

void apf_string_free(char* s) { std::free(s); }

apf_status apf_digit_set_new(uint32_t modulus, const uint32_t* digits, size_t count,
                             apf_digit_set** out) {
    if (out == nullptr || (digits == nullptr && count > 0)) {
        g_last_error = "null argument";
        return APF_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&]() {
        std::vector<uint32_t> v(digits, digits + count);
        *out = new apf_digit_set{DigitSet(Modulus(modulus), std::move(v))};
    });
}

apf_status apf_digit_set_parse(uint32_t modulus, const char* spec, apf_digit_set** out) {
    if (out == nullptr || spec == nullptr) {
        g_last_error = "null argument";
        return APF_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&]() { *out = new apf_digit_set{parse_digit_spec(modulus, spec)}; });
}

apf_status apf_digit_set_construct(const char* family, uint32_t m, uint32_t k,
                                   apf_digit_set** out) {
    if (out == nullptr || family == nullptr) {
        g_last_error = "null argument";
        return APF_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&]() {
        const std::string f = family;
        if (f == "kodd")
            *out = new apf_digit_set{construct_kodd(m, k)};
        else if (f == "keven")
            *out = new apf_digit_set{construct_keven(m, k)};
        else if (f == "conjecture")
            *out = new apf_digit_set{construct_conjecture(m)};
        else
            throw Error(ErrorCode::invalid_argument, "unknown construction '" + f + "'");
    });
}

void apf_digit_set_free(apf_digit_set* ds) { delete ds; }

uint32_t apf_digit_set_modulus(const apf_digit_set* ds) { return ds->set.m(); }

size_t apf_digit_set_size(const apf_digit_set* ds) { return ds->set.size(); }

size_t apf_digit_set_digits(const apf_digit_set* ds, uint32_t* out, size_t cap) {
    const auto& d = ds->set.digits();
    if (out != nullptr)
        for (size_t i = 0; i < d.size() && i < cap; ++i)
            out[i] = d[i];
    return d.size();
}

char* apf_digit_set_spec(const apf_digit_set* ds) {
    return dup_string(ds->set.spec_string());
}

void apf_check_options_init(apf_check_options* opts) {
    opts->method = APF_METHOD_AUTO;
    opts->initial = APF_INITIAL_DEFAULT;
    opts->custom_t = nullptr;
    opts->minimize_witness = 0;
    opts->pair_scheme = APF_SCHEME_FIRST_TO_ALL;
}

apf_status apf_check_run(const apf_digit_set* ds, uint32_t k,
                         const apf_check_options* opts, apf_check_result** out) {
    if (ds == nullptr || out == nullptr) {
        g_last_error = "null argument";
        return APF_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    apf_check_options defaults;
    apf_check_options_init(&defaults);
    if (opts == nullptr)
        opts = &defaults;

    return guarded([&]() {
        CheckOptions co;
        switch (opts->method) {
            case APF_METHOD_AUTO: co.method = CheckOptions::Method::automatic; break;
            case APF_METHOD_REDUCE: co.method = CheckOptions::Method::reduce_only; break;
            case APF_METHOD_LP: co.method = CheckOptions::Method::lp_only; break;
            default:
                throw Error(ErrorCode::invalid_argument, "bad method");
        }
        RatMatrix custom;
        switch (opts->initial) {
            case APF_INITIAL_DEFAULT: break;
            case APF_INITIAL_A: co.initial = InitialMatrix::a; break;
            case APF_INITIAL_RREF: co.initial = InitialMatrix::rref_form; break;
            case APF_INITIAL_CUSTOM:
                if (opts->custom_t == nullptr)
                    throw Error(ErrorCode::invalid_argument,
                                "APF_INITIAL_CUSTOM needs custom_t matrix text");
                custom = RatMatrix::from_text(opts->custom_t);
                co.initial = InitialMatrix::custom;
                co.custom_t = &custom;
                break;
            default:
                throw Error(ErrorCode::invalid_argument, "bad initial matrix choice");
        }
        co.minimize_witness = opts->minimize_witness != 0;
        co.scheme = opts->pair_scheme == APF_SCHEME_ALL_PAIRS ? PairScheme::all_pairs
                                                              : PairScheme::first_to_all;
        CheckResult res = check_admissible(ds->set, k, co);
        *out = new apf_check_result{ds->set, k, std::move(res)};
    });
}

int apf_check_verdict(const apf_check_result* r) {
    switch (r->result.verdict) {
        case Verdict::admissible: return APF_VERDICT_ADMISSIBLE;
        case Verdict::not_admissible: return APF_VERDICT_NOT_ADMISSIBLE;
        case Verdict::undetermined: return APF_VERDICT_UNDETERMINED;
    }
    return APF_VERDICT_UNDETERMINED;
}

char* apf_check_report_json(const apf_check_result* r) {
    return dup_string(check_report_json(r->set, r->k, r->result));
}

char* apf_check_trace_text(const apf_check_result* r) {
    if (!r->result.certificate.trace)
        return nullptr;
    return dup_string(trace_to_text(*r->result.certificate.trace));
}

char* apf_check_witness_json(const apf_check_result* r, int include_vectors) {
    if (!r->result.certificate.witness)
        return nullptr;
    char* out = nullptr;
    guarded([&]() {
        const ConstraintSystem system = build_system(r->set, r->k);
        out = dup_string(witness_json(system, *r->result.certificate.witness,
                                      include_vectors != 0
                                          ? r->result.certificate.expanded
                                          : std::optional<ExpandedWitness>{}));
    });
    return out;
}

void apf_check_result_free(apf_check_result* r) { delete r; }

char* apf_matrix_dump(const apf_digit_set* ds, uint32_t k, int pair_scheme,
                      apf_status* status) {
    return guarded_string(status, [&]() {
        const ConstraintSystem system =
            build_system(ds->set, k,
                         pair_scheme == APF_SCHEME_ALL_PAIRS ? PairScheme::all_pairs
                                                             : PairScheme::first_to_all);
        return system.matrix.to_text();
    });
}

void apf_search_options_init(apf_search_options* opts) {
    opts->jobs = 1;
    opts->budget_seconds = 0.0;
    opts->cache_path = nullptr;
    opts->allow_composite = 0;
}

namespace {

SearchOptions to_search_options(const apf_search_options* opts) {
    SearchOptions so;
    if (opts != nullptr) {
        so.jobs = opts->jobs;
        so.budget_seconds = opts->budget_seconds;
        if (opts->cache_path != nullptr)
            so.cache_path = opts->cache_path;
        so.allow_composite = opts->allow_composite != 0;
    }
    so.keep_max_sets = false;  // not exposed through the C surface
    return so;
}

}  // namespace

apf_status apf_search_run(uint32_t p, uint32_t k, const apf_search_options* opts,
                          apf_search_report** out) {
    if (out == nullptr) {
        g_last_error = "null argument";
        return APF_ERR_INVALID_ARGUMENT;
    }
    *out = nullptr;
    return guarded([&]() {
        *out = new apf_search_report{search_max(p, k, to_search_options(opts))};
    });
}

uint32_t apf_search_max_size(const apf_search_report* r) { return r->report.max_size; }

int apf_search_complete(const apf_search_report* r) { return r->report.complete ? 1 : 0; }

char* apf_search_report_json(const apf_search_report* r) {
    return dup_string(search_report_json(r->report));
}

void apf_search_report_free(apf_search_report* r) { delete r; }

char* apf_table_verify_json(uint32_t p, uint32_t k, const char* expected_csv_path,
                            const apf_search_options* opts, apf_status* status) {
    return guarded_string(status, [&]() {
        const std::string path = expected_csv_path != nullptr
                                     ? expected_csv_path
                                     : default_expected_table_path();
        const auto rows = load_expected_table(path);
        const auto expected = find_expectation(rows, p, k);
        if (!expected)
            throw Error(ErrorCode::invalid_argument,
                        "no expected row for p=" + std::to_string(p) +
                            ", k=" + std::to_string(k));
        const RowVerification v = verify_table_row(p, k, *expected, to_search_options(opts));
        nlohmann::json j;
        j["pass"] = v.pass;
        j["diffs"] = v.diffs;
        j["report"] = nlohmann::json::parse(search_report_json(v.report));
        j["expected"] = {{"size", expected->size},
                         {"lower_bound_only", expected->lower_bound_only},
                         {"count", expected->count ? nlohmann::json(*expected->count)
                                                   : nlohmann::json(nullptr)},
                         {"starred", expected->starred},
                         {"unverifiable", expected->unverifiable}};
        return j.dump();
    });
}

char* apf_table_expectations_json(const char* expected_csv_path, apf_status* status) {
    return guarded_string(status, [&]() {
        const std::string path = expected_csv_path != nullptr
                                     ? expected_csv_path
                                     : default_expected_table_path();
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& e : load_expected_table(path)) {
            nlohmann::json j;
            j["p"] = e.p;
            j["k"] = e.k;
            j["size"] = e.size;
            j["lower_bound_only"] = e.lower_bound_only;
            j["count"] = e.count ? nlohmann::json(*e.count) : nlohmann::json(nullptr);
            j["first_set"] = e.first_set_spec ? nlohmann::json(*e.first_set_spec)
                                              : nlohmann::json(nullptr);
            j["starred"] = e.starred;
            j["unverifiable"] = e.unverifiable;
            arr.push_back(std::move(j));
        }
        return arr.dump();
    });
}

const char* apf_default_expected_table_path(void) {
    static const std::string path = default_expected_table_path();
    return path.c_str();
}

char* apf_bound_report_json(uint32_t m, uint32_t k, uint64_t n, apf_status* status) {
    return guarded_string(status, [&]() { return bound_report_json(bound_report(m, k, n)); });
}

char* apf_bound_report_text(uint32_t m, uint32_t k, uint64_t n, apf_status* status) {
    return guarded_string(status, [&]() { return bound_report_text(bound_report(m, k, n)); });
}

}  // extern "C"
