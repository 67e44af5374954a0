#include "bounds.hpp"

#include <json.hpp>

#include <numeric>
#include <sstream>

#include "error.hpp"

namespace apfree {

namespace {

std::vector<uint32_t> interval(uint32_t hi) {  // {0, ..., hi}
    std::vector<uint32_t> v(hi + 1);
    std::iota(v.begin(), v.end(), 0u);
    return v;
}

}  // namespace

DigitSet construct_kodd(uint32_t m, uint32_t k) {
    const Modulus mod(m);
    if (k < 5 || k % 2 == 0)
        throw Error(ErrorCode::precondition,
                    "construct_kodd requires odd k >= 5 (got k=" + std::to_string(k) + ")");
    if (2 * mod.least_prime_factor() < k + 2)
        throw Error(ErrorCode::precondition,
                    "construct_kodd requires P^-(m) >= (k+2)/2: m=" + std::to_string(m) +
                        " has least prime factor " + std::to_string(mod.least_prime_factor()));
    const uint32_t hi =
        static_cast<uint32_t>(static_cast<uint64_t>(k - 1) * m / (k + 1));
    return DigitSet(mod, interval(hi));
}

DigitSet construct_keven(uint32_t m, uint32_t k) {
    const Modulus mod(m);
    if (k < 4 || k % 2 != 0)
        throw Error(ErrorCode::precondition,
                    "construct_keven requires even k >= 4 (got k=" + std::to_string(k) + ")");
    if (m % k != k - 1)
        throw Error(ErrorCode::precondition,
                    "construct_keven requires m = -1 mod k: got m=" + std::to_string(m) +
                        ", k=" + std::to_string(k));
    if (mod.least_prime_factor() < k)
        throw Error(ErrorCode::precondition,
                    "construct_keven requires P^-(m) >= k: m=" + std::to_string(m) +
                        " has least prime factor " + std::to_string(mod.least_prime_factor()));
    const uint32_t hi =
        static_cast<uint32_t>(static_cast<uint64_t>(k - 2) * m / k);
    const uint32_t extra =
        static_cast<uint32_t>((static_cast<uint64_t>(k - 1) * m - 1) / k);
    std::vector<uint32_t> digits = interval(hi);
    digits.push_back(extra);
    return DigitSet(mod, std::move(digits));
}

DigitSet construct_conjecture(uint32_t p) {
    if (!is_prime(p))
        throw Error(ErrorCode::precondition,
                    "construct_conjecture requires a prime (got " + std::to_string(p) + ")");
    if (p < 13)
        throw Error(ErrorCode::precondition,
                    "construct_conjecture requires p >= 13 (got " + std::to_string(p) + ")");
    if (p % 4 != 1)
        throw Error(ErrorCode::precondition,
                    "construct_conjecture requires p = 1 mod 4 (got " + std::to_string(p) + ")");
    std::vector<uint32_t> digits = interval((p - 1) / 2);
    digits.push_back((p + 3) / 2);
    return DigitSet(Modulus(p), std::move(digits));
}

Int exact_size(const DigitSet& d, uint64_t n) {
    if (n == 0 || n % d.size() != 0)
        throw Error(ErrorCode::precondition,
                    "exact_size requires |D| = " + std::to_string(d.size()) +
                        " to divide n = " + std::to_string(n));
    mpz_class result, f;
    mpz_fac_ui(result.get_mpz_t(), static_cast<unsigned long>(n));
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n / d.size()));
    mpz_pow_ui(f.get_mpz_t(), f.get_mpz_t(), static_cast<unsigned long>(d.size()));
    mpz_divexact(result.get_mpz_t(), result.get_mpz_t(), f.get_mpz_t());
    return result;
}

LinWolf lin_wolf_bound(uint32_t p, uint32_t k, uint64_t n) {
    if (!is_prime(p))
        throw Error(ErrorCode::precondition,
                    "lin_wolf_bound requires a prime (got " + std::to_string(p) + ")");
    if (k > p)
        throw Error(ErrorCode::precondition, "lin_wolf_bound requires k <= p");
    if (n == 0)
        return {Int(1), true};

    Int base;
    mpz_ui_pow_ui(base.get_mpz_t(), p, 2 * (k - 1));
    Int t;
    mpz_ui_pow_ui(t.get_mpz_t(), p, k - 1);
    base += t - 1;

    const uint64_t e = 2ull * k;
    if (n % e == 0) {
        Int v;
        mpz_pow_ui(v.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(n / e));
        return {std::move(v), true};
    }
    // floor(base^(n/2k)) = floor((base^n)^(1/2k)), taken exactly
    Int pw;
    mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(n));
    Int v;
    mpz_root(v.get_mpz_t(), pw.get_mpz_t(), static_cast<unsigned long>(e));
    return {std::move(v), false};
}

Rat ep_r3_base(uint32_t m) {
    Modulus mod(m);  // validates m >= 2
    Rat q(m % 2 == 1 ? m + 1 : m + 2, 2);
    q.canonicalize();
    return q;
}

BoundReport bound_report(uint32_t m, uint32_t k, uint64_t n) {
    if (k < 3)
        throw Error(ErrorCode::precondition, "bound_report requires k >= 3");
    BoundReport r;
    r.m = m;
    r.k = k;
    r.n = n;

    try {
        if (k == 3) {
            r.construction = DigitSet(Modulus(m), interval(m / 2));
            r.construction_source = "r3-interval";
        } else if (k % 2 == 1) {
            r.construction = construct_kodd(m, k);
            r.construction_source = "kodd";
        } else {
            r.construction = construct_keven(m, k);
            r.construction_source = "keven";
        }
    } catch (const Error& e) {
        r.notes.push_back(e.what());
    }

    if (r.construction) {
        if (n > 0 && n % r.construction->size() == 0)
            r.exact_size_value = exact_size(*r.construction, n);
        else
            r.notes.push_back("|D| = " + std::to_string(r.construction->size()) +
                              " does not divide n = " + std::to_string(n) +
                              "; exact size omitted");
    }

    if (is_prime(m) && k <= m) {
        r.lin_wolf = lin_wolf_bound(m, k, n);
        if (!r.lin_wolf->exact)
            r.notes.push_back("2k does not divide n; Lin-Wolf value is the floored root");
    } else {
        r.notes.push_back("Lin-Wolf bound needs prime m and k <= m; omitted");
    }

    if (k == 3)
        r.ep_r3 = ep_r3_base(m);
    return r;
}

std::string bound_report_json(const BoundReport& r) {
    nlohmann::json j;
    j["m"] = r.m;
    j["k"] = r.k;
    j["n"] = r.n;
    if (r.construction) {
        j["construction"] = {{"digits", r.construction->digits()},
                             {"size", r.construction->size()},
                             {"source", r.construction_source.value_or("")}};
    } else {
        j["construction"] = nullptr;
    }
    j["exact_size"] =
        r.exact_size_value ? nlohmann::json(r.exact_size_value->get_str()) : nullptr;
    if (r.lin_wolf)
        j["lin_wolf"] = {{"value", r.lin_wolf->value.get_str()}, {"exact", r.lin_wolf->exact}};
    else
        j["lin_wolf"] = nullptr;
    j["ep_r3"] = r.ep_r3 ? nlohmann::json(rat_to_string(*r.ep_r3)) : nullptr;
    j["notes"] = r.notes;
    return j.dump();
}

std::string bound_report_text(const BoundReport& r) {
    std::ostringstream os;
    os << "m=" << r.m << " k=" << r.k << " n=" << r.n << '\n';
    if (r.construction)
        os << "construction  " << r.construction->to_string() << "  size "
           << r.construction->size() << "  (" << *r.construction_source << ")\n";
    if (r.exact_size_value)
        os << "|S(D,n)|      " << r.exact_size_value->get_str() << '\n';
    if (r.lin_wolf)
        os << "lin-wolf      " << r.lin_wolf->value.get_str()
           << (r.lin_wolf->exact ? "" : "  (floored root)") << '\n';
    if (r.ep_r3)
        os << "ep-r3 base    " << rat_to_string(*r.ep_r3) << '\n';
    for (const auto& note : r.notes)
        os << "note: " << note << '\n';
    return os.str();
}

}  // namespace apfree
