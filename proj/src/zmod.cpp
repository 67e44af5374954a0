#include "zmod.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "error.hpp"

namespace apfree {

uint32_t least_prime_factor(uint32_t m) {
    if (m < 2)
        throw Error(ErrorCode::precondition, "least_prime_factor requires m >= 2");
    if (m % 2 == 0)
        return 2;
    for (uint32_t p = 3; static_cast<uint64_t>(p) * p <= m; p += 2)
        if (m % p == 0)
            return p;
    return m;
}

bool is_prime(uint32_t m) {
    return m >= 2 && least_prime_factor(m) == m;
}

Modulus::Modulus(uint32_t m) : m_(m), lpf_(apfree::least_prime_factor(m)) {}

DigitSet::DigitSet(Modulus mod, std::vector<uint32_t> digits)
    : mod_(mod), digits_(std::move(digits)) {
    if (digits_.empty())
        throw Error(ErrorCode::invalid_argument, "digit set must be nonempty");
    std::sort(digits_.begin(), digits_.end());
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        if (digits_[i] >= mod_.value())
            throw Error(ErrorCode::invalid_argument,
                        "digit " + std::to_string(digits_[i]) + " out of range mod " +
                            std::to_string(mod_.value()));
        if (i > 0 && digits_[i] == digits_[i - 1])
            throw Error(ErrorCode::invalid_argument,
                        "duplicate digit " + std::to_string(digits_[i]));
    }
}

bool DigitSet::contains(uint32_t d) const {
    return std::binary_search(digits_.begin(), digits_.end(), d);
}

std::string DigitSet::to_string() const {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        if (i)
            os << ',';
        os << digits_[i];
    }
    os << '}';
    return os.str();
}

std::string DigitSet::spec_string() const {
    std::ostringstream os;
    std::size_t i = 0;
    while (i < digits_.size()) {
        std::size_t j = i;
        while (j + 1 < digits_.size() && digits_[j + 1] == digits_[j] + 1)
            ++j;
        if (i)
            os << ',';
        if (j > i)
            os << digits_[i] << ':' << digits_[j];
        else
            os << digits_[i];
        i = j + 1;
    }
    return os.str();
}

DigitSet parse_digit_spec(uint32_t m, const std::string& spec) {
    std::vector<uint32_t> digits;
    std::istringstream is(spec);
    std::string token;
    auto parse_u32 = [&](const std::string& s) -> uint32_t {
        std::size_t pos = 0;
        unsigned long v = 0;
        try {
            v = std::stoul(s, &pos);
        } catch (const std::exception&) {
            throw Error(ErrorCode::invalid_argument, "bad digit token '" + s + "'");
        }
        if (pos != s.size())
            throw Error(ErrorCode::invalid_argument, "bad digit token '" + s + "'");
        return static_cast<uint32_t>(v);
    };
    while (std::getline(is, token, ',')) {
        if (token.empty())
            throw Error(ErrorCode::invalid_argument, "empty token in digit spec '" + spec + "'");
        auto colon = token.find(':');
        if (colon == std::string::npos) {
            digits.push_back(parse_u32(token));
        } else {
            uint32_t a = parse_u32(token.substr(0, colon));
            uint32_t b = parse_u32(token.substr(colon + 1));
            if (b < a)
                throw Error(ErrorCode::invalid_argument, "descending range '" + token + "'");
            for (uint32_t d = a; d <= b; ++d)
                digits.push_back(d);
        }
    }
    return DigitSet(Modulus(m), std::move(digits));
}

Progression make_progression(const Modulus& mod, uint32_t k, uint32_t start, uint32_t diff) {
    const uint32_t m = mod.value();
    if (k < 3)
        throw Error(ErrorCode::precondition, "progression length must be >= 3");
    if (start >= m || diff == 0 || diff >= m)
        throw Error(ErrorCode::invalid_argument, "progression (start, diff) out of range");
    Progression p;
    p.k = k;
    p.start = start;
    p.diff = diff;
    p.terms.reserve(k);
    uint64_t t = start;
    for (uint32_t i = 0; i < k; ++i) {
        p.terms.push_back(static_cast<uint32_t>(t));
        t = (t + diff) % m;
    }
    return p;
}

std::vector<Progression> enumerate_progressions(const DigitSet& d, uint32_t k) {
    if (k < 3)
        throw Error(ErrorCode::precondition, "progression length must be >= 3");
    const uint32_t m = d.m();
    std::vector<Progression> out;
    for (uint32_t start : d.digits()) {
        for (uint32_t diff = 1; diff < m; ++diff) {
            // terms repeat iff the additive order m/gcd(diff, m) is < k
            if (static_cast<uint64_t>(m) < static_cast<uint64_t>(k) * std::gcd(diff, m))
                continue;
            uint64_t t = start;
            bool ok = true;
            for (uint32_t i = 0; i < k; ++i) {
                if (!d.contains(static_cast<uint32_t>(t))) {
                    ok = false;
                    break;
                }
                t = (t + diff) % m;
            }
            if (ok)
                out.push_back(make_progression(d.modulus(), k, start, diff));
        }
    }
    return out;
}

std::optional<std::pair<uint32_t, uint32_t>> is_affine_image(const DigitSet& d1,
                                                             const DigitSet& d2) {
    if (d1.m() != d2.m())
        throw Error(ErrorCode::precondition, "is_affine_image requires equal moduli");
    if (d1.size() != d2.size())
        return std::nullopt;
    const uint32_t m = d1.m();
    std::vector<uint32_t> image(d1.size());
    for (uint32_t a = 1; a < m; ++a) {
        if (std::gcd(a, m) != 1)
            continue;
        for (uint32_t b = 0; b < m; ++b) {
            for (std::size_t i = 0; i < d1.size(); ++i)
                image[i] = static_cast<uint32_t>(
                    (static_cast<uint64_t>(a) * d1.digits()[i] + b) % m);
            std::sort(image.begin(), image.end());
            if (image == d2.digits())
                return std::make_pair(a, b);
        }
    }
    return std::nullopt;
}

}  // namespace apfree
