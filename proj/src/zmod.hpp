#ifndef APFREE_ZMOD_HPP
#define APFREE_ZMOD_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace apfree {

/// Smallest prime dividing m (m >= 2).
uint32_t least_prime_factor(uint32_t m);

bool is_prime(uint32_t m);

class Modulus {
public:
    explicit Modulus(uint32_t m);

    uint32_t value() const noexcept { return m_; }
    uint32_t least_prime_factor() const noexcept { return lpf_; }

    friend bool operator==(const Modulus& a, const Modulus& b) { return a.m_ == b.m_; }

private:
    uint32_t m_;
    uint32_t lpf_;
};

/// A nonempty subset of Z_m, stored as strictly increasing residues.
class DigitSet {
public:
    DigitSet(Modulus mod, std::vector<uint32_t> digits);

    const Modulus& modulus() const noexcept { return mod_; }
    uint32_t m() const noexcept { return mod_.value(); }
    const std::vector<uint32_t>& digits() const noexcept { return digits_; }
    std::size_t size() const noexcept { return digits_.size(); }
    bool contains(uint32_t d) const;

    /// "{0,1,2,5}"
    std::string to_string() const;
    /// Compact run-length form, e.g. "0:2,5"; parse_digit_spec inverts it.
    std::string spec_string() const;

    friend bool operator==(const DigitSet& a, const DigitSet& b) {
        return a.m() == b.m() && a.digits_ == b.digits_;
    }
    /// Lexicographic on the digit sequence; used for "first admissible set" reports.
    friend bool operator<(const DigitSet& a, const DigitSet& b) {
        return a.digits_ < b.digits_;
    }

private:
    Modulus mod_;
    std::vector<uint32_t> digits_;
};

/// Parses "0:5,8,10:12" into a digit set mod m.
DigitSet parse_digit_spec(uint32_t m, const std::string& spec);

/// A scalar k-term arithmetic progression in Z_m with pairwise-distinct terms.
struct Progression {
    uint32_t k = 0;
    uint32_t start = 0;
    uint32_t diff = 0;  // in [1, m-1]
    std::vector<uint32_t> terms;
};

Progression make_progression(const Modulus& mod, uint32_t k, uint32_t start, uint32_t diff);

/// All progressions whose k (distinct) terms lie in D, ordered lexicographically
/// by (start, diff).  This order is the canonical column order of the
/// constraint matrix.
std::vector<Progression> enumerate_progressions(const DigitSet& d, uint32_t k);

/// (a, b) with gcd(a, m) = 1 and d2 = a*d1 + b as sets, if such a map exists.
std::optional<std::pair<uint32_t, uint32_t>> is_affine_image(const DigitSet& d1,
                                                             const DigitSet& d2);

}  // namespace apfree

#endif
