#ifndef APFREE_BOUNDS_HPP
#define APFREE_BOUNDS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rat.hpp"
#include "zmod.hpp"

namespace apfree {

/// {0, ..., floor((k-1)m/(k+1))} for odd k >= 5 with P^-(m) >= (k+2)/2.
DigitSet construct_kodd(uint32_t m, uint32_t k);

/// {0, ..., floor((k-2)m/k)} + {((k-1)m-1)/k} for even k >= 4 with
/// m = -1 mod k and P^-(m) >= k.
DigitSet construct_keven(uint32_t m, uint32_t k);

/// {0, ..., (p-1)/2} + {(p+3)/2} for primes p >= 13 with p = 1 mod 4: the
/// conjectured k = 4 set.  Callers must run it through check_admissible;
/// nothing here assumes the conjecture.
DigitSet construct_conjecture(uint32_t p);

/// Exact multinomial |S(D, n)|; |D| must divide n.
Int exact_size(const DigitSet& d, uint64_t n);

struct LinWolf {
    Int value;
    bool exact;  // false when 2k does not divide n (value is the floored root)
};

/// floor((p^(2(k-1)) + p^(k-1) - 1)^(n/2k)) for primes p with k <= p.
LinWolf lin_wolf_bound(uint32_t p, uint32_t k, uint64_t n);

/// (m+1)/2 for odd m, (m+2)/2 for even m: the base of the best known
/// k = 3 lower bound.
Rat ep_r3_base(uint32_t m);

struct BoundReport {
    uint32_t m = 0;
    uint32_t k = 0;
    uint64_t n = 0;
    std::optional<DigitSet> construction;
    std::optional<std::string> construction_source;  // "kodd" | "keven" | "r3-interval"
    std::optional<Int> exact_size_value;             // when |D| divides n
    std::optional<LinWolf> lin_wolf;                 // when m prime and k <= m
    std::optional<Rat> ep_r3;                        // k == 3 only
    std::vector<std::string> notes;
};

BoundReport bound_report(uint32_t m, uint32_t k, uint64_t n);
std::string bound_report_json(const BoundReport& r);
std::string bound_report_text(const BoundReport& r);

}  // namespace apfree

#endif
