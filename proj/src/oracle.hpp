#ifndef APFREE_ORACLE_HPP
#define APFREE_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "constraints.hpp"

namespace apfree {

inline constexpr uint64_t default_oracle_cap = 10000000;

/// Number of vectors in S(D, n) (an exact multinomial).  |D| must divide n.
Int s_size(const DigitSet& d, uint64_t n);

/// Streams S(D, n) in lexicographic order.  Refuses to start if |S(D, n)|
/// exceeds the cap: a truncated oracle is worse than none.
class SEnumerator {
public:
    SEnumerator(const DigitSet& d, uint64_t n, uint64_t cap = default_oracle_cap);

    /// Fills `out` with the next vector; false once exhausted.
    bool next(std::vector<uint32_t>& out);

private:
    std::vector<uint32_t> cur_;
    bool first_ = true;
    bool done_ = false;
};

std::vector<std::vector<uint32_t>> materialize_s(const DigitSet& d, uint64_t n,
                                                 uint64_t cap = default_oracle_cap);

struct VectorAp {
    std::vector<std::vector<uint32_t>> vectors;
    std::vector<uint32_t> diff;
};

/// Exhaustive scan for a k-term progression of (distinct) vectors inside
/// S(D, n).  Difference vectors are enumerated up to negation only;
/// progressions reverse, so this halves the work without missing anything.
std::optional<VectorAp> find_ap_direct(const DigitSet& d, uint32_t k, uint64_t n,
                                       uint64_t cap = default_oracle_cap);

/// Exhaustive search over nonnegative integer x with sum(x) <= weight_cap and
/// Ax = 0; returns a minimum-weight nonzero solution, if one exists.
std::optional<std::vector<Int>> bounded_integer_kernel(const ConstraintSystem& system,
                                                       uint32_t weight_cap);

}  // namespace apfree

#endif
