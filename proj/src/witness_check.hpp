#ifndef APFREE_WITNESS_CHECK_HPP
#define APFREE_WITNESS_CHECK_HPP

#include <cstdint>
#include <vector>

namespace apfree {

struct ExpandedWitness;

/// Independent verifier for counterexample progressions.  Deliberately
/// shares no code with the expander: membership in S(D, n) is re-counted
/// from scratch and the progression property is checked term by term.
///
/// Accepts iff: k >= 3 vectors of equal dimension n >= 1, pairwise distinct;
/// consecutive differences all equal mod m and nonzero; every vector uses
/// each digit of `digits` exactly n / |digits| times and nothing else.
bool verify_vector_ap(uint32_t m, const std::vector<uint32_t>& digits, uint32_t k,
                      const std::vector<std::vector<uint32_t>>& vectors);

bool verify_expanded_witness(uint32_t m, const std::vector<uint32_t>& digits, uint32_t k,
                             const ExpandedWitness& w);

}  // namespace apfree

#endif
