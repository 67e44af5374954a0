#ifndef APFREE_CONSTRAINTS_HPP
#define APFREE_CONSTRAINTS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "ratmatrix.hpp"
#include "zmod.hpp"

namespace apfree {

/// Which position pairs (i, j) generate balance equations.  Both schemes
/// have the same row space (equality to position 1 transfers pairwise).
enum class PairScheme {
    first_to_all,  // (1, j) for 2 <= j <= k
    all_pairs,     // (i, j) for 1 <= i < j <= k
};

/// The homogeneous balance system: one variable per progression in P_k(D),
/// one equation per (digit, position pair).  A nonzero nonnegative solution
/// is exactly a recipe for a k-term progression of vectors inside some
/// S(D, n); the cone {x >= 0 : Ax = 0} is trivial iff D is admissible.
struct ConstraintSystem {
    DigitSet digit_set;
    uint32_t k;
    PairScheme scheme;
    std::vector<Progression> progressions;             // column order
    std::vector<std::pair<uint32_t, uint32_t>> pairs;  // 1-based positions, i < j
    RatMatrix matrix;                                  // |pairs|*|D| rows, |P_k(D)| cols
};

/// Rows are pair-major, digits ascending inside a pair block; columns follow
/// the canonical (start, diff) order of enumerate_progressions.  Entry at
/// (d, (i,j)) for progression v is [v_i = d] - [v_j = d].
ConstraintSystem build_system(const DigitSet& d, uint32_t k,
                              PairScheme scheme = PairScheme::first_to_all);

/// Projects a progression of vectors onto progression counts: coordinate j
/// contributes 1 to the column holding its (non-constant) scalar pattern;
/// constant coordinates are dropped.  The result is a nonnegative kernel
/// vector of the system whenever the input is a genuine AP in S(D, n).
std::vector<Int> project_ap_to_kernel(const ConstraintSystem& system,
                                      const std::vector<std::vector<uint32_t>>& ap_vectors);

}  // namespace apfree

#endif
