#ifndef APFREE_SIMPLEX_HPP
#define APFREE_SIMPLEX_HPP

#include <vector>

#include "ratmatrix.hpp"

namespace apfree {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    Rat objective;        // defined when optimal
    std::vector<Rat> x;   // defined when optimal; size = number of variables
};

/// Exact two-phase primal simplex for  max c.x  s.t.  E x = b, x >= 0.
/// Bland's rule throughout (smallest index enters; ties in the ratio test go
/// to the smallest basic variable), which rules out cycling on degenerate
/// instances.
LpSolution simplex_max(const RatMatrix& e, const std::vector<Rat>& b,
                       const std::vector<Rat>& c);

}  // namespace apfree

#endif
