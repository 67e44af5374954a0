#ifndef APFREE_REDUCE_HPP
#define APFREE_REDUCE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "constraints.hpp"

namespace apfree {

enum class InitialMatrix { a, rref_form, custom };

enum class ReduceOutcome { reduced, stuck };

/// Row-selection strategy.  top_first is the canonical order used for
/// emitted traces; the final outcome is strategy-independent and a property
/// test pins that down against bottom_first.
enum class RowPick { top_first, bottom_first };

struct ReduceStep {
    std::size_t row;                           // index in the live matrix it was applied to
    int sign;                                  // +1 (non-negative row) or -1 (non-positive)
    std::vector<std::size_t> deleted_columns;  // original column numbering, ascending
};

/// Replayable record of one reduction run.  All-zero rows are pruned from
/// the working matrix up front and after every deletion, so step row indices
/// refer to the pruned ("live") matrix.  surviving_columns is derived data:
/// traces parsed from text leave it empty and verify_trace recomputes it.
struct ReductionTrace {
    InitialMatrix initial = InitialMatrix::a;
    std::vector<ReduceStep> steps;
    ReduceOutcome outcome = ReduceOutcome::stuck;
    std::vector<std::size_t> surviving_columns;  // original numbering; empty iff reduced
};

/// Iterated deletion of variables forced to zero by sign-consistent rows of
/// B, where B is A itself, rref(A), or T*A for a user-supplied invertible T.
/// Deleting all columns certifies that the nonnegative kernel is trivial.
ReductionTrace reduce(const ConstraintSystem& system, InitialMatrix initial,
                      const RatMatrix* custom_t = nullptr,
                      RowPick pick = RowPick::top_first);

/// Independent certificate checker: rebuilds the initial matrix and replays
/// the trace, confirming each step's row was sign-consistent and nonzero at
/// the time, that the deleted column sets match, and that the outcome claim
/// (including termination, for stuck traces) holds.
bool verify_trace(const ConstraintSystem& system, const ReductionTrace& trace,
                  const RatMatrix* custom_t = nullptr);

std::string trace_to_text(const ReductionTrace& trace);
ReductionTrace trace_from_text(const std::string& text);

}  // namespace apfree

#endif
