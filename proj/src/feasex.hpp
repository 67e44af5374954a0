#ifndef APFREE_FEASEX_HPP
#define APFREE_FEASEX_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "constraints.hpp"
#include "reduce.hpp"

namespace apfree {

/// Exact verdict on the cone {x >= 0 : Ax = 0}.
struct FeasibilityResult {
    bool trivial = true;
    /// Present iff not trivial: integer vector with A.witness = 0,
    /// witness >= 0, witness != 0, gcd of entries 1.
    std::optional<std::vector<Int>> witness;
    /// Optimum of the deciding program  max sum x  s.t.  Ax = 0, 0 <= x <= 1;
    /// zero iff trivial.
    Rat lp_optimum;
};

/// Decides triviality by exact simplex on the box program.  Variables forced
/// to zero by sign-consistent rows are eliminated up front (they are zero in
/// every point of the cone, so the feasible set and the optimum are
/// unchanged); the witness is re-embedded and re-checked against the full
/// matrix.
FeasibilityResult decide_cone(const ConstraintSystem& system);

/// Greedy support minimization: repeatedly re-solves the box program with one
/// more coordinate pinned to zero, keeping the pin whenever the cone stays
/// nontrivial.
std::vector<Int> minimize_witness(const ConstraintSystem& system,
                                  const std::vector<Int>& witness);

/// A concrete k-term progression of vectors inside S(D, n).
struct ExpandedWitness {
    uint64_t n = 0;
    std::vector<std::vector<uint32_t>> vectors;  // k vectors in Z_m^n
    std::vector<uint32_t> diff;                  // common difference, nonzero
};

/// Lays out one coordinate per counted progression (witness_v copies of v's
/// terms down the k vectors) and pads every digit up to the maximum count
/// with constant coordinates, yielding n = |D| * max_d c_d.
ExpandedWitness expand_witness(const ConstraintSystem& system,
                               const std::vector<Int>& witness);

enum class CertificateKind {
    reduction_a,
    reduction_rref,
    reduction_custom,
    lp_trivial,
    witness,
};

const char* certificate_kind_name(CertificateKind kind);

/// Proof object attached to every verdict: a replayable reduction trace, an
/// LP record (optimum 0 plus the rank of A), or an expanded integer witness.
struct Certificate {
    CertificateKind kind = CertificateKind::lp_trivial;
    std::optional<ReductionTrace> trace;
    std::optional<Rat> lp_optimum;
    std::optional<std::size_t> rank;
    std::optional<std::vector<Int>> witness;
    std::optional<ExpandedWitness> expanded;
};

enum class Verdict { admissible, not_admissible, undetermined };

struct CheckResult {
    Verdict verdict = Verdict::undetermined;
    Certificate certificate;
    bool admissible() const { return verdict == Verdict::admissible; }
};

struct CheckOptions {
    enum class Method {
        automatic,    // reduce with A, then rref, then LP
        reduce_only,  // reduction only; stuck => undetermined
        lp_only,
    };
    Method method = Method::automatic;
    /// Restrict the reduction attempts to a single initial matrix.
    std::optional<InitialMatrix> initial;
    const RatMatrix* custom_t = nullptr;
    bool minimize_witness = false;
    /// Skip building the expanded witness (used by the search hot path).
    bool expand_witnesses = true;
    PairScheme scheme = PairScheme::first_to_all;
};

/// The full pipeline: reduction certificates first, exact LP as the decider.
/// Non-admissible verdicts carry an expanded witness that has been re-checked
/// by the independent verifier.
CheckResult check_admissible(const DigitSet& d, uint32_t k, const CheckOptions& opts = {});

/// {"digits":[...],"m":m,"k":k,"x":{"start,diff":count,...},"n":n,"vectors":[[...],...]}
std::string witness_json(const ConstraintSystem& system, const std::vector<Int>& witness,
                         const std::optional<ExpandedWitness>& expanded);

std::string check_report_json(const DigitSet& d, uint32_t k, const CheckResult& result);

}  // namespace apfree

#endif
