#ifndef APFREE_SEARCH_HPP
#define APFREE_SEARCH_HPP

#include <cstdint>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "feasex.hpp"

namespace apfree {

/// Append-only verdict store keyed by (m, k, canonical digit string).
/// Interrupted searches resume from it; entries carry the certificate type
/// so method statistics survive a resume.  Safe for concurrent lookup and
/// store; a verdict becomes visible only after its line hit the file.
class VerdictCache {
public:
    VerdictCache() = default;
    explicit VerdictCache(const std::string& path);  // loads existing entries

    std::optional<std::pair<bool, CertificateKind>> lookup(
        uint32_t m, uint32_t k, const std::vector<uint32_t>& digits) const;
    void store(uint32_t m, uint32_t k, const std::vector<uint32_t>& digits,
               bool admissible, CertificateKind kind);

    std::size_t size() const;

private:
    mutable std::mutex mu_;
    std::map<std::string, std::pair<bool, CertificateKind>> entries_;
    std::ofstream out_;
    bool persistent_ = false;
};

struct MethodBreakdown {
    uint64_t reduce_a = 0;
    uint64_t reduce_rref = 0;
    uint64_t lp_trivial = 0;
    uint64_t lp_witness = 0;  // not-admissible verdicts

    uint64_t total() const { return reduce_a + reduce_rref + lp_trivial + lp_witness; }
};

struct SearchReport {
    uint32_t p = 0;
    uint32_t k = 0;
    uint32_t max_size = 0;  // a lower bound when !complete
    std::optional<uint64_t> count_at_max;           // present iff complete
    std::optional<DigitSet> first_set;              // lexicographically first at max_size
    std::vector<std::vector<uint32_t>> max_sets;    // all admissible sets of max_size (complete runs)
    MethodBreakdown methods;
    double elapsed_seconds = 0.0;
    bool complete = true;
};

struct SearchOptions {
    uint32_t jobs = 1;
    double budget_seconds = 0.0;  // 0 = unlimited
    std::string cache_path;      // empty = in-memory only
    bool allow_composite = false;
    bool keep_max_sets = true;   // retain the max_sets list in the report
};

/// Depth-first extension search over subsets of Z_p in lexicographic order.
/// Only admissible prefixes are extended, which is exact: supersets of a
/// non-admissible set are never admissible.
SearchReport search_max(uint32_t p, uint32_t k, const SearchOptions& opts = {});

std::string search_report_json(const SearchReport& r);

struct TableExpectation {
    uint32_t p = 0;
    uint32_t k = 0;
    uint32_t size = 0;
    bool lower_bound_only = false;
    std::optional<uint64_t> count;
    std::optional<std::string> first_set_spec;
    bool starred = false;       // admissible but not reducible with A or rref(A)
    bool unverifiable = false;  // row whose printed set is not usable as-is
};

std::vector<TableExpectation> load_expected_table(const std::string& csv_path);
std::optional<TableExpectation> find_expectation(const std::vector<TableExpectation>& all,
                                                 uint32_t p, uint32_t k);
std::string default_expected_table_path();

struct RowVerification {
    bool pass = false;
    SearchReport report;
    std::vector<std::string> diffs;
};

/// Runs search_max and compares (max size, count, first-set admissibility)
/// against the expected row; inconsistencies inside the expected data itself
/// are flagged too.
RowVerification verify_table_row(uint32_t p, uint32_t k, const TableExpectation& expected,
                                 const SearchOptions& opts = {});

struct OrbitStats {
    uint64_t set_count = 0;
    uint64_t orbit_count = 0;
    std::vector<uint64_t> orbit_sizes;  // descending
};

/// Partitions the admissible sets of the given size into orbits of
/// x -> a x + b (gcd(a, p) = 1).  Requires the enumeration to complete.
OrbitStats affine_orbit_count(uint32_t p, uint32_t k, uint32_t size,
                              const SearchOptions& opts = {});

}  // namespace apfree

#endif
