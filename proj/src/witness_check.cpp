#include "witness_check.hpp"

#include <map>

#include "feasex.hpp"

namespace apfree {

bool verify_vector_ap(uint32_t m, const std::vector<uint32_t>& digits, uint32_t k,
                      const std::vector<std::vector<uint32_t>>& vectors) {
    if (m < 2 || k < 3 || digits.empty())
        return false;
    if (vectors.size() != k)
        return false;
    const std::size_t n = vectors.front().size();
    if (n == 0 || n % digits.size() != 0)
        return false;
    const std::size_t per_digit = n / digits.size();

    std::map<uint32_t, std::size_t> want;
    for (uint32_t d : digits) {
        if (d >= m)
            return false;
        if (!want.emplace(d, per_digit).second)
            return false;  // duplicate digit
    }

    // balanced membership, vector by vector
    for (const auto& v : vectors) {
        if (v.size() != n)
            return false;
        std::map<uint32_t, std::size_t> seen;
        for (uint32_t x : v) {
            if (x >= m)
                return false;
            ++seen[x];
        }
        if (seen != want)
            return false;
    }

    // common difference, computed from the first two vectors
    std::vector<uint32_t> diff(n);
    bool nonzero = false;
    for (std::size_t j = 0; j < n; ++j) {
        diff[j] = (vectors[1][j] + m - vectors[0][j]) % m;
        nonzero = nonzero || diff[j] != 0;
    }
    if (!nonzero)
        return false;
    for (std::size_t i = 2; i < vectors.size(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (vectors[i][j] != (vectors[i - 1][j] + diff[j]) % m)
                return false;

    // a progression of length k has k distinct points
    for (std::size_t i = 0; i < vectors.size(); ++i)
        for (std::size_t j = i + 1; j < vectors.size(); ++j)
            if (vectors[i] == vectors[j])
                return false;
    return true;
}

bool verify_expanded_witness(uint32_t m, const std::vector<uint32_t>& digits, uint32_t k,
                             const ExpandedWitness& w) {
    if (!verify_vector_ap(m, digits, k, w.vectors))
        return false;
    if (w.vectors.front().size() != w.n)
        return false;
    // the declared difference must match the actual one
    if (w.diff.size() != w.n)
        return false;
    for (std::size_t j = 0; j < w.n; ++j)
        if (w.diff[j] != (w.vectors[1][j] + m - w.vectors[0][j]) % m)
            return false;
    return true;
}

}  // namespace apfree
