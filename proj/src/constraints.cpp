#include "constraints.hpp"

#include <algorithm>
#include <map>

#include "error.hpp"

namespace apfree {

ConstraintSystem build_system(const DigitSet& d, uint32_t k, PairScheme scheme) {
    if (k < 3)
        throw Error(ErrorCode::precondition, "build_system requires k >= 3");

    std::vector<std::pair<uint32_t, uint32_t>> pairs;
    if (scheme == PairScheme::first_to_all) {
        for (uint32_t j = 2; j <= k; ++j)
            pairs.emplace_back(1, j);
    } else {
        for (uint32_t i = 1; i <= k; ++i)
            for (uint32_t j = i + 1; j <= k; ++j)
                pairs.emplace_back(i, j);
    }

    std::vector<Progression> progs = enumerate_progressions(d, k);
    const auto& digits = d.digits();

    // All-zero rows for digits untouched by any progression are kept so the
    // shape depends only on (|D|, k, scheme).
    RatMatrix a(pairs.size() * digits.size(), progs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        const uint32_t i = pairs[p].first - 1;
        const uint32_t j = pairs[p].second - 1;
        for (std::size_t di = 0; di < digits.size(); ++di) {
            const uint32_t dig = digits[di];
            const std::size_t row = p * digits.size() + di;
            for (std::size_t col = 0; col < progs.size(); ++col) {
                int v = (progs[col].terms[i] == dig ? 1 : 0) -
                        (progs[col].terms[j] == dig ? 1 : 0);
                if (v != 0)
                    a.at(row, col) = v;
            }
        }
    }

    return ConstraintSystem{d, k, scheme, std::move(progs), std::move(pairs), std::move(a)};
}

std::vector<Int> project_ap_to_kernel(const ConstraintSystem& system,
                                      const std::vector<std::vector<uint32_t>>& ap_vectors) {
    if (ap_vectors.size() != system.k)
        throw Error(ErrorCode::invalid_argument, "expected k vectors");
    const std::size_t n = ap_vectors.front().size();
    for (const auto& v : ap_vectors)
        if (v.size() != n)
            throw Error(ErrorCode::invalid_argument, "vectors of unequal dimension");

    std::map<std::pair<uint32_t, uint32_t>, std::size_t> col_of;
    for (std::size_t c = 0; c < system.progressions.size(); ++c)
        col_of[{system.progressions[c].start, system.progressions[c].diff}] = c;

    const uint32_t m = system.digit_set.m();
    std::vector<Int> x(system.progressions.size(), 0);
    for (std::size_t j = 0; j < n; ++j) {
        const uint32_t start = ap_vectors[0][j];
        const uint32_t second = ap_vectors[1][j];
        const uint32_t diff = (second + m - start) % m;
        if (diff == 0)
            continue;  // constant coordinate
        for (std::size_t i = 2; i < ap_vectors.size(); ++i) {
            const uint32_t expect =
                static_cast<uint32_t>((start + static_cast<uint64_t>(i) * diff) % m);
            if (ap_vectors[i][j] != expect)
                throw Error(ErrorCode::invalid_argument,
                            "coordinate " + std::to_string(j) + " is not an AP");
        }
        auto it = col_of.find({start, diff});
        if (it == col_of.end())
            throw Error(ErrorCode::invalid_argument,
                        "coordinate " + std::to_string(j) +
                            " carries a progression outside P_k(D)");
        x[it->second] += 1;
    }
    return x;
}

}  // namespace apfree
