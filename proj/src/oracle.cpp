#include "oracle.hpp"

#include <algorithm>
#include <numeric>

#include "error.hpp"

namespace apfree {

namespace {

Int multinomial_equal_parts(std::size_t parts, uint64_t n) {
    // n! / ((n/parts)!)^parts
    const uint64_t each = n / parts;
    mpz_class result, f;
    mpz_fac_ui(result.get_mpz_t(), static_cast<unsigned long>(n));
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(each));
    mpz_pow_ui(f.get_mpz_t(), f.get_mpz_t(), static_cast<unsigned long>(parts));
    mpz_divexact(result.get_mpz_t(), result.get_mpz_t(), f.get_mpz_t());
    return result;
}

void require_divides(const DigitSet& d, uint64_t n) {
    if (n == 0 || n % d.size() != 0)
        throw Error(ErrorCode::precondition,
                    "|D| = " + std::to_string(d.size()) + " must divide n = " +
                        std::to_string(n));
}

void require_cap(const DigitSet& d, uint64_t n, uint64_t cap) {
    const Int count = s_size(d, n);
    if (count > cap)
        throw Error(ErrorCode::cap_exceeded,
                    "|S(D,n)| = " + count.get_str() + " exceeds the cap " +
                        std::to_string(cap));
}

// additive order of c in Z_m^n: lcm over coordinates of m / gcd(c_j, m)
uint64_t vector_order(const std::vector<uint32_t>& c, uint32_t m) {
    uint64_t ord = 1;
    for (uint32_t v : c)
        ord = std::lcm(ord, static_cast<uint64_t>(m / std::gcd(v, m)));
    return ord;
}

}  // namespace

Int s_size(const DigitSet& d, uint64_t n) {
    require_divides(d, n);
    return multinomial_equal_parts(d.size(), n);
}

SEnumerator::SEnumerator(const DigitSet& d, uint64_t n, uint64_t cap) {
    require_divides(d, n);
    require_cap(d, n, cap);
    const uint64_t each = n / d.size();
    cur_.reserve(n);
    for (uint32_t digit : d.digits())
        for (uint64_t i = 0; i < each; ++i)
            cur_.push_back(digit);
    // already the lexicographic minimum
}

bool SEnumerator::next(std::vector<uint32_t>& out) {
    if (done_)
        return false;
    if (first_) {
        first_ = false;
        out = cur_;
        return true;
    }
    if (!std::next_permutation(cur_.begin(), cur_.end())) {
        done_ = true;
        return false;
    }
    out = cur_;
    return true;
}

std::vector<std::vector<uint32_t>> materialize_s(const DigitSet& d, uint64_t n,
                                                 uint64_t cap) {
    SEnumerator en(d, n, cap);
    std::vector<std::vector<uint32_t>> all;
    std::vector<uint32_t> v;
    while (en.next(v))
        all.push_back(v);
    return all;
}

std::optional<VectorAp> find_ap_direct(const DigitSet& d, uint32_t k, uint64_t n,
                                       uint64_t cap) {
    if (k < 3)
        throw Error(ErrorCode::precondition, "progression length must be >= 3");
    const uint32_t m = d.m();
    const std::vector<std::vector<uint32_t>> s = materialize_s(d, n, cap);
    if (s.size() < k)
        return std::nullopt;

    std::vector<uint32_t> diff(n), neg(n), term(n);
    for (const auto& v : s) {
        for (const auto& w : s) {
            if (&v == &w)
                continue;
            bool zero = true;
            for (uint64_t j = 0; j < n; ++j) {
                diff[j] = (w[j] + m - v[j]) % m;
                neg[j] = (m - diff[j]) % m;
                zero = zero && diff[j] == 0;
            }
            if (zero || neg < diff)
                continue;  // scan each {c, -c} pair once
            if (vector_order(diff, m) < k)
                continue;  // repeated points are not a k-term progression
            term = w;
            bool ok = true;
            VectorAp ap;
            ap.vectors.push_back(v);
            ap.vectors.push_back(w);
            for (uint32_t i = 2; i < k && ok; ++i) {
                for (uint64_t j = 0; j < n; ++j)
                    term[j] = (term[j] + diff[j]) % m;
                ok = std::binary_search(s.begin(), s.end(), term);
                if (ok)
                    ap.vectors.push_back(term);
            }
            if (ok) {
                ap.diff = diff;
                return ap;
            }
        }
    }
    return std::nullopt;
}

std::optional<std::vector<Int>> bounded_integer_kernel(const ConstraintSystem& system,
                                                       uint32_t weight_cap) {
    if (weight_cap < 1)
        throw Error(ErrorCode::precondition, "weight cap must be >= 1");
    const std::size_t ncols = system.matrix.cols();
    const std::size_t nrows = system.matrix.rows();
    if (ncols == 0)
        return std::nullopt;

    // entries are in {-1, 0, 1} (distinct positions carry distinct values)
    std::vector<std::vector<int>> col(ncols, std::vector<int>(nrows));
    long max_col_l1 = 0;
    for (std::size_t c = 0; c < ncols; ++c) {
        long l1 = 0;
        for (std::size_t r = 0; r < nrows; ++r) {
            col[c][r] = static_cast<int>(system.matrix.at(r, c).get_num().get_si());
            l1 += std::abs(col[c][r]);
        }
        max_col_l1 = std::max(max_col_l1, l1);
    }

    std::vector<long> res(nrows, 0);
    std::vector<uint32_t> x(ncols, 0);
    std::optional<std::vector<Int>> found;

    auto feasible_bound = [&](uint32_t rem) {
        long maxabs = 0, l1 = 0;
        for (long v : res) {
            maxabs = std::max(maxabs, std::abs(v));
            l1 += std::abs(v);
        }
        return maxabs <= static_cast<long>(rem) &&
               l1 <= static_cast<long>(rem) * max_col_l1;
    };

    auto dfs = [&](auto&& self, std::size_t c, uint32_t rem) -> bool {
        if (rem == 0) {
            for (long v : res)
                if (v != 0)
                    return false;
            std::vector<Int> w(ncols);
            for (std::size_t i = 0; i < ncols; ++i)
                w[i] = x[i];
            found = std::move(w);
            return true;
        }
        if (c == ncols)
            return false;
        for (uint32_t cnt = 0; cnt <= rem; ++cnt) {
            if (cnt > 0)
                for (std::size_t r = 0; r < nrows; ++r)
                    res[r] += col[c][r];
            x[c] = cnt;
            if (feasible_bound(rem - cnt) && self(self, c + 1, rem - cnt))
                return true;
        }
        for (std::size_t r = 0; r < nrows; ++r)
            res[r] -= static_cast<long>(rem) * col[c][r];
        x[c] = 0;
        return false;
    };

    for (uint32_t w = 1; w <= weight_cap; ++w)
        if (dfs(dfs, 0, w))
            break;
    return found;
}

}  // namespace apfree
