#ifndef APFREE_RATMATRIX_HPP
#define APFREE_RATMATRIX_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rat.hpp"

namespace apfree {

/// Dense exact-rational matrix.  All arithmetic is exact; there is no
/// floating point anywhere in the certification pipeline.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), e_(rows * cols) {}

    static RatMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Rat& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    const Rat& at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

    bool operator==(const RatMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    /// One row per line, exact values separated by single spaces.
    std::string to_text() const;
    static RatMatrix from_text(const std::string& text);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> e_;
};

/// Reduced row echelon form and rank.  Pivot rule: first nonzero entry in
/// column order, so the result is the (unique) RREF reached without any
/// magnitude-based pivoting.
std::pair<RatMatrix, std::size_t> rref(const RatMatrix& m);

RatMatrix mat_mul(const RatMatrix& l, const RatMatrix& r);

bool is_invertible(const RatMatrix& m);

}  // namespace apfree

#endif
