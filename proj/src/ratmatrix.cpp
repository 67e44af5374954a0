#include "ratmatrix.hpp"

#include <sstream>

#include "error.hpp"

namespace apfree {

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

std::string RatMatrix::to_text() const {
    std::ostringstream os;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if (c)
                os << ' ';
            os << rat_to_string(at(r, c));
        }
        os << '\n';
    }
    return os.str();
}

RatMatrix RatMatrix::from_text(const std::string& text) {
    std::vector<std::vector<Rat>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::istringstream ls(line);
        std::vector<Rat> row;
        std::string tok;
        while (ls >> tok)
            row.push_back(rat_from_string(tok));
        if (!rows.empty() && row.size() != rows.front().size())
            throw Error(ErrorCode::invalid_argument, "ragged matrix text");
        rows.push_back(std::move(row));
    }
    RatMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            m.at(r, c) = std::move(rows[r][c]);
    return m;
}

std::pair<RatMatrix, std::size_t> rref(const RatMatrix& in) {
    RatMatrix m = in;
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && m.at(piv, c) == 0)
            ++piv;
        if (piv == rows)
            continue;
        if (piv != rank)
            for (std::size_t j = 0; j < cols; ++j)
                std::swap(m.at(piv, j), m.at(rank, j));
        const Rat inv = m.at(rank, c);
        for (std::size_t j = c; j < cols; ++j)
            m.at(rank, j) /= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || m.at(i, c) == 0)
                continue;
            const Rat f = m.at(i, c);
            for (std::size_t j = c; j < cols; ++j)
                m.at(i, j) -= f * m.at(rank, j);
        }
        ++rank;
    }
    return {std::move(m), rank};
}

RatMatrix mat_mul(const RatMatrix& l, const RatMatrix& r) {
    if (l.cols() != r.rows())
        throw Error(ErrorCode::invalid_argument,
                    "mat_mul dimension mismatch: " + std::to_string(l.cols()) + " vs " +
                        std::to_string(r.rows()));
    RatMatrix out(l.rows(), r.cols());
    Rat acc;
    for (std::size_t i = 0; i < l.rows(); ++i) {
        for (std::size_t j = 0; j < r.cols(); ++j) {
            acc = 0;
            for (std::size_t t = 0; t < l.cols(); ++t)
                if (l.at(i, t) != 0 && r.at(t, j) != 0)
                    acc += l.at(i, t) * r.at(t, j);
            out.at(i, j) = acc;
        }
    }
    return out;
}

bool is_invertible(const RatMatrix& m) {
    if (m.rows() != m.cols())
        return false;
    return rref(m).second == m.rows();
}

}  // namespace apfree
