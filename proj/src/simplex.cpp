#include "simplex.hpp"

#include <limits>

#include "error.hpp"

namespace apfree {

namespace {

constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct Tableau {
    std::vector<std::vector<Rat>> a;  // current rows (B^-1 A)
    std::vector<Rat> b;               // current right-hand side (B^-1 b), >= 0
    std::vector<Rat> cost;            // reduced costs of the min-form objective
    std::vector<std::size_t> basis;   // basic column per row

    std::size_t nrows() const { return a.size(); }

    void pivot(std::size_t pr, std::size_t pc) {
        auto& prow = a[pr];
        const Rat pv = prow[pc];
        for (Rat& v : prow)
            v /= pv;
        b[pr] /= pv;
        for (std::size_t i = 0; i < nrows(); ++i) {
            if (i == pr)
                continue;
            const Rat f = a[i][pc];
            if (f == 0)
                continue;
            for (std::size_t j = 0; j < prow.size(); ++j)
                if (prow[j] != 0)
                    a[i][j] -= f * prow[j];
            b[i] -= f * b[pr];
        }
        const Rat f = cost[pc];
        if (f != 0)
            for (std::size_t j = 0; j < prow.size(); ++j)
                if (prow[j] != 0)
                    cost[j] -= f * prow[j];
        basis[pr] = pc;
    }

    // Zero out reduced costs of basic columns.
    void price_out() {
        for (std::size_t i = 0; i < nrows(); ++i) {
            const Rat f = cost[basis[i]];
            if (f != 0)
                for (std::size_t j = 0; j < a[i].size(); ++j)
                    if (a[i][j] != 0)
                        cost[j] -= f * a[i][j];
        }
    }

    // Bland iterations over columns [0, ncols).  Returns false on unbounded.
    bool optimize(std::size_t ncols) {
        for (;;) {
            std::size_t enter = npos;
            for (std::size_t j = 0; j < ncols; ++j) {
                if (cost[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == npos)
                return true;
            std::size_t leave = npos;
            Rat best;
            for (std::size_t i = 0; i < nrows(); ++i) {
                if (a[i][enter] > 0) {
                    Rat ratio = b[i] / a[i][enter];
                    if (leave == npos || ratio < best ||
                        (ratio == best && basis[i] < basis[leave])) {
                        leave = i;
                        best = ratio;
                    }
                }
            }
            if (leave == npos)
                return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace

LpSolution simplex_max(const RatMatrix& e, const std::vector<Rat>& b,
                       const std::vector<Rat>& c) {
    const std::size_t m = e.rows();
    const std::size_t n = e.cols();
    if (b.size() != m || c.size() != n)
        throw Error(ErrorCode::invalid_argument, "simplex_max dimension mismatch");

    Tableau t;
    t.a.assign(m, std::vector<Rat>(n + m));
    t.b.resize(m);
    t.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const bool flip = b[i] < 0;
        for (std::size_t j = 0; j < n; ++j)
            t.a[i][j] = flip ? Rat(-e.at(i, j)) : e.at(i, j);
        t.a[i][n + i] = 1;
        t.b[i] = flip ? Rat(-b[i]) : b[i];
        t.basis[i] = n + i;
    }

    // Phase 1: min sum of artificials.
    t.cost.assign(n + m, Rat(0));
    for (std::size_t j = n; j < n + m; ++j)
        t.cost[j] = 1;
    t.price_out();
    if (!t.optimize(n + m))
        throw Error(ErrorCode::internal, "phase-1 objective unbounded");
    Rat infeas = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (t.basis[i] >= n)
            infeas += t.b[i];
    if (infeas > 0)
        return LpSolution{LpStatus::infeasible, Rat(0), {}};

    // Drive zero-valued artificials out of the basis; redundant rows vanish.
    for (std::size_t i = t.nrows(); i-- > 0;) {
        if (t.basis[i] < n)
            continue;
        std::size_t pc = npos;
        for (std::size_t j = 0; j < n; ++j) {
            if (t.a[i][j] != 0) {
                pc = j;
                break;
            }
        }
        if (pc != npos) {
            t.pivot(i, pc);  // degenerate pivot: b[i] == 0
        } else {
            t.a.erase(t.a.begin() + static_cast<std::ptrdiff_t>(i));
            t.b.erase(t.b.begin() + static_cast<std::ptrdiff_t>(i));
            t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
        }
    }

    // Phase 2 on the original columns: min (-c).x.
    for (auto& row : t.a)
        row.resize(n);
    t.cost.assign(n, Rat(0));
    for (std::size_t j = 0; j < n; ++j)
        t.cost[j] = -c[j];
    t.price_out();
    if (!t.optimize(n))
        return LpSolution{LpStatus::unbounded, Rat(0), {}};

    LpSolution sol;
    sol.status = LpStatus::optimal;
    sol.x.assign(n, Rat(0));
    for (std::size_t i = 0; i < t.nrows(); ++i)
        sol.x[t.basis[i]] = t.b[i];
    sol.objective = 0;
    for (std::size_t j = 0; j < n; ++j)
        if (sol.x[j] != 0)
            sol.objective += c[j] * sol.x[j];
    return sol;
}

}  // namespace apfree
