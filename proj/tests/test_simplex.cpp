#include <doctest.h>

#include "error.hpp"
#include "simplex.hpp"

using namespace apfree;

namespace {

RatMatrix matrix(std::initializer_list<std::initializer_list<int>> rows) {
    RatMatrix m(rows.size(), rows.begin()->size());
    std::size_t r = 0;
    for (const auto& row : rows) {
        std::size_t c = 0;
        for (int v : row)
            m.at(r, c++) = v;
        ++r;
    }
    return m;
}

std::vector<Rat> rats(std::initializer_list<int> v) {
    return std::vector<Rat>(v.begin(), v.end());
}

void check_feasible(const RatMatrix& e, const std::vector<Rat>& b, const LpSolution& sol) {
    REQUIRE(sol.status == LpStatus::optimal);
    for (const Rat& x : sol.x)
        CHECK(x >= 0);
    for (std::size_t r = 0; r < e.rows(); ++r) {
        Rat acc = 0;
        for (std::size_t c = 0; c < e.cols(); ++c)
            acc += e.at(r, c) * sol.x[c];
        CHECK(acc == b[r]);
    }
}

}  // namespace

TEST_CASE("one-row box") {
    // max x1 + x2  s.t.  x1 + x2 + s = 1
    const RatMatrix e = matrix({{1, 1, 1}});
    const auto sol = simplex_max(e, rats({1}), rats({1, 1, 0}));
    check_feasible(e, rats({1}), sol);
    CHECK(sol.objective == 1);
}

TEST_CASE("negative right-hand sides are normalized") {
    // -x1 = -1, x1 <= 3  =>  x1 = 1, objective 1
    const RatMatrix e = matrix({{-1, 0}, {1, 1}});
    const auto sol = simplex_max(e, rats({-1, 3}), rats({1, 0}));
    check_feasible(e, rats({-1, 3}), sol);
    CHECK(sol.objective == 1);
    CHECK(sol.x[0] == 1);
}

TEST_CASE("infeasible system") {
    // x1 = 1 and x1 = 2
    const RatMatrix e = matrix({{1}, {1}});
    const auto sol = simplex_max(e, rats({1, 2}), rats({1}));
    CHECK(sol.status == LpStatus::infeasible);
}

TEST_CASE("unbounded objective") {
    // max x1 - x2 with x1 - x2 = free direction: x1 - x2 + 0*s = 0 has ray (t, t)
    const RatMatrix e = matrix({{1, -1}});
    const auto sol = simplex_max(e, rats({0}), rats({1, 0}));
    CHECK(sol.status == LpStatus::unbounded);
}

TEST_CASE("redundant rows are dropped during phase one") {
    // duplicated constraint: x1 + x2 = 1 twice
    const RatMatrix e = matrix({{1, 1}, {1, 1}});
    const auto sol = simplex_max(e, rats({1, 1}), rats({2, 1}));
    check_feasible(e, rats({1, 1}), sol);
    CHECK(sol.objective == 2);
}

TEST_CASE("fractional optimum is exact") {
    // max x1  s.t.  3 x1 + x2 = 1  ->  x1 = 1/3
    const RatMatrix e = matrix({{3, 1}});
    const auto sol = simplex_max(e, rats({1}), rats({1, 0}));
    check_feasible(e, rats({1}), sol);
    CHECK(sol.objective == Rat(1, 3));
}

TEST_CASE("a classic cycling-prone instance terminates under Bland") {
    // Beale's degenerate example in equality form (slacks appended):
    //   min -3/4 x1 + 150 x2 - 1/50 x3 + 6 x4
    //   1/4 x1 - 60 x2 - 1/25 x3 + 9 x4 + s1 = 0
    //   1/2 x1 - 90 x2 - 1/50 x3 + 3 x4 + s2 = 0
    //   x3 + s3 = 1
    RatMatrix e(3, 7);
    e.at(0, 0) = Rat(1, 4); e.at(0, 1) = -60; e.at(0, 2) = Rat(-1, 25); e.at(0, 3) = 9;
    e.at(0, 4) = 1;
    e.at(1, 0) = Rat(1, 2); e.at(1, 1) = -90; e.at(1, 2) = Rat(-1, 50); e.at(1, 3) = 3;
    e.at(1, 5) = 1;
    e.at(2, 2) = 1; e.at(2, 6) = 1;
    std::vector<Rat> b = rats({0, 0, 1});
    std::vector<Rat> c(7, Rat(0));
    c[0] = Rat(3, 4); c[1] = -150; c[2] = Rat(1, 50); c[3] = -6;  // maximize -objective

    const auto sol = simplex_max(e, b, c);
    check_feasible(e, b, sol);
    CHECK(sol.objective == Rat(1, 20));  // the known optimum of Beale's example
}

TEST_CASE("dimension mismatches are rejected") {
    CHECK_THROWS_AS(simplex_max(RatMatrix(2, 2), rats({1}), rats({1, 1})), Error);
    CHECK_THROWS_AS(simplex_max(RatMatrix(1, 2), rats({1}), rats({1})), Error);
}
