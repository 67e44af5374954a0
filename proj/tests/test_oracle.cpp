#include <doctest.h>

#include <set>

#include "error.hpp"
#include "feasex.hpp"
#include "oracle.hpp"
#include "test_util.hpp"
#include "witness_check.hpp"

using namespace apfree;
using apfree::test::interval_set;

TEST_CASE("materialize_s") {
    const auto two = materialize_s(DigitSet(Modulus(5), {0, 1}), 2);
    CHECK(two == std::vector<std::vector<uint32_t>>{{0, 1}, {1, 0}});

    const auto perms = materialize_s(DigitSet(Modulus(5), {0, 1, 2}), 3);
    CHECK(perms.size() == 6);
    CHECK(perms.front() == std::vector<uint32_t>{0, 1, 2});
    CHECK(perms.back() == std::vector<uint32_t>{2, 1, 0});
    CHECK(std::is_sorted(perms.begin(), perms.end()));

    const auto big = materialize_s(interval_set(11, 0, 5), 6);
    CHECK(big.size() == 720);
    CHECK(s_size(interval_set(11, 0, 5), 6) == 720);
}

TEST_CASE("caps are hard errors that name the count") {
    const DigitSet d = interval_set(11, 0, 5);
    CHECK(s_size(d, 12).get_str() == "7484400");
    try {
        materialize_s(d, 12, 1000);
        FAIL("expected a cap error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::cap_exceeded);
        CHECK(std::string(e.what()).find("7484400") != std::string::npos);
    }
    CHECK_THROWS_AS(materialize_s(d, 7), Error);  // |D| does not divide n
    CHECK_THROWS_AS(s_size(d, 0), Error);
}

TEST_CASE("streaming enumeration matches materialization") {
    const DigitSet d(Modulus(7), {0, 2, 5});
    SEnumerator en(d, 6);
    std::vector<std::vector<uint32_t>> streamed;
    std::vector<uint32_t> v;
    while (en.next(v))
        streamed.push_back(v);
    CHECK(streamed == materialize_s(d, 6));
    CHECK(streamed.size() == 90);  // 6! / (2!)^3
}

TEST_CASE("find_ap_direct") {
    SUBCASE("the admissible worked example has no progression at n = 6") {
        CHECK_FALSE(find_ap_direct(interval_set(11, 0, 5), 3, 6).has_value());
    }

    SUBCASE("an over-sized set yields a verifiable progression") {
        const DigitSet d = interval_set(5, 0, 3);
        const auto ap = find_ap_direct(d, 3, 4);
        REQUIRE(ap.has_value());
        CHECK(verify_vector_ap(5, {0, 1, 2, 3}, 3, ap->vectors));
        const auto ap8 = find_ap_direct(d, 3, 8);
        REQUIRE(ap8.has_value());
        CHECK(verify_vector_ap(5, {0, 1, 2, 3}, 3, ap8->vectors));
    }

    SUBCASE("k beyond the number of points") {
        CHECK_FALSE(find_ap_direct(DigitSet(Modulus(5), {0, 1}), 3, 2).has_value());
    }
}

TEST_CASE("bounded_integer_kernel") {
    SUBCASE("trivial instance") {
        const ConstraintSystem sys = build_system(interval_set(11, 0, 5), 3);
        CHECK_FALSE(bounded_integer_kernel(sys, 6).has_value());
    }

    SUBCASE("empty system") {
        const ConstraintSystem sys = build_system(DigitSet(Modulus(7), {0}), 3);
        CHECK_FALSE(bounded_integer_kernel(sys, 8).has_value());
    }

    SUBCASE("minimum weight witness for {0..4} mod 7") {
        const ConstraintSystem sys = build_system(interval_set(7, 0, 4), 3);
        const auto w = bounded_integer_kernel(sys, 8);
        REQUIRE(w.has_value());
        Int weight = 0;
        for (const Int& v : *w)
            weight += v;
        CHECK(weight == 5);
        for (std::size_t r = 0; r < sys.matrix.rows(); ++r) {
            Rat acc = 0;
            for (std::size_t c = 0; c < sys.matrix.cols(); ++c)
                acc += sys.matrix.at(r, c) * Rat((*w)[c]);
            CHECK(acc == 0);
        }
    }

    SUBCASE("weight cap must be positive") {
        const ConstraintSystem sys = build_system(interval_set(7, 0, 4), 3);
        CHECK_THROWS_AS(bounded_integer_kernel(sys, 0), Error);
    }
}

TEST_CASE("progressions found by the scan project into the kernel cone") {
    const DigitSet d = interval_set(5, 0, 3);
    const auto ap = find_ap_direct(d, 3, 8);
    REQUIRE(ap.has_value());
    const ConstraintSystem sys = build_system(d, 3);
    const auto x = project_ap_to_kernel(sys, ap->vectors);
    Int total = 0;
    for (const Int& v : x) {
        CHECK(v >= 0);
        total += v;
    }
    CHECK(total > 0);
    CHECK_FALSE(decide_cone(sys).trivial);  // an AP forces a nontrivial cone
}

TEST_CASE("oracle agreement across all subsets of Z_5 at k = 3") {
    const uint32_t m = 5;
    for (uint32_t mask = 1; mask < (1u << m); ++mask) {
        std::vector<uint32_t> digits;
        for (uint32_t d = 0; d < m; ++d)
            if (mask & (1u << d))
                digits.push_back(d);
        const DigitSet set(Modulus(m), digits);
        const ConstraintSystem sys = build_system(set, 3);
        const bool lp_trivial = decide_cone(sys).trivial;
        const bool kernel_absent = !bounded_integer_kernel(sys, 8).has_value();
        CHECK(lp_trivial == kernel_absent);

        // a progression found at small n implies a nontrivial cone
        const uint64_t n = set.size();
        if (const auto ap = find_ap_direct(set, 3, n))
            CHECK_FALSE(lp_trivial);
    }
}
