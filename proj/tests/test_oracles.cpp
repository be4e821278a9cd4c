#include <doctest.h>

#include "oracles.hpp"

using namespace oracle;

TEST_CASE("small fields") {
    const SmallField F9(3, 2, {1, 0, 1});
    CHECK(F9.q() == 9);
    // Y * Y = -1
    CHECK(F9.mul(3, 3) == 2);
    for (u64 x = 1; x < 9; ++x) CHECK(F9.mul(x, F9.inv(x)) == 1);
    CHECK_THROWS(SmallField(3, 2, {2, 0, 1}));
}

TEST_CASE("irreducible counts") {
    // (1/d) sum_{e | d} mu(d/e) q^e
    const SmallField F3(3, 1, {0, 1});
    CHECK(irreducibles(F3, 1).size() == 3);
    CHECK(irreducibles(F3, 2).size() == 3);
    CHECK(irreducibles(F3, 3).size() == 8);
    CHECK(irreducibles(F3, 4).size() == 18);
    CHECK(irreducibles(SmallField(3, 2, {1, 0, 1}), 2).size() == 36);
    CHECK(irreducibles(SmallField(11, 1, {0, 1}), 2).size() == 55);
}

TEST_CASE("closed point exponents") {
    const SmallField F3(3, 1, {0, 1});
    const Tower t{3, 1, {0, 1}, {{2, true, {1}}}};
    // X + 1 has root 2, whose Teichmuller lift is -1
    CHECK(closed_point_exponent(t, F3, {1}, 3) == 1);
    CHECK(closed_point_exponent(t, F3, {0}, 3) == 0);
    // X^2 + 1: roots +-i with i^2 = -1, trace of -1 over the quadratic extension
    CHECK(closed_point_exponent(t, F3, {1, 0}, 3) == 27 - 2);
    const auto tally = euler_tally(t, 1, 1);
    CHECK(tally == std::map<u64, u64>{{0, 1}, {1, 2}});
}

TEST_CASE("point counts") {
    const SmallField F3(3, 1, {0, 1});
    CHECK(count_affine_points(F3, {{2, 1}}) == 3);
    // y^3 - y = x over F_3: every x = 0 has three y's, others none
    CHECK(count_affine_points(F3, {{1, 1}}) == 3);
    const SmallField F9(3, 2, {1, 0, 1});
    // y -> y^3 - y has kernel F_3, so its three values are each hit three times
    CHECK(count_affine_points(F9, {{1, 1}}) == 9);
}
