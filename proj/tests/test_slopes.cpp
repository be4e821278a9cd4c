#include <doctest.h>

#include "zpt/errors.hpp"
#include "zpt/slopes.hpp"

using namespace zpt;
using namespace zpt::slopes;

namespace {

std::vector<mpq_class> grid(long denom) {
    std::vector<mpq_class> out;
    for (long i = 1; i < denom; ++i) out.emplace_back(i, denom);
    for (auto& x : out) x.canonicalize();
    return out;
}

}  // namespace

TEST_CASE("slope sequences") {
    SlopeSeq s(3, 2);
    s.add(mpq_class(2, 6));
    s.add(mpq_class(1, 3), 2);
    s.add(mpq_class(1, 2));
    CHECK(s.multiplicity(mpq_class(1, 3)) == 3);
    CHECK(s.total() == 4);
    CHECK(s.sum() == mpq_class(3, 2));
    CHECK(s.scale() == 9);
    CHECK(s.reflected().multiplicity(mpq_class(2, 3)) == 3);
    CHECK(s.scaled_multiplicities(2).total() == 8);
    s.remove(mpq_class(1, 3), 3);
    CHECK(s.total() == 1);
    CHECK_THROWS(s.remove(mpq_class(1, 3)));
    CHECK_THROWS(s.add(mpq_class(3, 2)));
    CHECK(rational_string(mpq_class(4, 6)) == "2/3");
}

TEST_CASE("ell and d multiplicities") {
    lfun::Engine e(tower::TowerSpec::monomial(3, 2));
    CHECK(ell_alpha(e.slopes(2), mpq_class(3, 2)) == 1);
    CHECK(ell_alpha(e.slopes(2), 0) == 0);
    CHECK(ell_alpha(e.slopes(2), 10) == 0);
    CHECK(d_alpha(e, 1, mpq_class(3, 2)) == 2);
    CHECK(d_alpha(e, 2, mpq_class(9, 2)) == 8);
    CHECK(d_alpha(e, 2, mpq_class(3, 2)) == 6);
    for (int n = 0; n <= 2; ++n) CHECK(d_alpha(e, n, 0) == 0);
}

TEST_CASE("arithmetic progression prediction") {
    const auto lw1 = SlopeSeq::from_list(3, 1, {mpq_class(1, 2)});
    CHECK(predict_stable_slopes(lw1, 2, 2, 3).same_multiset(SlopeSeq::from_list(3, 2, grid(6))));
    CHECK(predict_stable_slopes(lw1, 3, 2, 3).same_multiset(SlopeSeq::from_list(3, 3, grid(18))));
    CHECK(predict_stable_slopes(lw1, 1, 2, 3).same_multiset(lw1));

    const auto oy1 = SlopeSeq::from_list(11, 1, {mpq_class(2, 5), mpq_class(3, 5)});
    const auto oy2 = predict_stable_slopes(oy1, 2, 3, 11);
    CHECK(oy2.total() == 32);
    SlopeSeq expect(11, 2);
    for (int i = 0; i <= 10; ++i) {
        if (i > 0) expect.add(mpq_class(i, 11));
        expect.add((mpq_class(2, 5) + i) / 11);
        expect.add((mpq_class(3, 5) + i) / 11);
    }
    CHECK(oy2.same_multiset(expect));
    CHECK_THROWS_AS(predict_stable_slopes(oy1, 2, 2, 11), std::invalid_argument);
}

TEST_CASE("n0 detection") {
    lfun::Engine lw(tower::TowerSpec::monomial(3, 2));
    const auto r = detect_n0(lw, 2);
    REQUIRE(r.n0);
    CHECK(*r.n0 == 1);
    CHECK(r.verified_levels == std::vector<int>{2});
    CHECK(r.mismatched_levels.empty());
    CHECK(r.dwx_bound);
    CHECK(r.dwx_consistent);

    lfun::Engine oy(tower::TowerSpec::unit_root(11, {{1, 1}, {3, 1}}));
    const auto o = detect_n0(oy, 2);
    REQUIRE(o.n0);
    CHECK(*o.n0 == 1);
    CHECK(o.unverified_levels == std::vector<int>{2});
    CHECK(o.verified_levels.empty());
}

TEST_CASE("dwx bound") {
    // log_3(2/8) < 0: raw 1 + (-1), clamped to 1
    CHECK(dwx_bound_raw(2, 3, 1) == 0);
    CHECK(dwx_bound(2, 3, 1) == 1);
    CHECK(dwx_bound(3, 11, 1) == 1);
    CHECK(dwx_bound_raw(8, 3, 1) == 1);
    CHECK(dwx_bound_raw(9 * 8, 3, 1) == 3);
    CHECK(dwx_bound_raw(10 * 8, 3, 1) == 4);
}

TEST_CASE("equidistribution") {
    CHECK(equidistribution_stats(SlopeSeq::from_list(3, 1, {mpq_class(1, 2)})).ks_distance == mpq_class(1, 2));
    CHECK(equidistribution_stats(SlopeSeq::from_list(3, 2, grid(6))).ks_distance == mpq_class(1, 6));
    for (long m : {3L, 7L, 20L}) {
        CHECK(equidistribution_stats(SlopeSeq::from_list(3, 1, grid(m + 1))).ks_distance == mpq_class(1, m + 1));
    }
    const auto st = equidistribution_stats(SlopeSeq::from_list(3, 2, grid(6)), 10);
    CHECK(st.histogram == std::vector<long>{0, 1, 0, 1, 0, 1, 1, 0, 1, 0});
}

TEST_CASE("ramification bound") {
    CHECK(ramification_lower_bound(SlopeSeq::from_list(3, 1, {mpq_class(1, 2)})) == 2);
    CHECK(ramification_lower_bound(SlopeSeq::from_list(3, 2, grid(6))) == 6);
    CHECK(ramification_lower_bound(SlopeSeq::from_list(11, 1, {mpq_class(2, 5), mpq_class(3, 5)})) == 5);
}

TEST_CASE("closed slope formulas") {
    CHECK(oy_slopes(3, 11) == std::vector<mpq_class>{mpq_class(2, 5), mpq_class(3, 5)});
    // p = 1 mod d: the correction vanishes
    CHECK(oy_slopes(3, 7) == std::vector<mpq_class>{mpq_class(1, 3), mpq_class(2, 3)});
    CHECK(oy_hypotheses(3, 11, 1));
    CHECK_FALSE(oy_hypotheses(3, 7, 1));
    CHECK(lw_slopes(2, 3, 2) == grid(6));
    CHECK(lw_slopes(2, 3, 1) == std::vector<mpq_class>{mpq_class(1, 2)});
}
