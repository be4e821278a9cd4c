#include <doctest.h>

#include "sample_towers.hpp"
#include "zpt/errors.hpp"
#include "zpt/tadic.hpp"

using namespace zpt;
using namespace zpt::tadic;
using cyc::CycInt;

namespace {

mpz_class ipow(std::uint64_t p, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, e);
    return r;
}

}  // namespace

TEST_CASE("precision helpers") {
    CHECK(ceil_log(3, 1) == 0);
    CHECK(ceil_log(3, 9) == 2);
    CHECK(ceil_log(3, 10) == 3);
    CHECK(exponent_precision(3, 6, 9, 4) == 4 + 4 + 2);
    CHECK(exponent_precision(11, 6, 9, 4) == 4 + 2 + 2);
}

TEST_CASE("series from a tally") {
    lfun::ExponentTally t;
    t.modulus = 27;
    t.counts = {{0, 1}, {1, 2}};
    CHECK(series_from_tally(t, 3) == Series{3, 2, 0});
    t.counts = {{0, 4}};
    CHECK(series_from_tally(t, 3) == Series{4, 0, 0});
    t.counts = {{5, 1}};
    CHECK(series_from_tally(t, 7) == Series{1, 5, 10, 10, 5, 1, 0});
}

TEST_CASE("power sums against closed points") {
    const auto lw = lw_tower();
    CHECK(tadic_power_sum(lw.spec, 1, 3, 4) == Series{3, 2, 0});
    for (const auto& s : {lw_tower(), mixed_tower(), f9_tower(), f9_linear_tower(), oy_tower()}) {
        const int kmax = s.spec.q() > 9 ? 3 : 4;
        for (int k = 1; k <= kmax; ++k) {
            CAPTURE(s.name);
            CAPTURE(k);
            const int M = 8, N = 3;
            const Series got = tadic_power_sum(s.spec, k, M, N);
            // the oracle carries two more digits of the exponent than the library
            const int prec = exponent_precision(s.spec.p(), k, M, N) + 2;
            CHECK(got == oracle::euler_tadic_power_sum(s.plain, k, M, N, prec));
            CHECK(got[0] == ipow(s.spec.q(), k) % ipow(s.spec.p(), N));
        }
    }
}

TEST_CASE("L(T, s) against the Euler product") {
    for (const auto& s : {lw_tower(), mixed_tower(), f9_linear_tower()}) {
        CAPTURE(s.name);
        const int K = s.spec.q() > 3 ? 3 : 5, M = 7, N = 3;
        const auto L = tadic_l(s.spec, K, M, N);
        CHECK(L.stability_certified);
        const auto euler = oracle::euler_tadic_l(s.plain, K, M, N, L.frob_precision + 3);
        for (int k = 0; k <= K; ++k) CHECK(L.coeffs[k] == euler[k]);
        CHECK(mod_t_congruence(L));
    }
}

TEST_CASE("trivial and first coefficients") {
    const auto lw = lw_tower();
    const auto L0 = tadic_l(lw.spec, 0, 5, 3);
    REQUIRE(L0.coeffs.size() == 1);
    CHECK(L0.coeffs[0] == Series{1, 0, 0, 0, 0});
    const auto L = tadic_l(lw.spec, 3, 5, 3);
    CHECK(L.coeffs[0] == Series{1, 0, 0, 0, 0});
    CHECK(L.coeffs[1] == tadic_power_sum(lw.spec, 1, 5, 3));
    const auto j = L.to_json();
    CHECK(j["N_prime"] == L.frob_precision);
    CHECK(j["coeffs"][1][0] == "3");
}

TEST_CASE("precision stability") {
    const auto lw = lw_tower();
    const auto small = tadic_l(lw.spec, 4, 6, 3);
    const auto big = tadic_l(lw.spec, 5, 9, 5);
    const mpz_class mod = ipow(3, 3);
    for (int k = 0; k <= 4; ++k)
        for (int j = 0; j < 6; ++j) CHECK(small.coeffs[k][j] == big.coeffs[k][j] % mod);
}

TEST_CASE("specialization") {
    const auto lw = lw_tower();
    const auto L = tadic_l(lw.spec, 6, 9, 4);
    CHECK(within_horizon(L, 1));
    CHECK(within_horizon(L, 2));
    CHECK_FALSE(within_horizon(L, 3));
    CHECK_THROWS_AS(specialize_at_tn(L, 3), PrecisionError);

    const auto s1 = specialize_at_tn(L, 1);
    CHECK(s1.validity == 8);
    const auto l1 = lfun::l_polynomial(lw.spec, 1);
    CHECK(congruent_mod_pi(s1.coeffs[1], l1.coeffs[1], s1.validity));
    for (int k = 2; k <= 6; ++k) CHECK(congruent_mod_pi(s1.coeffs[k], CycInt(3, 1), s1.validity));

    const auto s2 = specialize_at_tn(L, 2);
    CHECK(s2.validity == 9);
    const auto l2 = lfun::l_polynomial(lw.spec, 2);
    for (int k = 0; k <= 5; ++k) CHECK(congruent_mod_pi(s2.coeffs[k], l2.coeffs[k], s2.validity));

    const auto s0 = specialize_at_tn(L, 0);
    CHECK(s0.validity == 8);
    CHECK(s0.coeffs[2] == CycInt::from_integer(3, 1, 9));

    // validity grows with M and N
    const auto wider = tadic_l(lw.spec, 2, 12, 5);
    CHECK(specialize_at_tn(wider, 2).validity >= s2.validity);
}

TEST_CASE("congruence modulo powers of pi") {
    const CycInt u = CycInt::uniformizer(3, 1);
    const CycInt a = CycInt::from_integer(3, 1, 1);
    CHECK(congruent_mod_pi(a + u * u, a, 2));
    CHECK_FALSE(congruent_mod_pi(a + u * u, a, 3));
    CHECK(congruent_mod_pi(a, a, 100));
}

TEST_CASE("weierstrass data") {
    CHECK(*weierstrass(Series{3, 1, 5}, 3) == std::pair<long, long>{0, 1});
    CHECK(*weierstrass(Series{9, 3, 6}, 3) == std::pair<long, long>{1, 1});
    CHECK_FALSE(weierstrass(Series{0, 0}, 3));

    const auto L = tadic_l(lw_tower().spec, 6, 9, 4);
    const auto w = weierstrass_at_s1(L);
    CHECK(w.certified);
    CHECK(w.mu == 0);
    CHECK(w.lambda == 0);
    CHECK(w.n_star == 2);
    CHECK(w.effective_M == 8);
}

TEST_CASE("eisenstein polynomial") {
    CHECK(eisenstein_min_poly(3, 1) == lfun::IntPoly{3, 3, 1});
    for (std::uint64_t p : {3, 5, 7}) {
        for (int n = 1; n <= 2; ++n) {
            const auto f = eisenstein_min_poly(p, n);
            CHECK(f.back() == 1);
            CHECK(f[0] == static_cast<long>(p));
            for (std::size_t i = 1; i + 1 < f.size(); ++i) CHECK(f[i] % static_cast<long>(p) == 0);
            CHECK(eisenstein_norm(p, n) == cyc::norm_to_Z(-CycInt::uniformizer(p, n)));
        }
    }
}
