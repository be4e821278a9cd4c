#include <doctest.h>

#include "zpt/errors.hpp"
#include "zpt/tower.hpp"

using namespace zpt::tower;

namespace {

TowerSpec mixed() {
    // x^2 + 3 x^7 over Z_3
    return TowerSpec("mixed", 3, 1,
                     {{2, CoeffKind::Teichmuller, {1}, 0}, {7, CoeffKind::Ring, {3}, 4}});
}

// (p - 1)/2 sum_i p^{i-1} l(i) with l(i) = d p^{i-1} - 1, summed as geometric series
mpz_class genus_closed_form(long p, long d, int n) {
    mpz_class pn, p2n;
    mpz_ui_pow_ui(pn.get_mpz_t(), p, n);
    mpz_ui_pow_ui(p2n.get_mpz_t(), p, 2 * n);
    const mpz_class s2 = (p2n - 1) / (p * p - 1);
    const mpz_class s1 = (pn - 1) / (p - 1);
    return (p - 1) * (d * s2 - s1) / 2;
}

}  // namespace

TEST_CASE("conductor and degree") {
    const auto lw = TowerSpec::monomial(3, 2);
    CHECK(conductor(lw, 1) == 3);
    CHECK(conductor(lw, 2) == 7);
    CHECK(conductor(lw, 3) == 19);
    CHECK(l_degree(lw, 1) == 1);
    CHECK(l_degree(lw, 2) == 5);
    CHECK(conductor(mixed(), 2) == 8);
    CHECK(conductor(mixed(), 1) == 3);
    const auto oy = TowerSpec::unit_root(11, {{1, 1}, {3, 1}});
    CHECK(l_degree(oy, 1) == 2);
    for (int n = 1; n <= 4; ++n) {
        CHECK(l_degree(oy, n) == conductor(oy, n) - 2);
        CHECK(l_degree(mixed(), n) == conductor(mixed(), n) - 2);
    }
}

TEST_CASE("slope scale d") {
    CHECK(slope_scale_d(TowerSpec::monomial(3, 2)) == 2);
    CHECK(slope_scale_d(mixed()) == mpq_class(7, 3));
    CHECK(slope_scale_d(TowerSpec::unit_root(11, {{1, 1}, {3, 1}})) == 3);
}

TEST_CASE("genus") {
    const auto lw = TowerSpec::monomial(3, 2);
    CHECK(genus(lw, 0) == 0);
    CHECK(genus(lw, 1) == 1);
    CHECK(genus(lw, 2) == 16);
    for (int n = 1; n <= 6; ++n) CHECK(genus(lw, n) == genus_closed_form(3, 2, n));
    const auto oy = TowerSpec::unit_root(11, {{1, 1}, {3, 1}});
    for (int n = 1; n <= 4; ++n) CHECK(genus(oy, n) == genus_closed_form(11, 3, n));
    for (int n = 1; n <= 5; ++n) CHECK(genus(mixed(), n) >= genus(mixed(), n - 1));
}

TEST_CASE("genus fit") {
    const auto fit = genus_stable_fit(TowerSpec::monomial(3, 2), 1, 4);
    REQUIRE(fit);
    CHECK(fit->a == mpq_class(1, 4));
    CHECK(fit->b == mpq_class(-1, 2));
    CHECK(fit->c == mpq_class(1, 4));
    const auto oy = genus_stable_fit(TowerSpec::unit_root(11, {{1, 1}, {3, 1}}), 1, 4);
    REQUIRE(oy);
    CHECK(oy->a > 0);
    CHECK_THROWS_AS(genus_stable_fit(TowerSpec::monomial(3, 2), 1, 2), std::invalid_argument);
}

TEST_CASE("stable degree") {
    const auto lw = TowerSpec::monomial(3, 2);
    for (int n = 1; n <= 5; ++n) CHECK(degree_is_stable(lw, n));
    // x^2 + 3x^7: d = 7/3 is attained from level 2 on
    CHECK_FALSE(degree_is_stable(mixed(), 1));
    CHECK(degree_is_stable(mixed(), 2));
    CHECK(degree_is_stable(mixed(), 3));
    const auto num = numerology(lw, 2);
    CHECK(num.conductor == 7);
    CHECK(num.degree == 5);
    CHECK(num.genus == 16);
    CHECK(num.d == 2);
}

TEST_CASE("construction guards") {
    CHECK_THROWS_AS(TowerSpec::monomial(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(TowerSpec::monomial(9, 1), std::invalid_argument);
    CHECK_THROWS_AS(TowerSpec::monomial(3, 3), std::invalid_argument);
    CHECK_THROWS_AS(TowerSpec("x", 3, 1, {{2, CoeffKind::Ring, {3}, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(TowerSpec("x", 3, 2, {{2, CoeffKind::Teichmuller, {1, 0}, 0}}, zpt::ff::Coords{2, 0, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(mixed().require_precision(5), zpt::PrecisionError);
    mixed().require_precision(4);
}

TEST_CASE("json round trip") {
    const auto t = parse_tower_text(
        R"({"label": "f9", "p": 3, "a": 2, "modulus": [1, 0, 1],
            "coeffs": [{"i": 2, "kind": "teichmuller", "value": [1, 1]},
                       {"i": 4, "kind": "ring", "value": [3, 6], "precision": 3}]})");
    CHECK(t.label() == "f9");
    CHECK(t.q() == 9);
    CHECK(t.coefficients().size() == 2);
    CHECK(*t.valuation(t.coefficients()[1]) == 1);
    const auto back = TowerSpec::from_json(t.to_json());
    CHECK(back.to_json() == t.to_json());
}

TEST_CASE("json schema errors") {
    auto field_of = [](const std::string& text) {
        try {
            parse_tower_text(text);
        } catch (const SchemaError& e) {
            return e.field();
        }
        return std::string("no error");
    };
    CHECK(field_of(R"({"p": 3, "coeffs": [{"i": 2, "kind": "teichmuller", "value": [1]}], "extra": 1})") == "extra");
    CHECK(field_of(R"({"p": 3, "coeffs": [{"i": 2, "kind": "teichmuller", "value": [1], "x": 0}]})") ==
          "coeffs[0].x");
    CHECK(field_of(R"({"coeffs": [{"i": 2, "kind": "teichmuller", "value": [1]}]})") == "p");
    CHECK(field_of(R"({"p": 3, "coeffs": [{"i": 2, "kind": "other", "value": [1]}]})") == "coeffs[0].kind");
    CHECK(field_of(R"({"p": 3, "coeffs": []})") == "coeffs");
    CHECK(field_of("{\"p\": 3,\n \"coeffs\": [ }") == "line 2, column 14");
    try {
        parse_tower_text(R"({"p": 2, "coeffs": [{"i": 1, "kind": "teichmuller", "value": [1]}]})");
        FAIL("p = 2 accepted");
    } catch (const SchemaError& e) {
        CHECK(std::string(e.what()).find("p > 2") != std::string::npos);
    }
    CHECK_THROWS_AS(load_tower_file("/nonexistent/tower.json"), SchemaError);
}
