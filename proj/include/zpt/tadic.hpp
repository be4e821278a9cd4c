#ifndef ZPT_TADIC_HPP
#define ZPT_TADIC_HPP

// The T-adic L-function L(T, s) = prod_x 1 / (1 - (1+T)^{F(x)} s^{deg x})
// truncated modulo (p^N, T^M, s^{K+1}).

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zpt/cyclotomic.hpp"
#include "zpt/lfun.hpp"
#include "zpt/tower.hpp"

namespace zpt::tadic {

using Series = std::vector<mpz_class>;  // coefficients of T^0 .. T^{M-1}

// Least m >= 0 with p^m >= x.
int ceil_log(std::uint64_t p, const mpz_class& x);
// N + ceil(log_p(K M)) + 2.
int exponent_precision(std::uint64_t p, int K, int M, int N);

// sum_e count(e) (1+T)^e truncated at T^M, exact (not reduced).
Series series_from_tally(const lfun::ExponentTally& tally, int M);

// S_k(T) mod (p^N, T^M); exponent_prec defaults to exponent_precision(p, k, M, N).
Series tadic_power_sum(const tower::TowerSpec& t, int k, int M, int N, const lfun::ComputeOptions& opts = {},
                       std::optional<int> exponent_prec = std::nullopt);

struct TadicL {
    tower::TowerSpec tower;
    int K = 0, M = 0, N = 0;
    int frob_precision = 0;  // N'
    std::vector<Series> coeffs;  // L_0 .. L_K, each reduced mod p^N
    bool stability_certified = false;

    nlohmann::json to_json() const;
};

// exp(sum_k S_k(T) s^k / k) over Q, checked p-integral, reduced mod p^N; recomputed at N'+1 as a certificate.
TadicL tadic_l(const tower::TowerSpec& t, int K, int M, int N, const lfun::ComputeOptions& opts = {});

// L_k(0) = q^k mod p^N for every k <= K.
bool mod_t_congruence(const TadicL& L);

struct Specialization {
    int n = 0;
    long validity = 0;  // coefficients are correct modulo pi^validity
    std::vector<cyc::CycInt> coeffs;
};

// T -> zeta_{p^n} - 1; valid modulo pi^{min(N e, M)}, e = p^{n-1}(p-1). Requires e <= M.
// n = 0 is the substitution T = 0, held at level 1 with validity N (p - 1).
Specialization specialize_at_tn(const TadicL& L, int n);
bool within_horizon(const TadicL& L, int n);

// x = y mod pi^v in Z[zeta].
bool congruent_mod_pi(const cyc::CycInt& x, const cyc::CycInt& y, long v);

// (mu, lambda) of a series: min v_p of the coefficients and the first index attaining it.
std::optional<std::pair<long, long>> weierstrass(const Series& f, std::uint64_t p);

struct WeierstrassData {
    bool certified = false;
    long mu = 0;
    long lambda = 0;
    int n_star = 0;       // largest n with l(n) <= K
    long effective_M = 0;  // coefficients of L(T, 1) below this index are exact mod p
    std::string reason;
};

// Weierstrass data of L(T, 1) mod p, certified through the tail bound
// L_k(T) = 0 mod (p, T^{p^n - 1}) for k > l(n); cutoffs K and K-1 must agree.
WeierstrassData weierstrass_at_s1(const TadicL& L);

// ((1+T)^{p^n} - 1) / ((1+T)^{p^{n-1}} - 1), the minimal polynomial of t_n = zeta - 1.
lfun::IntPoly eisenstein_min_poly(std::uint64_t p, int n);
// Norm of t_n read off the minimal polynomial.
mpz_class eisenstein_norm(std::uint64_t p, int n);

}  // namespace zpt::tadic

#endif  // ZPT_TADIC_HPP
