#ifndef ZPT_SLOPES_HPP
#define ZPT_SLOPES_HPP

// Slope bookkeeping along a tower: multiplicities, the arithmetic-progression
// prediction of stable slopes, n0 detection and simple statistics.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "zpt/lfun.hpp"
#include "zpt/slope_seq.hpp"
#include "zpt/tower.hpp"

namespace zpt::slopes {

// Multiplicity of alpha / p^n among the q-slopes of L(chi_n, s).
long ell_alpha(const SlopeSeq& s, const mpq_class& alpha);

// Number of zeta slopes of C_n equal to alpha / p^n, aggregated over the
// levels 1..n and cross-checked against the zeta slope multiset.
long d_alpha(lfun::Engine& engine, int n, const mpq_class& alpha);

// The level-n slope multiset generated from the level-k base by the
// arithmetic-progression rule, with one copy of 0 removed.
SlopeSeq predict_stable_slopes(const SlopeSeq& base, int n, const mpq_class& d, std::uint64_t p);

struct StabilityReport {
    std::optional<int> n0;
    SlopeSeq base_slopes;
    std::vector<int> verified_levels;
    std::vector<int> unverified_levels;  // levels <= n_max beyond the budget
    std::vector<int> mismatched_levels;  // from the smallest degree-stable candidate
    std::optional<int> dwx_bound;        // unit-root towers only
    std::optional<int> dwx_raw;
    bool dwx_consistent = true;
};

// Smallest k <= n_max whose prediction matches every computed level k+1..n_max.
StabilityReport detect_n0(lfun::Engine& engine, int n_max);

// 1 + ceil(log_p(d a / 8)), before and after clamping to >= 1.
int dwx_bound_raw(const mpq_class& d, std::uint64_t p, int a);
int dwx_bound(const mpq_class& d, std::uint64_t p, int a);

struct Equidistribution {
    mpq_class ks_distance;
    std::vector<long> histogram;
};
Equidistribution equidistribution_stats(const SlopeSeq& s, int bins = 10);

// lcm of the reduced denominators of a * slope.
mpz_class ramification_lower_bound(const SlopeSeq& s, int a = 1);

// alpha_i = i/d + (d-1)/(d(p-1)) (ip - [ip/d] d - i), i = 1..d-1.
std::vector<mpq_class> oy_slopes(int d, std::uint64_t p);
// Hypotheses p > max(d^2(d-1)/2, 1 + d(d-1)/4 log_p q) of the two-term unit-root formula.
bool oy_hypotheses(int d, std::uint64_t p, int a);
// {i / (d p^{n-1})}, valid for unit-root monomial-type towers with p = 1 mod d.
std::vector<mpq_class> lw_slopes(int d, std::uint64_t p, int n);

}  // namespace zpt::slopes

#endif  // ZPT_SLOPES_HPP
