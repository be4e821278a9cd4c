#ifndef ZPT_LFUN_HPP
#define ZPT_LFUN_HPP

// L-functions L(chi_n, s) of the level-n characters of a tower, computed
// exactly from character sums over F_{q^k} and Newton's identities, plus
// the zeta and class-number data assembled from them.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "zpt/cyclotomic.hpp"
#include "zpt/ff.hpp"
#include "zpt/slope_seq.hpp"
#include "zpt/tower.hpp"

namespace zpt::lfun {

struct ComputeOptions {
    std::uint64_t budget = ff::kDefaultBudget;
    unsigned jobs = 1;
};

// The coefficients c_i of a tower carried into the Galois ring over F_{q^k}.
class EmbeddedTower {
   public:
    EmbeddedTower(const tower::TowerSpec& t, const ff::FieldPtr& field, int precision);

    const ff::FieldPtr& field() const { return field_; }
    int precision() const { return precision_; }
    const std::vector<std::pair<int, ff::GRElt>>& terms() const { return terms_; }

    // Tr(sum_i c_i tau(x)^i) in Z/p^precision.
    ff::Residue exponent_at(const ff::FFElt& x) const;

   private:
    ff::FieldPtr field_;
    int precision_;
    std::vector<std::pair<int, ff::GRElt>> terms_;
};

// Frobenius exponent F(x) of the point x in F_{q^k}, modulo p^n.
ff::Residue frobenius_exponent(const tower::TowerSpec& t, const ff::FFElt& x, int n);

// Multiset of F(x) mod p^precision over all x in F_{q^k}.
struct ExponentTally {
    std::uint64_t modulus = 0;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> counts;  // (exponent, count), sorted, counts > 0
    std::uint64_t total() const;
};

// Fast path: walks the multiplicative group by powers of a primitive element.
ExponentTally tally_exponents(const tower::TowerSpec& t, int k, int precision, const ComputeOptions& opts = {});
// Reference path: Teichmuller lift and trace at every point.
ExponentTally tally_exponents_pointwise(const tower::TowerSpec& t, int k, int precision,
                                        std::uint64_t budget = ff::kDefaultBudget);

// sum_e count(e) zeta_{p^n}^e.
cyc::CycInt tally_to_cyc(const ExponentTally& tally, std::uint64_t p, int n);

// S_k = sum_{x in F_{q^k}} zeta^{F(x)}. For n = 0 this is the integer q^k (held at level 1).
cyc::CycInt power_sum(const tower::TowerSpec& t, int n, int k, const ComputeOptions& opts = {});
cyc::CycInt power_sum_pointwise(const tower::TowerSpec& t, int n, int k, std::uint64_t budget = ff::kDefaultBudget);

struct LPoly {
    std::uint64_t p = 0;
    int a = 1;
    int level = 0;
    std::vector<cyc::CycInt> coeffs;      // b_0 = 1, ..., b_degree
    std::vector<cyc::CycInt> power_sums;  // S_1, ..., S_degree

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

// Coefficients b_1..b_degree from S_1..S_degree: k b_k = sum_{i<=k} S_i b_{k-i}.
LPoly newton_from_power_sums(std::uint64_t p, int a, int level, std::vector<cyc::CycInt> sums);

LPoly l_polynomial(const tower::TowerSpec& t, int n, const ComputeOptions& opts = {});

// S_k for k beyond the degree, read off the polynomial.
cyc::CycInt extended_power_sum(const LPoly& L, int k);

LPoly conjugate(const LPoly& L, long e);
cyc::CycInt evaluate_at_one(const LPoly& L);

SlopeSeq q_slopes(const LPoly& L);

using IntPoly = std::vector<mpz_class>;
IntPoly int_poly_mul(const IntPoly& x, const IntPoly& y);
mpz_class int_poly_eval(const IntPoly& f, const mpz_class& s);
// h with f = g h in Z[s], or nullopt if g does not divide f.
std::optional<IntPoly> int_poly_divide(const IntPoly& f, const IntPoly& g);

// Q(C_n, s): product of the phi(p^n) Galois conjugates of L.
IntPoly galois_orbit_product(const LPoly& L);

struct ZetaSlopes {
    int n = 0;
    SlopeSeq slopes;
    mpz_class genus;
};

// Memoizes L(chi_n, s) and derived data per level.
class Engine {
   public:
    explicit Engine(tower::TowerSpec t, ComputeOptions opts = {});

    const tower::TowerSpec& tower() const { return tower_; }
    const ComputeOptions& options() const { return opts_; }

    // q^{l(n)} fits the budget and the coefficients carry enough precision.
    bool level_within_budget(int n) const;
    // Largest m <= n_max with every level 1..m within budget (0 if none).
    int reachable_level(int n_max) const;

    const LPoly& l_poly(int n);
    const SlopeSeq& slopes(int n);
    const IntPoly& orbit_product(int n);
    // P(C_n, s) = prod_{j<=n} Q(C_j, s).
    IntPoly zeta_numerator(int n);
    ZetaSlopes zeta_slopes(int n);
    mpz_class class_number(int n);
    // Norm of L(chi_n, 1), i.e. h_n / h_{n-1}.
    mpz_class class_number_ratio(int n);

   private:
    tower::TowerSpec tower_;
    ComputeOptions opts_;
    std::map<int, LPoly> lpolys_;
    std::map<int, SlopeSeq> slopes_;
    std::map<int, IntPoly> orbits_;
    std::map<int, mpz_class> ratios_;
};

ZetaSlopes zeta_slopes(const tower::TowerSpec& t, int n, const ComputeOptions& opts = {});
mpz_class class_number(const tower::TowerSpec& t, int n, const ComputeOptions& opts = {});

}  // namespace zpt::lfun

#endif  // ZPT_LFUN_HPP
