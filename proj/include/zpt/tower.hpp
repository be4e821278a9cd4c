#ifndef ZPT_TOWER_HPP
#define ZPT_TOWER_HPP

// A Z_p-tower over the affine line, totally ramified at infinity, cut out by
// the Witt-vector equation F(y) - y = sum_i c_i [x^i] with a polynomial
// f(x) = sum_{(i,p)=1} c_i x^i over Z_q, plus its closed-form numerology.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zpt/ff.hpp"

namespace zpt::tower {

enum class CoeffKind { Teichmuller, Ring };

struct Coefficient {
    int exponent = 0;
    CoeffKind kind = CoeffKind::Teichmuller;
    // Teichmuller: digits of an element of F_q in [0, p).
    // Ring: coordinates of an element of (Z/p^N)[X]/(ground modulus) in [0, p^N).
    ff::Coords value;
    int precision = 0;  // N, ring coefficients only
};

class TowerSpec {
   public:
    TowerSpec(std::string label, std::uint64_t p, int a, std::vector<Coefficient> coeffs,
              std::optional<ff::Coords> ground_modulus = std::nullopt);

    // Single-term and two-term unit-root towers over F_p, mostly for tests.
    static TowerSpec monomial(std::uint64_t p, int exponent, std::string label = "");
    static TowerSpec unit_root(std::uint64_t p, const std::vector<std::pair<int, std::uint64_t>>& terms,
                               std::string label = "");

    const std::string& label() const { return label_; }
    std::uint64_t p() const { return p_; }
    int a() const { return a_; }
    std::uint64_t q() const { return q_; }
    const ff::Coords& ground_modulus() const { return ground_modulus_; }
    const std::vector<Coefficient>& coefficients() const { return coeffs_; }
    bool has_explicit_modulus() const { return explicit_modulus_; }

    int degree() const;          // largest exponent
    bool is_unit_root() const;   // every coefficient is a Teichmuller (root of unity) tag
    // v_p(c_i); nullopt when a ring coefficient is 0 mod p^N (valuation >= N).
    std::optional<int> valuation(const Coefficient& c) const;
    // Smallest precision among ring coefficients (unbounded -> nullopt).
    std::optional<int> coefficient_precision() const;
    // Throws PrecisionError if some ring coefficient has precision below n.
    void require_precision(int n) const;

    static TowerSpec from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

   private:
    std::string label_;
    std::uint64_t p_;
    int a_;
    std::uint64_t q_;
    std::vector<Coefficient> coeffs_;
    ff::Coords ground_modulus_;
    bool explicit_modulus_ = false;
};

// Raised by from_json; `field` names the offending JSON path.
class SchemaError : public std::invalid_argument {
   public:
    SchemaError(const std::string& field, const std::string& message)
        : std::invalid_argument(field + ": " + message), field_(field) {}
    const std::string& field() const { return field_; }

   private:
    std::string field_;
};

// Parses a tower spec file, reporting JSON syntax errors with line/column.
TowerSpec load_tower_file(const std::string& path);
TowerSpec parse_tower_text(const std::string& text);

// Artin conductor a(chi_n) = 1 + max_{v_p(c_i) < n} i p^{n-1-v_p(c_i)}.
long conductor(const TowerSpec& t, int n);
// Degree of L(chi_n, s): -1 + p^{n-1} max_{v_p(c_i) < n} i p^{-v_p(c_i)}, cross-checked against conductor - 2.
long l_degree(const TowerSpec& t, int n);
// d = max_i i / p^{v_p(c_i)}.
mpq_class slope_scale_d(const TowerSpec& t);
// g_n = (p - 1)/2 sum_{i=1}^n p^{i-1} l(i); g_0 = 0.
mpz_class genus(const TowerSpec& t, int n);
// True when l(n) = d p^{n-1} - 1 at level n.
bool degree_is_stable(const TowerSpec& t, int n);

struct GenusFit {
    mpq_class a, b, c;  // g_n = a p^{2n} + b p^n + c
    int n_lo = 0, n_hi = 0;
};
// Interpolates through n_lo..n_lo+2 and verifies up to n_hi; nullopt if some level disagrees.
std::optional<GenusFit> genus_stable_fit(const TowerSpec& t, int n_lo, int n_hi);

struct TowerNumerology {
    int n = 0;
    long conductor = 0;
    long degree = 0;
    mpq_class d;
    bool strongly_genus_stable = true;
    mpz_class genus;
};
TowerNumerology numerology(const TowerSpec& t, int n);

}  // namespace zpt::tower

#endif  // ZPT_TOWER_HPP
