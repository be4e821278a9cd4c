#ifndef ZPT_SRC_POLYMOD_HPP
#define ZPT_SRC_POLYMOD_HPP

// Dense polynomial arithmetic over Z/r for word-sized r (r <= 2^32), used
// by the finite-field and Galois-ring layers. Polynomials are coefficient
// vectors, lowest degree first. Moduli are monic.

#include <cstdint>
#include <vector>

namespace zpt::detail {

using u64 = std::uint64_t;
using Poly = std::vector<u64>;

inline constexpr u64 kMaxRingModulus = u64{1} << 32;

inline u64 add_mod(u64 a, u64 b, u64 r) {
    u64 s = a + b;
    return s >= r ? s - r : s;
}
inline u64 sub_mod(u64 a, u64 b, u64 r) { return a >= b ? a - b : a + r - b; }
inline u64 mul_mod(u64 a, u64 b, u64 r) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % r); }

u64 pow_mod(u64 base, u64 e, u64 r);
u64 inv_mod(u64 a, u64 r);  // throws if gcd(a, r) != 1

// Checked integer power; throws std::overflow_error past 2^63.
u64 checked_pow(u64 base, unsigned e);

bool is_prime_u64(u64 n);
std::vector<u64> prime_factors(u64 n);  // distinct, ascending

void trim(Poly& a);
Poly poly_mul(const Poly& a, const Poly& b, u64 r);
// Reduces `a` modulo the monic `modulus` in place; result has size deg(modulus).
void poly_reduce(Poly& a, const Poly& modulus, u64 r);
Poly mul_mod_poly(const Poly& a, const Poly& b, const Poly& modulus, u64 r);
Poly pow_mod_poly(const Poly& base, u64 e, const Poly& modulus, u64 r);
// gcd over the prime field F_p, returned monic (empty for the zero polynomial).
Poly poly_gcd_prime(Poly a, Poly b, u64 p);
bool is_irreducible_prime(const Poly& f, u64 p);

// Reduces a polynomial modulo x^m + sum_{l<m} c_l x^l given the negated
// low coefficients neg[l] = -c_l mod r: multiply-by-x with wraparound.
inline void shift_mul_x(u64* u, const u64* neg, int m, u64 r) {
    u64 top = u[m - 1];
    for (int l = m - 1; l > 0; --l) u[l] = (u[l - 1] + neg[l] * top) % r;
    u[0] = (neg[0] * top) % r;
}

}  // namespace zpt::detail

#endif  // ZPT_SRC_POLYMOD_HPP
