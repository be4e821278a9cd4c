#include "polymod.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace zpt::detail {

u64 pow_mod(u64 base, u64 e, u64 r) {
    u64 result = 1 % r;
    base %= r;
    while (e) {
        if (e & 1) result = mul_mod(result, base, r);
        base = mul_mod(base, base, r);
        e >>= 1;
    }
    return result;
}

u64 inv_mod(u64 a, u64 r) {
    __int128 t = 0, new_t = 1;
    __int128 rr = r, new_r = a % r;
    while (new_r != 0) {
        __int128 q = rr / new_r;
        std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
        std::tie(rr, new_r) = std::make_pair(new_r, rr - q * new_r);
    }
    if (rr != 1) throw std::domain_error("element is not invertible");
    if (t < 0) t += r;
    return static_cast<u64>(t);
}

u64 checked_pow(u64 base, unsigned e) {
    u64 result = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (base != 0 && result > (u64{1} << 63) / base) throw std::overflow_error("integer power exceeds 2^63");
        result *= base;
    }
    return result;
}

namespace {

bool miller_rabin_witness(u64 n, u64 a, u64 d, int s) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < s; ++i) {
        x = mul_mod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

u64 pollard_rho(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 x = 2, y = 2, d = 1;
        auto f = [&](u64 v) { return add_mod(mul_mod(v, v, n), c, n); };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor_into(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    for (u64 small : {2u, 3u, 5u, 7u, 11u, 13u}) {
        if (n % small == 0) {
            out.push_back(small);
            while (n % small == 0) n /= small;
            factor_into(n, out);
            return;
        }
    }
    if (is_prime_u64(n)) {
        out.push_back(n);
        return;
    }
    u64 d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 small : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % small == 0) return n == small;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (miller_rabin_witness(n, a, d, s)) return false;
    }
    return true;
}

std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> out;
    factor_into(n, out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, u64 r) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = add_mod(out[i + j], mul_mod(a[i], b[j], r), r);
    }
    return out;
}

void poly_reduce(Poly& a, const Poly& modulus, u64 r) {
    const std::size_t m = modulus.size() - 1;
    for (std::size_t top = a.size(); top-- > m;) {
        u64 c = a[top];
        if (c == 0) continue;
        a[top] = 0;
        for (std::size_t l = 0; l < m; ++l) a[top - m + l] = sub_mod(a[top - m + l], mul_mod(c, modulus[l], r), r);
    }
    a.resize(m, 0);
}

Poly mul_mod_poly(const Poly& a, const Poly& b, const Poly& modulus, u64 r) {
    Poly prod = poly_mul(a, b, r);
    poly_reduce(prod, modulus, r);
    return prod;
}

Poly pow_mod_poly(const Poly& base, u64 e, const Poly& modulus, u64 r) {
    Poly result(modulus.size() - 1, 0);
    result[0] = 1 % r;
    Poly b = base;
    poly_reduce(b, modulus, r);
    while (e) {
        if (e & 1) result = mul_mod_poly(result, b, modulus, r);
        e >>= 1;
        if (e) b = mul_mod_poly(b, b, modulus, r);
    }
    return result;
}

Poly poly_gcd_prime(Poly a, Poly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        u64 lead_inv = inv_mod(b.back(), p);
        while (a.size() >= b.size()) {
            u64 c = mul_mod(a.back(), lead_inv, p);
            std::size_t shift = a.size() - b.size();
            for (std::size_t l = 0; l < b.size(); ++l) a[shift + l] = sub_mod(a[shift + l], mul_mod(c, b[l], p), p);
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    if (!a.empty()) {
        u64 lead_inv = inv_mod(a.back(), p);
        for (auto& c : a) c = mul_mod(c, lead_inv, p);
    }
    return a;
}

bool is_irreducible_prime(const Poly& f, u64 p) {
    const std::size_t m = f.size() - 1;
    if (m == 0) return false;
    if (m == 1) return true;
    // Ben-Or: f is irreducible iff gcd(x^{p^i} - x, f) = 1 for 1 <= i <= m/2.
    Poly x(m, 0);
    x[1] = 1;
    Poly h = x;
    for (std::size_t i = 1; i <= m / 2; ++i) {
        h = pow_mod_poly(h, p, f, p);
        Poly diff = h;
        diff[1] = sub_mod(diff[1], 1, p);
        if (poly_gcd_prime(diff, f, p).size() != 1) return false;
    }
    return true;
}

}  // namespace zpt::detail
