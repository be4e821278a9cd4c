#ifndef ZPT_CYCLOTOMIC_HPP
#define ZPT_CYCLOTOMIC_HPP

// Exact arithmetic in Z[zeta] for zeta a primitive p^n-th root of unity,
// in the power basis 1, zeta, ..., zeta^{phi(p^n)-1}.

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace zpt::cyc {

// Non-negative integer or +infinity (the valuation of zero).
class Valuation {
   public:
    Valuation() = default;
    explicit Valuation(long value) : value_(value) {}
    static Valuation infinity() {
        Valuation v;
        v.infinite_ = true;
        return v;
    }

    bool is_infinite() const { return infinite_; }
    long value() const;  // throws for infinity

    bool operator==(const Valuation& rhs) const {
        return infinite_ == rhs.infinite_ && (infinite_ || value_ == rhs.value_);
    }
    bool operator<(const Valuation& rhs) const {
        if (infinite_) return false;
        return rhs.infinite_ || value_ < rhs.value_;
    }
    Valuation operator+(const Valuation& rhs) const {
        if (infinite_ || rhs.infinite_) return infinity();
        return Valuation(value_ + rhs.value_);
    }
    std::string to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

   private:
    long value_ = 0;
    bool infinite_ = false;
};

class CycInt {
   public:
    CycInt(std::uint64_t p, int level);  // zero

    static CycInt from_integer(std::uint64_t p, int level, const mpz_class& value);
    static CycInt zeta_power(std::uint64_t p, int level, long e);
    static CycInt uniformizer(std::uint64_t p, int level);  // 1 - zeta
    // Coefficients of zeta^j for j < coords.size(); any length, reduced mod Phi_{p^n}.
    static CycInt from_coords(std::uint64_t p, int level, std::vector<mpz_class> coords);
    // sum_e counts[e] * zeta^e over e in [0, p^level).
    static CycInt from_exponent_counts(std::uint64_t p, int level, std::span<const std::uint64_t> counts);

    std::uint64_t p() const { return p_; }
    int level() const { return level_; }
    std::size_t phi() const { return coords_.size(); }
    std::uint64_t order() const { return order_; }  // p^level
    const std::vector<mpz_class>& coords() const { return coords_; }
    const mpz_class& coord(std::size_t j) const { return coords_[j]; }

    bool is_zero() const;
    bool is_rational() const;
    // Image under zeta -> 1 (sum of coordinates).
    mpz_class augmentation() const;

    CycInt& operator+=(const CycInt& rhs);
    CycInt& operator-=(const CycInt& rhs);
    CycInt& operator*=(const CycInt& rhs);
    CycInt& operator*=(const mpz_class& scalar);
    CycInt operator-() const;
    friend CycInt operator+(CycInt lhs, const CycInt& rhs) { return lhs += rhs; }
    friend CycInt operator-(CycInt lhs, const CycInt& rhs) { return lhs -= rhs; }
    friend CycInt operator*(const CycInt& lhs, const CycInt& rhs);
    friend CycInt operator*(CycInt lhs, const mpz_class& rhs) { return lhs *= rhs; }
    bool operator==(const CycInt& rhs) const { return p_ == rhs.p_ && level_ == rhs.level_ && coords_ == rhs.coords_; }

    // Coordinate-wise exact division by an integer; throws ConsistencyError if inexact.
    CycInt exact_div(const mpz_class& divisor) const;
    bool divisible_by(const mpz_class& divisor) const;

    std::string to_string() const;

   private:
    void check_same_ring(const CycInt& rhs) const;

    std::uint64_t p_;
    int level_;
    std::uint64_t order_;
    std::vector<mpz_class> coords_;
};

CycInt cyc_mul(const CycInt& x, const CycInt& y);

// Number of times (1 - zeta) divides x; infinity for x = 0.
Valuation pi_valuation(const CycInt& x);

// y with (1 - zeta) y = x; throws std::domain_error if x is not divisible.
CycInt exact_div_by_uniformizer(const CycInt& x);

// zeta -> zeta^e; requires gcd(e, p) = 1.
CycInt galois_conjugate(const CycInt& x, long e);

// Product of all phi(p^n) conjugates.
mpz_class norm_to_Z(const CycInt& x);

struct HullSegment {
    mpq_class slope;
    long length;
    bool operator==(const HullSegment& rhs) const { return slope == rhs.slope && length == rhs.length; }
};

struct NewtonPolygon {
    std::vector<std::pair<long, Valuation>> points;
    std::vector<HullSegment> hull;  // slopes strictly increasing

    long degree() const;
    // Slopes repeated by segment length, weakly increasing.
    std::vector<mpq_class> slopes() const;
};

// Lower convex hull of (index, valuation), points at infinity skipped.
NewtonPolygon newton_polygon(std::span<const std::pair<long, Valuation>> points);

}  // namespace zpt::cyc

#endif  // ZPT_CYCLOTOMIC_HPP
