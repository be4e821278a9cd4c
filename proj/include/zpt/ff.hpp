#ifndef ZPT_FF_HPP
#define ZPT_FF_HPP

// Finite fields F_{q^k} (q = p^a) and the Galois rings W_n(F_{q^k}) that
// carry Teichmuller lifts and traces.
//
// A field of degree m = a*k over F_p is F_p[X]/(M(X)) with M the
// lexicographically least monic irreducible of degree m. The Galois ring of
// precision n is (Z/p^n)[X]/(M(X)), M read as an integer polynomial.

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

namespace zpt::ff {

using Residue = std::uint64_t;
using Coords = std::vector<Residue>;

inline constexpr std::uint64_t kDefaultBudget = 200'000'000;

bool is_prime(std::uint64_t n);

class FieldDesc;
using FieldPtr = std::shared_ptr<const FieldDesc>;

class FieldDesc {
   public:
    // F_{q^k} with the default (lexicographically least) model of F_q.
    static FieldPtr make(std::uint64_t p, int a, int k);
    // F_{q^k} where F_q = F_p[X]/(ground_modulus); ground_modulus is monic of degree a.
    static FieldPtr make(std::uint64_t p, int a, int k, const Coords& ground_modulus);

    // Lexicographically least monic irreducible of degree m over F_p; the
    // coefficient vector c_0..c_{m-1} is scanned as the base-p integer sum c_j p^j.
    static Coords least_irreducible(std::uint64_t p, int m);

    std::uint64_t p() const { return p_; }
    int a() const { return a_; }
    int k() const { return k_; }
    int degree() const { return a_ * k_; }
    std::uint64_t q() const { return q_; }
    std::uint64_t order() const { return order_; }  // q^k

    const Coords& modulus() const { return modulus_; }
    const Coords& ground_modulus() const { return ground_modulus_; }
    // A root of ground_modulus inside this field: the image of the generator of F_q.
    const Coords& subfield_root() const { return subfield_root_; }
    // Generator of the multiplicative group (least in base-p order).
    const Coords& primitive_element() const { return primitive_; }

    // Tr(X^l) in (Z/r)[X]/(M) for l < degree, r = p^precision.
    Coords trace_vector(int precision) const;

   private:
    FieldDesc() = default;

    std::uint64_t p_ = 0;
    int a_ = 0;
    int k_ = 0;
    std::uint64_t q_ = 0;
    std::uint64_t order_ = 0;
    Coords modulus_;
    Coords ground_modulus_;
    Coords subfield_root_;
    Coords primitive_;
};

class FFElt {
   public:
    FFElt(FieldPtr field, Coords coords);

    static FFElt zero(FieldPtr field);
    static FFElt one(FieldPtr field);
    static FFElt from_index(FieldPtr field, std::uint64_t index);  // base-p digits as coords

    const FieldDesc& field() const { return *field_; }
    const FieldPtr& field_ptr() const { return field_; }
    const Coords& coords() const { return coords_; }
    bool is_zero() const;

    FFElt operator+(const FFElt& rhs) const;
    FFElt operator-(const FFElt& rhs) const;
    FFElt operator*(const FFElt& rhs) const;
    FFElt pow(std::uint64_t e) const;
    FFElt inverse() const;
    bool operator==(const FFElt& rhs) const { return coords_ == rhs.coords_; }

   private:
    FieldPtr field_;
    Coords coords_;
};

// Element of the Galois ring (Z/p^n)[X]/(M(X)) over a FieldDesc.
class GRElt {
   public:
    GRElt(FieldPtr field, int precision, Coords coords);

    static GRElt zero(FieldPtr field, int precision);
    static GRElt one(FieldPtr field, int precision);
    static GRElt from_integer(FieldPtr field, int precision, std::uint64_t value);
    // Coordinate-wise lift of a field element with digits in [0, p).
    static GRElt lift(const FFElt& x, int precision);

    const FieldDesc& field() const { return *field_; }
    const FieldPtr& field_ptr() const { return field_; }
    int precision() const { return precision_; }
    std::uint64_t ring_modulus() const { return r_; }
    const Coords& coords() const { return coords_; }
    bool is_zero() const;

    GRElt operator+(const GRElt& rhs) const;
    GRElt operator-(const GRElt& rhs) const;
    GRElt operator*(const GRElt& rhs) const;
    GRElt pow(std::uint64_t e) const;
    GRElt inverse() const;  // unit inverse; throws if reduction mod p is zero
    bool operator==(const GRElt& rhs) const { return precision_ == rhs.precision_ && coords_ == rhs.coords_; }

    FFElt reduce() const;
    GRElt with_precision(int precision) const;  // reduction to a lower precision

   private:
    FieldPtr field_;
    int precision_;
    std::uint64_t r_;
    Coords coords_;
};

// The unique z = x mod p with z^{q^k} = z, by iterating z <- z^{q^k}.
GRElt teichmuller_lift(const FFElt& x, int precision);

// Trace from the Galois ring down to Z/p^n.
Residue gr_trace(const GRElt& z);

// Root of the ground modulus lifted by Newton iteration to the given precision:
// the image of the generator of the ground ring (Z/p^N)[X]/(ground_modulus).
GRElt ground_generator_lift(const FieldPtr& field, int precision);

// Visits every element of the field once, coords in base-p counting order.
// Throws BudgetExceeded if q^k > budget.
void enumerate_field(const FieldPtr& field, std::uint64_t budget, const std::function<void(const FFElt&)>& visit);

}  // namespace zpt::ff

#endif  // ZPT_FF_HPP
