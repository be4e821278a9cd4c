#include "zpt/ff.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>

#include "polymod.hpp"
#include "zpt/errors.hpp"

namespace zpt::ff {

using detail::Poly;
using detail::u64;

bool is_prime(std::uint64_t n) { return detail::is_prime_u64(n); }

namespace {

u64 ring_modulus_for(u64 p, int precision) {
    if (precision < 1) throw std::invalid_argument("Galois ring precision must be >= 1");
    u64 r = detail::checked_pow(p, static_cast<unsigned>(precision));
    if (r > detail::kMaxRingModulus) {
        throw PrecisionError("p^" + std::to_string(precision) + " exceeds the word-sized ring limit 2^32");
    }
    return r;
}

// Evaluates the integer polynomial `poly` (coefficients in [0, p)) at z.
GRElt eval_at(const Coords& poly, const GRElt& z) {
    GRElt acc = GRElt::zero(z.field_ptr(), z.precision());
    for (std::size_t i = poly.size(); i-- > 0;) {
        acc = acc * z + GRElt::from_integer(z.field_ptr(), z.precision(), poly[i]);
    }
    return acc;
}

FFElt eval_at(const Coords& poly, const FFElt& z) {
    Coords zero(z.coords().size(), 0);
    FFElt acc(z.field_ptr(), zero);
    for (std::size_t i = poly.size(); i-- > 0;) {
        Coords c(z.coords().size(), 0);
        c[0] = poly[i] % z.field().p();
        acc = acc * z + FFElt(z.field_ptr(), c);
    }
    return acc;
}

Coords derivative(const Coords& poly) {
    Coords out;
    for (std::size_t i = 1; i < poly.size(); ++i) out.push_back(poly[i] * i);
    if (out.empty()) out.push_back(0);
    return out;
}

}  // namespace

Coords FieldDesc::least_irreducible(std::uint64_t p, int m) {
    if (m < 1) throw std::invalid_argument("field degree must be >= 1");
    u64 count = detail::checked_pow(p, static_cast<unsigned>(m));
    for (u64 index = 0; index < count; ++index) {
        Poly f(m + 1, 0);
        u64 rest = index;
        for (int j = 0; j < m; ++j) {
            f[j] = rest % p;
            rest /= p;
        }
        f[m] = 1;
        if (detail::is_irreducible_prime(f, p)) return f;
    }
    throw std::logic_error("no irreducible polynomial found");
}

FieldPtr FieldDesc::make(std::uint64_t p, int a, int k) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    if (a < 1 || k < 1) throw std::invalid_argument("field degree must be >= 1");
    return make(p, a, k, least_irreducible(p, a));
}

FieldPtr FieldDesc::make(std::uint64_t p, int a, int k, const Coords& ground_modulus) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
    if (a < 1 || k < 1) throw std::invalid_argument("field degree must be >= 1");
    if (ground_modulus.size() != static_cast<std::size_t>(a) + 1 || ground_modulus.back() != 1) {
        throw std::invalid_argument("ground modulus must be monic of degree a");
    }
    for (auto c : ground_modulus) {
        if (c >= p) throw std::invalid_argument("ground modulus coefficients must lie in [0, p)");
    }
    if (!detail::is_irreducible_prime(ground_modulus, p)) {
        throw std::invalid_argument("ground modulus is not irreducible mod p");
    }

    using Key = std::tuple<u64, int, int, Coords>;
    static std::mutex mutex;
    static std::map<Key, FieldPtr> cache;
    Key key{p, a, k, ground_modulus};
    {
        std::lock_guard<std::mutex> lock(mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }

    const int m = a * k;
    std::shared_ptr<FieldDesc> desc(new FieldDesc());
    desc->p_ = p;
    desc->a_ = a;
    desc->k_ = k;
    desc->q_ = detail::checked_pow(p, static_cast<unsigned>(a));
    desc->order_ = detail::checked_pow(p, static_cast<unsigned>(m));
    desc->ground_modulus_ = ground_modulus;
    desc->modulus_ = (k == 1) ? ground_modulus : least_irreducible(p, m);

    // Primitive element: least index whose order is exactly q^k - 1.
    const u64 group_order = desc->order_ - 1;
    const auto primes = detail::prime_factors(group_order);
    auto raw = std::const_pointer_cast<const FieldDesc>(desc);
    for (u64 index = 1; index < desc->order_; ++index) {
        FFElt g = FFElt::from_index(raw, index);
        bool generates = true;
        for (u64 r : primes) {
            Coords power = g.pow(group_order / r).coords();
            Coords unit(m, 0);
            unit[0] = 1;
            if (power == unit) {
                generates = false;
                break;
            }
        }
        if (generates) {
            desc->primitive_ = g.coords();
            break;
        }
    }
    if (desc->primitive_.empty()) throw std::logic_error("no primitive element found");

    // The ground field is the fixed field of x -> x^q; its roots of the ground
    // modulus are among 0 and the powers of g^{(q^k-1)/(q-1)}.
    if (k == 1) {
        Coords x(m, 0);
        if (m == 1) {
            x[0] = (p - ground_modulus[0]) % p;
        } else {
            x[1] = 1;
        }
        desc->subfield_root_ = x;
    } else {
        FFElt h = FFElt(raw, desc->primitive_).pow(group_order / (desc->q_ - 1));
        FFElt y = FFElt::zero(raw);
        bool found = eval_at(ground_modulus, y).is_zero();
        if (!found) {
            y = FFElt::one(raw);
            for (u64 j = 0; j + 1 < desc->q_; ++j) {
                if (eval_at(ground_modulus, y).is_zero()) {
                    found = true;
                    break;
                }
                y = y * h;
            }
        }
        if (!found) throw std::logic_error("ground modulus has no root in the extension");
        desc->subfield_root_ = y.coords();
    }

    std::lock_guard<std::mutex> lock(mutex);
    auto [it, inserted] = cache.emplace(std::move(key), raw);
    return it->second;
}

Coords FieldDesc::trace_vector(int precision) const {
    const u64 r = ring_modulus_for(p_, precision);
    const int m = degree();
    // Power sums of the roots of the monic modulus via Newton's identities.
    Coords c(modulus_.size());
    for (std::size_t i = 0; i < modulus_.size(); ++i) c[i] = modulus_[i] % r;
    Coords ps(m, 0);
    ps[0] = static_cast<u64>(m) % r;
    for (int l = 1; l < m; ++l) {
        u64 acc = detail::mul_mod(static_cast<u64>(l) % r, c[m - l], r);
        for (int i = 1; i < l; ++i) acc = detail::add_mod(acc, detail::mul_mod(c[m - i], ps[l - i], r), r);
        ps[l] = detail::sub_mod(0, acc, r);
    }
    return ps;
}

// ---------------------------------------------------------------------------

FFElt::FFElt(FieldPtr field, Coords coords) : field_(std::move(field)), coords_(std::move(coords)) {
    const auto m = static_cast<std::size_t>(field_->degree());
    const u64 p = field_->p();
    for (auto& c : coords_) c %= p;
    if (coords_.size() > m) {
        detail::poly_reduce(coords_, field_->modulus(), p);
    }
    coords_.resize(m, 0);
}

FFElt FFElt::zero(FieldPtr field) {
    Coords c(field->degree(), 0);
    return FFElt(std::move(field), std::move(c));
}

FFElt FFElt::one(FieldPtr field) {
    Coords c(field->degree(), 0);
    c[0] = 1;
    return FFElt(std::move(field), std::move(c));
}

FFElt FFElt::from_index(FieldPtr field, std::uint64_t index) {
    Coords c(field->degree(), 0);
    for (auto& digit : c) {
        digit = index % field->p();
        index /= field->p();
    }
    return FFElt(std::move(field), std::move(c));
}

bool FFElt::is_zero() const {
    for (auto c : coords_)
        if (c) return false;
    return true;
}

FFElt FFElt::operator+(const FFElt& rhs) const {
    Coords out(coords_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = detail::add_mod(coords_[i], rhs.coords_[i], field_->p());
    return FFElt(field_, std::move(out));
}

FFElt FFElt::operator-(const FFElt& rhs) const {
    Coords out(coords_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = detail::sub_mod(coords_[i], rhs.coords_[i], field_->p());
    return FFElt(field_, std::move(out));
}

FFElt FFElt::operator*(const FFElt& rhs) const {
    return FFElt(field_, detail::mul_mod_poly(coords_, rhs.coords_, field_->modulus(), field_->p()));
}

FFElt FFElt::pow(std::uint64_t e) const {
    return FFElt(field_, detail::pow_mod_poly(coords_, e, field_->modulus(), field_->p()));
}

FFElt FFElt::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero field element");
    return pow(field_->order() - 2);
}

// ---------------------------------------------------------------------------

GRElt::GRElt(FieldPtr field, int precision, Coords coords)
    : field_(std::move(field)), precision_(precision), r_(ring_modulus_for(field_->p(), precision)), coords_(std::move(coords)) {
    const auto m = static_cast<std::size_t>(field_->degree());
    for (auto& c : coords_) c %= r_;
    if (coords_.size() > m) detail::poly_reduce(coords_, field_->modulus(), r_);
    coords_.resize(m, 0);
}

GRElt GRElt::zero(FieldPtr field, int precision) {
    Coords c(field->degree(), 0);
    return GRElt(std::move(field), precision, std::move(c));
}

GRElt GRElt::one(FieldPtr field, int precision) { return from_integer(std::move(field), precision, 1); }

GRElt GRElt::from_integer(FieldPtr field, int precision, std::uint64_t value) {
    Coords c(field->degree(), 0);
    c[0] = value;
    return GRElt(std::move(field), precision, std::move(c));
}

GRElt GRElt::lift(const FFElt& x, int precision) { return GRElt(x.field_ptr(), precision, x.coords()); }

bool GRElt::is_zero() const {
    for (auto c : coords_)
        if (c) return false;
    return true;
}

GRElt GRElt::operator+(const GRElt& rhs) const {
    if (precision_ != rhs.precision_) throw std::invalid_argument("Galois ring precision mismatch");
    Coords out(coords_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = detail::add_mod(coords_[i], rhs.coords_[i], r_);
    return GRElt(field_, precision_, std::move(out));
}

GRElt GRElt::operator-(const GRElt& rhs) const {
    if (precision_ != rhs.precision_) throw std::invalid_argument("Galois ring precision mismatch");
    Coords out(coords_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = detail::sub_mod(coords_[i], rhs.coords_[i], r_);
    return GRElt(field_, precision_, std::move(out));
}

GRElt GRElt::operator*(const GRElt& rhs) const {
    if (precision_ != rhs.precision_) throw std::invalid_argument("Galois ring precision mismatch");
    return GRElt(field_, precision_, detail::mul_mod_poly(coords_, rhs.coords_, field_->modulus(), r_));
}

GRElt GRElt::pow(std::uint64_t e) const {
    return GRElt(field_, precision_, detail::pow_mod_poly(coords_, e, field_->modulus(), r_));
}

GRElt GRElt::inverse() const {
    FFElt base = reduce();
    if (base.is_zero()) throw std::domain_error("inverse of a non-unit in the Galois ring");
    GRElt v = lift(base.inverse(), precision_);
    const GRElt two = from_integer(field_, precision_, 2);
    // Newton: each step doubles the number of correct p-adic digits.
    for (int correct = 1; correct < precision_; correct *= 2) v = v * (two - *this * v);
    return v;
}

FFElt GRElt::reduce() const { return FFElt(field_, coords_); }

GRElt GRElt::with_precision(int precision) const {
    if (precision > precision_) throw std::invalid_argument("cannot raise Galois ring precision");
    return GRElt(field_, precision, coords_);
}

// ---------------------------------------------------------------------------

GRElt teichmuller_lift(const FFElt& x, int precision) {
    const FieldDesc& f = x.field();
    GRElt z = GRElt::lift(x, precision);
    // z <- z^{q^k} contracts towards the Teichmuller point; n rounds suffice.
    for (int round = 0; round <= precision; ++round) {
        GRElt next = z;
        for (int j = 0; j < f.degree(); ++j) next = next.pow(f.p());
        if (next == z) return z;
        z = std::move(next);
    }
    throw ConsistencyError("Teichmuller iteration did not stabilise");
}

Residue gr_trace(const GRElt& z) {
    const Coords tr = z.field().trace_vector(z.precision());
    const u64 r = z.ring_modulus();
    u64 acc = 0;
    for (std::size_t l = 0; l < tr.size(); ++l) acc = detail::add_mod(acc, detail::mul_mod(z.coords()[l], tr[l], r), r);
    return acc;
}

GRElt ground_generator_lift(const FieldPtr& field, int precision) {
    const Coords& g = field->ground_modulus();
    const Coords dg = derivative(g);
    GRElt root = GRElt(field, precision, field->subfield_root());
    for (int correct = 1; correct < precision; correct *= 2) {
        root = root - eval_at(g, root) * eval_at(dg, root).inverse();
    }
    if (!eval_at(g, root).is_zero()) throw ConsistencyError("Hensel lift of the ground generator failed");
    return root;
}

void enumerate_field(const FieldPtr& field, std::uint64_t budget, const std::function<void(const FFElt&)>& visit) {
    if (field->order() > budget) {
        throw BudgetExceeded("field of order " + std::to_string(field->order()) + " exceeds enumeration budget " +
                             std::to_string(budget));
    }
    for (u64 index = 0; index < field->order(); ++index) visit(FFElt::from_index(field, index));
}

}  // namespace zpt::ff
