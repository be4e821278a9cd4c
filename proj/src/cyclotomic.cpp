#include "zpt/cyclotomic.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "zpt/errors.hpp"

namespace zpt::cyc {

namespace {

std::uint64_t power(std::uint64_t p, int n) {
    std::uint64_t r = 1;
    for (int i = 0; i < n; ++i) r *= p;
    return r;
}

// Folds a coefficient vector of any length into the power basis mod Phi_{p^n}:
// zeta^phi = -(1 + zeta^{p^{n-1}} + ... + zeta^{(p-2) p^{n-1}}).
void reduce_in_place(std::vector<mpz_class>& a, std::uint64_t p, std::uint64_t block, std::size_t phi) {
    for (std::size_t e = a.size(); e-- > phi;) {
        if (a[e] == 0) continue;
        const std::size_t base = e - phi;
        for (std::uint64_t j = 0; j + 1 < p; ++j) a[base + j * block] -= a[e];
        a[e] = 0;
    }
    a.resize(phi);
}

}  // namespace

long Valuation::value() const {
    if (infinite_) throw std::domain_error("valuation is infinite");
    return value_;
}

CycInt::CycInt(std::uint64_t p, int level) : p_(p), level_(level) {
    if (p < 2 || level < 1) throw std::invalid_argument("cyclotomic ring needs prime p and level >= 1");
    order_ = power(p, level);
    coords_.assign(order_ - order_ / p, 0);
}

CycInt CycInt::from_integer(std::uint64_t p, int level, const mpz_class& value) {
    CycInt x(p, level);
    x.coords_[0] = value;
    return x;
}

CycInt CycInt::zeta_power(std::uint64_t p, int level, long e) {
    CycInt x(p, level);
    const auto order = static_cast<long>(x.order_);
    long r = ((e % order) + order) % order;
    std::vector<mpz_class> full(x.order_, 0);
    full[r] = 1;
    reduce_in_place(full, p, x.order_ / p, x.phi());
    x.coords_ = std::move(full);
    return x;
}

CycInt CycInt::uniformizer(std::uint64_t p, int level) {
    CycInt x = from_integer(p, level, 1);
    x -= zeta_power(p, level, 1);
    return x;
}

CycInt CycInt::from_coords(std::uint64_t p, int level, std::vector<mpz_class> coords) {
    CycInt x(p, level);
    if (coords.size() < x.phi()) coords.resize(x.phi(), 0);
    reduce_in_place(coords, p, x.order_ / p, x.phi());
    x.coords_ = std::move(coords);
    return x;
}

CycInt CycInt::from_exponent_counts(std::uint64_t p, int level, std::span<const std::uint64_t> counts) {
    CycInt x(p, level);
    if (counts.size() != x.order_) throw std::invalid_argument("exponent tally must have p^level entries");
    std::vector<mpz_class> full(x.order_);
    for (std::size_t e = 0; e < counts.size(); ++e) full[e] = mpz_class(static_cast<unsigned long>(counts[e]));
    reduce_in_place(full, p, x.order_ / p, x.phi());
    x.coords_ = std::move(full);
    return x;
}

bool CycInt::is_zero() const {
    for (const auto& c : coords_)
        if (c != 0) return false;
    return true;
}

bool CycInt::is_rational() const {
    for (std::size_t j = 1; j < coords_.size(); ++j)
        if (coords_[j] != 0) return false;
    return true;
}

mpz_class CycInt::augmentation() const {
    mpz_class s = 0;
    for (const auto& c : coords_) s += c;
    return s;
}

void CycInt::check_same_ring(const CycInt& rhs) const {
    if (p_ != rhs.p_ || level_ != rhs.level_) throw std::invalid_argument("cyclotomic level mismatch");
}

CycInt& CycInt::operator+=(const CycInt& rhs) {
    check_same_ring(rhs);
    for (std::size_t j = 0; j < coords_.size(); ++j) coords_[j] += rhs.coords_[j];
    return *this;
}

CycInt& CycInt::operator-=(const CycInt& rhs) {
    check_same_ring(rhs);
    for (std::size_t j = 0; j < coords_.size(); ++j) coords_[j] -= rhs.coords_[j];
    return *this;
}

CycInt operator*(const CycInt& lhs, const CycInt& rhs) {
    lhs.check_same_ring(rhs);
    const std::size_t phi = lhs.phi();
    std::vector<mpz_class> prod(2 * phi - 1, 0);
    for (std::size_t i = 0; i < phi; ++i) {
        if (lhs.coords_[i] == 0) continue;
        for (std::size_t j = 0; j < phi; ++j) {
            if (rhs.coords_[j] == 0) continue;
            mpz_addmul(prod[i + j].get_mpz_t(), lhs.coords_[i].get_mpz_t(), rhs.coords_[j].get_mpz_t());
        }
    }
    reduce_in_place(prod, lhs.p_, lhs.order_ / lhs.p_, phi);
    CycInt out(lhs.p_, lhs.level_);
    out.coords_ = std::move(prod);
    return out;
}

CycInt& CycInt::operator*=(const CycInt& rhs) { return *this = *this * rhs; }

CycInt& CycInt::operator*=(const mpz_class& scalar) {
    for (auto& c : coords_) c *= scalar;
    return *this;
}

CycInt CycInt::operator-() const {
    CycInt out = *this;
    for (auto& c : out.coords_) c = -c;
    return out;
}

bool CycInt::divisible_by(const mpz_class& divisor) const {
    for (const auto& c : coords_)
        if (!mpz_divisible_p(c.get_mpz_t(), divisor.get_mpz_t())) return false;
    return true;
}

CycInt CycInt::exact_div(const mpz_class& divisor) const {
    if (!divisible_by(divisor)) {
        throw ConsistencyError("cyclotomic integer " + to_string() + " is not divisible by " + divisor.get_str());
    }
    CycInt out = *this;
    for (auto& c : out.coords_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), divisor.get_mpz_t());
    return out;
}

std::string CycInt::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = 0; j < coords_.size(); ++j) {
        if (coords_[j] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << coords_[j].get_str();
        if (j == 1) os << "*z";
        if (j > 1) os << "*z^" << j;
    }
    if (first) os << "0";
    return os.str();
}

CycInt cyc_mul(const CycInt& x, const CycInt& y) { return x * y; }

CycInt exact_div_by_uniformizer(const CycInt& x) {
    const mpz_class p(static_cast<unsigned long>(x.p()));
    mpz_class s = x.augmentation();
    if (!mpz_divisible_p(s.get_mpz_t(), p.get_mpz_t())) {
        throw std::domain_error("element is not divisible by 1 - zeta");
    }
    // A~ = A - (A(1)/p) Phi_{p^n} has A~(1) = 0; then divide by (1 - X) in Z[X].
    const std::size_t phi = x.phi();
    const std::size_t block = x.order() / x.p();
    std::vector<mpz_class> a(phi + 1);
    for (std::size_t j = 0; j < phi; ++j) a[j] = x.coord(j);
    a[phi] = 0;
    const mpz_class t = s / p;
    for (std::uint64_t j = 0; j < x.p(); ++j) a[j * block] -= t;
    // Synthetic division of a(X) by (X - 1), then negate.
    std::vector<mpz_class> quotient(phi);
    mpz_class carry = 0;
    for (std::size_t i = phi + 1; i-- > 1;) {
        carry += a[i];
        quotient[i - 1] = carry;
    }
    if (carry + a[0] != 0) throw ConsistencyError("uniformizer division left a remainder");
    // The quotient has degree <= phi - 1, so it is already in the power basis.
    for (auto& c : quotient) c = -c;
    return CycInt::from_coords(x.p(), x.level(), std::move(quotient));
}

Valuation pi_valuation(const CycInt& x) {
    if (x.is_zero()) return Valuation::infinity();
    const mpz_class p(static_cast<unsigned long>(x.p()));
    long v = 0;
    CycInt y = x;
    while (true) {
        mpz_class s = y.augmentation();
        if (!mpz_divisible_p(s.get_mpz_t(), p.get_mpz_t())) return Valuation(v);
        y = exact_div_by_uniformizer(y);
        ++v;
    }
}

CycInt galois_conjugate(const CycInt& x, long e) {
    const auto order = static_cast<long>(x.order());
    if (e % static_cast<long>(x.p()) == 0) throw std::invalid_argument("conjugation exponent divisible by p");
    const long ee = ((e % order) + order) % order;
    std::vector<mpz_class> full(x.order(), 0);
    for (std::size_t j = 0; j < x.phi(); ++j) {
        if (x.coord(j) == 0) continue;
        full[static_cast<std::size_t>((static_cast<__int128>(j) * ee) % order)] += x.coord(j);
    }
    return CycInt::from_coords(x.p(), x.level(), std::move(full));
}

mpz_class norm_to_Z(const CycInt& x) {
    CycInt prod = CycInt::from_integer(x.p(), x.level(), 1);
    for (std::uint64_t e = 1; e < x.order(); ++e) {
        if (e % x.p() == 0) continue;
        prod *= galois_conjugate(x, static_cast<long>(e));
    }
    if (!prod.is_rational()) throw ConsistencyError("norm is not rational: " + prod.to_string());
    return prod.coord(0);
}

long NewtonPolygon::degree() const {
    long total = 0;
    for (const auto& seg : hull) total += seg.length;
    return total;
}

std::vector<mpq_class> NewtonPolygon::slopes() const {
    std::vector<mpq_class> out;
    for (const auto& seg : hull)
        for (long i = 0; i < seg.length; ++i) out.push_back(seg.slope);
    return out;
}

NewtonPolygon newton_polygon(std::span<const std::pair<long, Valuation>> points) {
    NewtonPolygon poly;
    poly.points.assign(points.begin(), points.end());
    if (points.empty()) return poly;
    if (points.front().second.is_infinite() || points.back().second.is_infinite()) {
        throw std::invalid_argument("Newton polygon endpoints must have finite valuation");
    }
    std::vector<std::pair<long, long>> hull;
    for (const auto& [index, val] : points) {
        if (val.is_infinite()) continue;
        const std::pair<long, long> pt{index, val.value()};
        while (hull.size() >= 2) {
            const auto& o = hull[hull.size() - 2];
            const auto& a = hull.back();
            // Keep `a` only if it lies strictly below the chord o -> pt.
            __int128 cross = static_cast<__int128>(a.first - o.first) * (pt.second - o.second) -
                             static_cast<__int128>(a.second - o.second) * (pt.first - o.first);
            if (cross <= 0) {
                hull.pop_back();
            } else {
                break;
            }
        }
        hull.push_back(pt);
    }
    for (std::size_t i = 1; i < hull.size(); ++i) {
        const long di = hull[i].first - hull[i - 1].first;
        const long dv = hull[i].second - hull[i - 1].second;
        mpq_class slope(dv, di);
        slope.canonicalize();
        poly.hull.push_back({slope, di});
    }
    return poly;
}

}  // namespace zpt::cyc
