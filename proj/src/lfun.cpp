#include "zpt/lfun.hpp"

#include <stdexcept>

#include "zpt/errors.hpp"

namespace zpt::lfun {

using cyc::CycInt;

namespace {

mpz_class pow_z(std::uint64_t p, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, e);
    return r;
}

void check_field(const tower::TowerSpec& t, const ff::FieldDesc& f) {
    if (f.p() != t.p() || f.a() != t.a() || f.ground_modulus() != t.ground_modulus()) {
        throw std::invalid_argument("field does not extend the tower's ground field");
    }
}

}  // namespace

EmbeddedTower::EmbeddedTower(const tower::TowerSpec& t, const ff::FieldPtr& field, int precision)
    : field_(field), precision_(precision) {
    check_field(t, *field);
    t.require_precision(precision);
    const ff::FFElt theta(field, field->subfield_root());
    std::optional<ff::GRElt> ring_root;
    const std::uint64_t r = ff::GRElt::one(field, precision).ring_modulus();
    for (const auto& c : t.coefficients()) {
        if (c.kind == tower::CoeffKind::Teichmuller) {
            ff::FFElt x = ff::FFElt::zero(field);
            ff::FFElt power = ff::FFElt::one(field);
            for (auto digit : c.value) {
                for (std::uint64_t s = 0; s < digit; ++s) x = x + power;
                power = power * theta;
            }
            terms_.emplace_back(c.exponent, ff::teichmuller_lift(x, precision));
        } else {
            if (!ring_root) ring_root = ff::ground_generator_lift(field, precision);
            ff::GRElt x = ff::GRElt::zero(field, precision);
            ff::GRElt power = ff::GRElt::one(field, precision);
            for (auto digit : c.value) {
                x = x + ff::GRElt::from_integer(field, precision, digit % r) * power;
                power = power * *ring_root;
            }
            terms_.emplace_back(c.exponent, x);
        }
    }
}

ff::Residue EmbeddedTower::exponent_at(const ff::FFElt& x) const {
    const ff::GRElt tau = ff::teichmuller_lift(x, precision_);
    ff::GRElt sum = ff::GRElt::zero(field_, precision_);
    for (const auto& [i, c] : terms_) sum = sum + c * tau.pow(static_cast<std::uint64_t>(i));
    return ff::gr_trace(sum);
}

ff::Residue frobenius_exponent(const tower::TowerSpec& t, const ff::FFElt& x, int n) {
    return EmbeddedTower(t, x.field_ptr(), n).exponent_at(x);
}

CycInt tally_to_cyc(const ExponentTally& tally, std::uint64_t p, int n) {
    const std::uint64_t order = pow_z(p, n).get_ui();
    if (tally.modulus % order != 0) throw std::invalid_argument("tally precision below the requested level");
    std::vector<std::uint64_t> counts(order, 0);
    for (const auto& [e, c] : tally.counts) counts[e % order] += c;
    return CycInt::from_exponent_counts(p, n, counts);
}

CycInt power_sum(const tower::TowerSpec& t, int n, int k, const ComputeOptions& opts) {
    if (n == 0) {
        mpz_class qk = pow_z(t.q(), k);
        return CycInt::from_integer(t.p(), 1, qk);
    }
    return tally_to_cyc(tally_exponents(t, k, n, opts), t.p(), n);
}

CycInt power_sum_pointwise(const tower::TowerSpec& t, int n, int k, std::uint64_t budget) {
    if (n == 0) return CycInt::from_integer(t.p(), 1, pow_z(t.q(), k));
    return tally_to_cyc(tally_exponents_pointwise(t, k, n, budget), t.p(), n);
}

LPoly newton_from_power_sums(std::uint64_t p, int a, int level, std::vector<CycInt> sums) {
    LPoly L;
    L.p = p;
    L.a = a;
    L.level = level;
    L.coeffs.push_back(CycInt::from_integer(p, level, 1));
    for (std::size_t k = 1; k <= sums.size(); ++k) {
        CycInt acc(p, level);
        for (std::size_t i = 1; i <= k; ++i) acc += sums[i - 1] * L.coeffs[k - i];
        L.coeffs.push_back(acc.exact_div(mpz_class(static_cast<unsigned long>(k))));
    }
    L.power_sums = std::move(sums);
    while (L.coeffs.size() > 1 && L.coeffs.back().is_zero()) L.coeffs.pop_back();
    return L;
}

LPoly l_polynomial(const tower::TowerSpec& t, int n, const ComputeOptions& opts) {
    if (n < 1) throw std::invalid_argument("L(chi_n, s) needs n >= 1");
    const long ell = tower::l_degree(t, n);
    std::vector<CycInt> sums;
    for (long k = 1; k <= ell; ++k) sums.push_back(power_sum(t, n, static_cast<int>(k), opts));
    LPoly L = newton_from_power_sums(t.p(), t.a(), n, std::move(sums));
    if (L.degree() != ell) {
        throw ConsistencyError("L(chi_" + std::to_string(n) + ", s) has degree " + std::to_string(L.degree()) +
                               ", expected " + std::to_string(ell));
    }
    return L;
}

CycInt extended_power_sum(const LPoly& L, int k) {
    if (k < 1) throw std::invalid_argument("power sums start at k = 1");
    if (k <= static_cast<int>(L.power_sums.size())) return L.power_sums[k - 1];
    // k b_k = sum_{i<=k} S_i b_{k-i}; with b_k = 0 for k > degree this solves for S_k.
    std::vector<CycInt> s = L.power_sums;
    for (int j = static_cast<int>(s.size()) + 1; j <= k; ++j) {
        CycInt acc(L.p, L.level);
        for (int i = 1; i < j; ++i) {
            if (j - i <= L.degree()) acc -= s[i - 1] * L.coeffs[j - i];
        }
        if (j <= L.degree()) acc += L.coeffs[j] * mpz_class(j);
        s.push_back(acc);
    }
    return s[k - 1];
}

LPoly conjugate(const LPoly& L, long e) {
    LPoly out = L;
    for (auto& c : out.coeffs) c = cyc::galois_conjugate(c, e);
    for (auto& c : out.power_sums) c = cyc::galois_conjugate(c, e);
    return out;
}

CycInt evaluate_at_one(const LPoly& L) {
    CycInt s(L.p, L.level);
    for (const auto& c : L.coeffs) s += c;
    return s;
}

SlopeSeq q_slopes(const LPoly& L) {
    SlopeSeq out(L.p, L.level);
    if (L.degree() <= 0) return out;
    std::vector<std::pair<long, cyc::Valuation>> points;
    for (int k = 0; k <= L.degree(); ++k) points.emplace_back(k, cyc::pi_valuation(L.coeffs[k]));
    const auto poly = cyc::newton_polygon(points);
    const mpz_class e = pow_z(L.p, L.level - 1) * (L.p - 1) * L.a;
    for (const auto& seg : poly.hull) out.add(seg.slope / e, seg.length);
    return out;
}

IntPoly int_poly_mul(const IntPoly& x, const IntPoly& y) {
    if (x.empty() || y.empty()) return {};
    IntPoly out(x.size() + y.size() - 1, 0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < y.size(); ++j) mpz_addmul(out[i + j].get_mpz_t(), x[i].get_mpz_t(), y[j].get_mpz_t());
    }
    return out;
}

mpz_class int_poly_eval(const IntPoly& f, const mpz_class& s) {
    mpz_class acc = 0;
    for (std::size_t i = f.size(); i-- > 0;) acc = acc * s + f[i];
    return acc;
}

std::optional<IntPoly> int_poly_divide(const IntPoly& f, const IntPoly& g) {
    IntPoly num = f;
    IntPoly den = g;
    while (!num.empty() && num.back() == 0) num.pop_back();
    while (!den.empty() && den.back() == 0) den.pop_back();
    if (den.empty()) throw std::invalid_argument("division by the zero polynomial");
    if (num.size() < den.size()) {
        if (num.empty()) return IntPoly{0};
        return std::nullopt;
    }
    IntPoly quot(num.size() - den.size() + 1, 0);
    for (std::size_t i = quot.size(); i-- > 0;) {
        const mpz_class& top = num[i + den.size() - 1];
        if (!mpz_divisible_p(top.get_mpz_t(), den.back().get_mpz_t())) return std::nullopt;
        quot[i] = top / den.back();
        for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= quot[i] * den[j];
    }
    for (const auto& c : num)
        if (c != 0) return std::nullopt;
    return quot;
}

IntPoly galois_orbit_product(const LPoly& L) {
    if (L.degree() < 1) throw std::invalid_argument("Galois orbit product needs a polynomial of degree >= 1");
    const std::uint64_t order = pow_z(L.p, L.level).get_ui();
    std::vector<CycInt> acc{CycInt::from_integer(L.p, L.level, 1)};
    for (std::uint64_t e = 1; e < order; ++e) {
        if (e % L.p == 0) continue;
        const LPoly conj = conjugate(L, static_cast<long>(e));
        std::vector<CycInt> next(acc.size() + conj.coeffs.size() - 1, CycInt(L.p, L.level));
        for (std::size_t i = 0; i < acc.size(); ++i)
            for (std::size_t j = 0; j < conj.coeffs.size(); ++j) next[i + j] += acc[i] * conj.coeffs[j];
        acc = std::move(next);
    }
    IntPoly out;
    for (const auto& c : acc) {
        if (!c.is_rational()) throw ConsistencyError("Galois orbit product has a non-rational coefficient " + c.to_string());
        out.push_back(c.coord(0));
    }
    const std::size_t phi = order - order / L.p;
    if (out.size() != phi * static_cast<std::size_t>(L.degree()) + 1) {
        throw ConsistencyError("Galois orbit product has the wrong degree");
    }
    return out;
}

// ---------------------------------------------------------------------------

Engine::Engine(tower::TowerSpec t, ComputeOptions opts) : tower_(std::move(t)), opts_(opts) {}

bool Engine::level_within_budget(int n) const {
    if (n < 1) return true;
    try {
        tower_.require_precision(n);
        const long ell = tower::l_degree(tower_, n);
        return pow_z(tower_.q(), static_cast<unsigned long>(ell)) <= mpz_class(std::to_string(opts_.budget));
    } catch (const PrecisionError&) {
        return false;
    }
}

int Engine::reachable_level(int n_max) const {
    int m = 0;
    while (m < n_max && level_within_budget(m + 1)) ++m;
    return m;
}

const LPoly& Engine::l_poly(int n) {
    auto it = lpolys_.find(n);
    if (it != lpolys_.end()) return it->second;
    if (!level_within_budget(n)) {
        tower_.require_precision(n);
        throw BudgetExceeded("level " + std::to_string(n) + " needs F_{q^" + std::to_string(tower::l_degree(tower_, n)) +
                             "}, over the enumeration budget " + std::to_string(opts_.budget));
    }
    return lpolys_.emplace(n, l_polynomial(tower_, n, opts_)).first->second;
}

const SlopeSeq& Engine::slopes(int n) {
    auto it = slopes_.find(n);
    if (it != slopes_.end()) return it->second;
    return slopes_.emplace(n, q_slopes(l_poly(n))).first->second;
}

const IntPoly& Engine::orbit_product(int n) {
    auto it = orbits_.find(n);
    if (it != orbits_.end()) return it->second;
    return orbits_.emplace(n, galois_orbit_product(l_poly(n))).first->second;
}

IntPoly Engine::zeta_numerator(int n) {
    IntPoly acc{1};
    for (int j = 1; j <= n; ++j) acc = int_poly_mul(acc, orbit_product(j));
    return acc;
}

ZetaSlopes Engine::zeta_slopes(int n) {
    ZetaSlopes z;
    z.n = n;
    z.slopes = SlopeSeq(tower_.p(), n);
    for (int j = 1; j <= n; ++j) {
        const long phi = static_cast<long>(pow_z(tower_.p(), j - 1).get_ui() * (tower_.p() - 1));
        for (const auto& [s, mult] : slopes(j).entries()) z.slopes.add(s, mult * phi);
    }
    z.genus = tower::genus(tower_, n);
    if (mpz_class(z.slopes.total()) != 2 * z.genus) {
        throw ConsistencyError("zeta slope count " + std::to_string(z.slopes.total()) + " differs from 2 g_n = " +
                               mpz_class(2 * z.genus).get_str());
    }
    return z;
}

mpz_class Engine::class_number_ratio(int n) {
    auto it = ratios_.find(n);
    if (it != ratios_.end()) return it->second;
    mpz_class norm = cyc::norm_to_Z(evaluate_at_one(l_poly(n)));
    if (norm <= 0) throw ConsistencyError("norm of L(chi_n, 1) is not positive");
    return ratios_.emplace(n, norm).first->second;
}

mpz_class Engine::class_number(int n) {
    mpz_class h = 1;
    for (int j = 1; j <= n; ++j) h *= class_number_ratio(j);
    return h;
}

ZetaSlopes zeta_slopes(const tower::TowerSpec& t, int n, const ComputeOptions& opts) {
    Engine engine(t, opts);
    return engine.zeta_slopes(n);
}

mpz_class class_number(const tower::TowerSpec& t, int n, const ComputeOptions& opts) {
    Engine engine(t, opts);
    return engine.class_number(n);
}

}  // namespace zpt::lfun
