#include "zpt/tower.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "polymod.hpp"
#include "zpt/errors.hpp"

namespace zpt::tower {

namespace {

mpz_class pow_z(std::uint64_t p, long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(e));
    return r;
}

int vp_u64(std::uint64_t x, std::uint64_t p) {
    int v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

}  // namespace

TowerSpec::TowerSpec(std::string label, std::uint64_t p, int a, std::vector<Coefficient> coeffs,
                     std::optional<ff::Coords> ground_modulus)
    : label_(std::move(label)), p_(p), a_(a), coeffs_(std::move(coeffs)) {
    if (!ff::is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
    if (p == 2) throw std::invalid_argument("p > 2 required: the tower construction is only defined for odd p");
    if (a < 1) throw std::invalid_argument("a must be >= 1");
    q_ = detail::checked_pow(p, static_cast<unsigned>(a));
    if (ground_modulus) {
        explicit_modulus_ = true;
        ground_modulus_ = *ground_modulus;
        if (ground_modulus_.size() != static_cast<std::size_t>(a) + 1 || ground_modulus_.back() != 1) {
            throw std::invalid_argument("modulus must be monic of degree a");
        }
        for (auto c : ground_modulus_) {
            if (c >= p) throw std::invalid_argument("modulus coefficients must lie in [0, p)");
        }
        if (!detail::is_irreducible_prime(ground_modulus_, p)) {
            throw std::invalid_argument("modulus is not irreducible mod p");
        }
    } else {
        ground_modulus_ = ff::FieldDesc::least_irreducible(p, a);
    }
    if (coeffs_.empty()) throw std::invalid_argument("tower needs at least one coefficient");

    std::set<int> seen;
    bool primitive = false;
    for (auto& c : coeffs_) {
        if (c.exponent < 1) throw std::invalid_argument("exponents must be >= 1 (f has no constant term)");
        if (c.exponent % static_cast<long>(p) == 0) {
            throw std::invalid_argument("exponent " + std::to_string(c.exponent) + " is divisible by p");
        }
        if (!seen.insert(c.exponent).second) {
            throw std::invalid_argument("duplicate exponent " + std::to_string(c.exponent));
        }
        if (c.value.size() > static_cast<std::size_t>(a)) {
            throw std::invalid_argument("coefficient of x^" + std::to_string(c.exponent) + " has more than a coordinates");
        }
        c.value.resize(a, 0);
        if (c.kind == CoeffKind::Teichmuller) {
            bool nonzero = false;
            for (auto v : c.value) {
                if (v >= p) throw std::invalid_argument("Teichmuller coordinates must lie in [0, p)");
                nonzero |= v != 0;
            }
            if (!nonzero) throw std::invalid_argument("Teichmuller coefficient of x^" + std::to_string(c.exponent) + " is zero");
            c.precision = 0;
        } else {
            if (c.precision < 1) throw std::invalid_argument("ring coefficient needs precision >= 1");
            const auto r = detail::checked_pow(p, static_cast<unsigned>(c.precision));
            for (auto v : c.value) {
                if (v >= r) throw std::invalid_argument("ring coordinates must lie in [0, p^precision)");
            }
        }
        if (auto v = valuation(c); v && *v == 0) primitive = true;
    }
    if (!primitive) throw std::invalid_argument("f is not primitive: every coefficient is divisible by p");
    std::sort(coeffs_.begin(), coeffs_.end(), [](const auto& x, const auto& y) { return x.exponent < y.exponent; });
}

TowerSpec TowerSpec::monomial(std::uint64_t p, int exponent, std::string label) {
    return unit_root(p, {{exponent, 1}}, std::move(label));
}

TowerSpec TowerSpec::unit_root(std::uint64_t p, const std::vector<std::pair<int, std::uint64_t>>& terms, std::string label) {
    std::vector<Coefficient> coeffs;
    for (auto [i, c] : terms) coeffs.push_back({i, CoeffKind::Teichmuller, {c % p}, 0});
    return TowerSpec(std::move(label), p, 1, std::move(coeffs));
}

int TowerSpec::degree() const { return coeffs_.back().exponent; }

bool TowerSpec::is_unit_root() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& c) { return c.kind == CoeffKind::Teichmuller; });
}

std::optional<int> TowerSpec::valuation(const Coefficient& c) const {
    if (c.kind == CoeffKind::Teichmuller) return 0;
    std::optional<int> best;
    for (auto v : c.value) {
        if (v == 0) continue;
        int e = vp_u64(v, p_);
        if (!best || e < *best) best = e;
    }
    return best;
}

std::optional<int> TowerSpec::coefficient_precision() const {
    std::optional<int> out;
    for (const auto& c : coeffs_) {
        if (c.kind != CoeffKind::Ring) continue;
        if (!out || c.precision < *out) out = c.precision;
    }
    return out;
}

void TowerSpec::require_precision(int n) const {
    if (auto prec = coefficient_precision(); prec && *prec < n) {
        throw PrecisionError("level " + std::to_string(n) + " needs coefficient precision >= " + std::to_string(n) +
                             ", tower carries " + std::to_string(*prec));
    }
}

// ---------------------------------------------------------------------------

long conductor(const TowerSpec& t, int n) {
    if (n < 1) throw std::invalid_argument("conductor needs level n >= 1");
    long best = -1;
    for (const auto& c : t.coefficients()) {
        auto v = t.valuation(c);
        if (!v) {
            if (c.precision < n) {
                throw PrecisionError("valuation of the x^" + std::to_string(c.exponent) +
                                     " coefficient is undetermined at level " + std::to_string(n));
            }
            continue;
        }
        if (*v >= n) continue;
        mpz_class term = pow_z(t.p(), n - 1 - *v) * c.exponent;
        if (!term.fits_slong_p()) throw std::overflow_error("conductor exceeds machine range");
        best = std::max(best, term.get_si());
    }
    if (best < 0) throw std::logic_error("no coefficient with v_p < n (tower not primitive)");
    return 1 + best;
}

long l_degree(const TowerSpec& t, int n) {
    if (n < 1) throw std::invalid_argument("degree needs level n >= 1");
    mpq_class best = -1;
    for (const auto& c : t.coefficients()) {
        auto v = t.valuation(c);
        if (!v || *v >= n) continue;
        mpq_class ratio(c.exponent, pow_z(t.p(), *v));
        ratio.canonicalize();
        best = std::max(best, ratio);
    }
    mpq_class ell = pow_z(t.p(), n - 1) * best - 1;
    if (ell.get_den() != 1) throw ConsistencyError("degree formula produced a non-integer");
    const long degree = ell.get_num().get_si();
    if (degree != conductor(t, n) - 2) throw ConsistencyError("degree disagrees with conductor - 2");
    return degree;
}

mpq_class slope_scale_d(const TowerSpec& t) {
    mpq_class best = 0;
    for (const auto& c : t.coefficients()) {
        auto v = t.valuation(c);
        if (!v) continue;
        mpq_class ratio(c.exponent, pow_z(t.p(), *v));
        ratio.canonicalize();
        best = std::max(best, ratio);
    }
    for (const auto& c : t.coefficients()) {
        if (t.valuation(c)) continue;
        mpq_class bound(c.exponent, pow_z(t.p(), c.precision));
        bound.canonicalize();
        if (bound > best) {
            throw PrecisionError("d is undetermined: the x^" + std::to_string(c.exponent) +
                                 " coefficient vanishes to its stated precision");
        }
    }
    return best;
}

mpz_class genus(const TowerSpec& t, int n) {
    if (n < 0) throw std::invalid_argument("genus needs n >= 0");
    mpz_class sum = 0;
    for (int i = 1; i <= n; ++i) sum += pow_z(t.p(), i - 1) * l_degree(t, i);
    mpz_class twice = sum * (t.p() - 1);
    if (!mpz_divisible_ui_p(twice.get_mpz_t(), 2)) throw ConsistencyError("2 g_n is odd");
    return twice / 2;
}

bool degree_is_stable(const TowerSpec& t, int n) {
    mpq_class stable = slope_scale_d(t) * pow_z(t.p(), n - 1) - 1;
    return stable == l_degree(t, n);
}

std::optional<GenusFit> genus_stable_fit(const TowerSpec& t, int n_lo, int n_hi) {
    if (n_lo < 0) throw std::invalid_argument("genus fit needs n_lo >= 0");
    if (n_hi < n_lo + 2) throw std::invalid_argument("genus fit needs at least three levels");
    // Cramer's rule on rows (p^{2n}, p^n, 1).
    mpq_class m[3][3], rhs[3];
    for (int r = 0; r < 3; ++r) {
        mpz_class pn = pow_z(t.p(), n_lo + r);
        m[r][0] = pn * pn;
        m[r][1] = pn;
        m[r][2] = 1;
        rhs[r] = genus(t, n_lo + r);
    }
    auto det3 = [](const mpq_class a[3][3]) -> mpq_class {
        return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
               a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    };
    const mpq_class det = det3(m);
    mpq_class sol[3];
    for (int col = 0; col < 3; ++col) {
        mpq_class mc[3][3];
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) mc[r][c] = (c == col) ? rhs[r] : m[r][c];
        sol[col] = det3(mc) / det;
    }
    GenusFit fit{sol[0], sol[1], sol[2], n_lo, n_hi};
    for (int n = n_lo; n <= n_hi; ++n) {
        mpz_class pn = pow_z(t.p(), n);
        mpq_class predicted = fit.a * pn * pn + fit.b * pn + fit.c;
        if (predicted != mpq_class(genus(t, n))) return std::nullopt;
    }
    return fit;
}

TowerNumerology numerology(const TowerSpec& t, int n) {
    TowerNumerology out;
    out.n = n;
    out.d = slope_scale_d(t);
    out.strongly_genus_stable = true;  // polynomial f always has finite d
    out.genus = genus(t, n);
    if (n >= 1) {
        out.conductor = conductor(t, n);
        out.degree = l_degree(t, n);
    }
    return out;
}

}  // namespace zpt::tower
