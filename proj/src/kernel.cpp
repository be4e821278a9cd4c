// Character-sum kernel. F_{q^k}^* is walked as g^j for a primitive g with
// Teichmuller lift T. Over Z/r the minimal polynomial P of T has rational
// coefficients, so T^e is a vector in the basis 1, T, .., T^{m-1} obtained
// by shifting modulo P, and Tr(c_i T^e) is a dot product with the fixed
// vector Tr(c_i T^l).

#include <algorithm>
#include <thread>
#include <unordered_map>

#include "polymod.hpp"
#include "zpt/errors.hpp"
#include "zpt/lfun.hpp"

namespace zpt::lfun {

using detail::Poly;
using detail::u64;
using u128 = unsigned __int128;

namespace {

struct Barrett {
    u64 r;
    u64 inv;
    explicit Barrett(u64 modulus) : r(modulus), inv(~u64{0} / modulus) {}
    u64 reduce(u64 x) const {
        u64 q = static_cast<u64>((static_cast<u128>(x) * inv) >> 64);
        u64 res = x - q * r;
        while (res >= r) res -= r;
        return res;
    }
};

// Monic integer polynomial prod_{j<m} (X - T^{p^j}) over Z/r.
Poly teichmuller_min_poly(const ff::GRElt& T, u64 p, int m, u64 r) {
    const auto& field = T.field_ptr();
    const int prec = T.precision();
    std::vector<ff::GRElt> poly{ff::GRElt::one(field, prec)};
    ff::GRElt conj = T;
    for (int j = 0; j < m; ++j) {
        std::vector<ff::GRElt> next(poly.size() + 1, ff::GRElt::zero(field, prec));
        for (std::size_t d = 0; d < poly.size(); ++d) {
            next[d + 1] = next[d + 1] + poly[d];
            next[d] = next[d] - poly[d] * conj;
        }
        poly = std::move(next);
        conj = conj.pow(p);
    }
    if (!(conj == T)) throw ConsistencyError("Teichmuller lift is not fixed by the m-th Frobenius power");
    Poly out(m + 1);
    for (int d = 0; d <= m; ++d) {
        const auto& c = poly[d].coords();
        for (std::size_t l = 1; l < c.size(); ++l) {
            if (c[l] != 0) throw ConsistencyError("minimal polynomial of the Teichmuller generator is not rational");
        }
        out[d] = c[0] % r;
    }
    return out;
}

struct Term {
    int exponent;
    std::vector<u64> lambda;  // Tr(c_i T^l)
    Poly step;                // Y^i mod P, used when exponent is large
    bool by_shift;
};

class Tally {
   public:
    explicit Tally(u64 r) : r_(r), dense_(r <= (u64{1} << 20)) {
        if (dense_) counts_.assign(r, 0);
    }
    void add(u64 e, u64 c = 1) {
        if (dense_) {
            counts_[e] += c;
        } else {
            sparse_[e] += c;
        }
    }
    void merge(const Tally& other) {
        if (dense_) {
            for (u64 e = 0; e < r_; ++e) counts_[e] += other.counts_[e];
        } else {
            for (const auto& [e, c] : other.sparse_) sparse_[e] += c;
        }
    }
    std::vector<std::pair<u64, u64>> sorted() const {
        std::vector<std::pair<u64, u64>> out;
        if (dense_) {
            for (u64 e = 0; e < r_; ++e)
                if (counts_[e]) out.emplace_back(e, counts_[e]);
        } else {
            out.assign(sparse_.begin(), sparse_.end());
            std::sort(out.begin(), out.end());
        }
        return out;
    }

   private:
    u64 r_;
    bool dense_;
    std::vector<u64> counts_;
    std::unordered_map<u64, u64> sparse_;
};

void walk(const std::vector<Term>& terms, const Poly& modulus, u64 r, u64 group_order, u64 j0, u64 j1,
          Tally& tally) {
    const int m = static_cast<int>(modulus.size()) - 1;
    const Barrett br(r);
    std::vector<u64> neg(m);
    for (int l = 0; l < m; ++l) neg[l] = detail::sub_mod(0, modulus[l] % r, r);
    const bool lazy_dot = static_cast<u128>(r - 1) * (r - 1) * static_cast<u128>(m) < (static_cast<u128>(1) << 64);

    // u_i = Y^{i j} mod P for the current j.
    std::vector<Poly> u;
    const Poly y = m == 1 ? Poly{detail::sub_mod(0, modulus[0] % r, r)} : Poly{0, 1};
    for (const auto& term : terms) {
        u64 e = static_cast<u64>((static_cast<u128>(term.exponent) * j0) % group_order);
        u.push_back(detail::pow_mod_poly(y, e, modulus, r));
        u.back().resize(m, 0);
    }
    for (u64 j = j0; j < j1; ++j) {
        u64 exponent = 0;
        for (std::size_t t = 0; t < terms.size(); ++t) {
            const u64* ut = u[t].data();
            const u64* lam = terms[t].lambda.data();
            u64 dot = 0;
            if (lazy_dot) {
                for (int l = 0; l < m; ++l) dot += ut[l] * lam[l];
                dot = br.reduce(dot);
            } else {
                for (int l = 0; l < m; ++l) dot = br.reduce(dot + br.reduce(ut[l] * lam[l]));
            }
            exponent = br.reduce(exponent + dot);
        }
        tally.add(exponent);
        for (std::size_t t = 0; t < terms.size(); ++t) {
            u64* ut = u[t].data();
            if (terms[t].by_shift) {
                for (int s = 0; s < terms[t].exponent; ++s) {
                    const u64 top = ut[m - 1];
                    for (int l = m - 1; l > 0; --l) ut[l] = br.reduce(ut[l - 1] + neg[l] * top);
                    ut[0] = br.reduce(neg[0] * top);
                }
            } else {
                u[t] = detail::mul_mod_poly(u[t], terms[t].step, modulus, r);
                u[t].resize(m, 0);
            }
        }
    }
}

}  // namespace

std::uint64_t ExponentTally::total() const {
    std::uint64_t s = 0;
    for (const auto& e : counts) s += e.second;
    return s;
}

ExponentTally tally_exponents(const tower::TowerSpec& t, int k, int precision, const ComputeOptions& opts) {
    if (k < 1) throw std::invalid_argument("power sums need k >= 1");
    if (precision < 1) throw std::invalid_argument("exponent precision must be >= 1");
    t.require_precision(precision);
    auto field = ff::FieldDesc::make(t.p(), t.a(), k, t.ground_modulus());
    if (field->order() > opts.budget) {
        throw BudgetExceeded("F_{q^" + std::to_string(k) + "} has " + std::to_string(field->order()) +
                             " elements, over the enumeration budget " + std::to_string(opts.budget));
    }
    const EmbeddedTower et(t, field, precision);
    const u64 r = ff::GRElt::one(field, precision).ring_modulus();
    const int m = field->degree();
    const u64 group_order = field->order() - 1;

    const ff::GRElt T = ff::teichmuller_lift(ff::FFElt(field, field->primitive_element()), precision);
    const Poly modulus = teichmuller_min_poly(T, t.p(), m, r);

    std::vector<Term> terms;
    for (const auto& [i, c] : et.terms()) {
        Term term;
        term.exponent = i;
        ff::GRElt power = c;
        for (int l = 0; l < m; ++l) {
            term.lambda.push_back(ff::gr_trace(power));
            power = power * T;
        }
        term.by_shift = i <= 2 * m;
        if (!term.by_shift) {
            const Poly y = m == 1 ? Poly{detail::sub_mod(0, modulus[0] % r, r)} : Poly{0, 1};
            term.step = detail::pow_mod_poly(y, static_cast<u64>(i), modulus, r);
        }
        terms.push_back(std::move(term));
    }

    const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, group_order < 4096 ? 1u : opts.jobs));
    std::vector<Tally> partial(jobs, Tally(r));
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
        const u64 j0 = group_order * w / jobs;
        const u64 j1 = group_order * (w + 1) / jobs;
        if (jobs == 1) {
            walk(terms, modulus, r, group_order, j0, j1, partial[w]);
        } else {
            workers.emplace_back(walk, std::cref(terms), std::cref(modulus), r, group_order, j0, j1,
                                 std::ref(partial[w]));
        }
    }
    for (auto& th : workers) th.join();
    for (unsigned w = 1; w < jobs; ++w) partial[0].merge(partial[w]);
    partial[0].add(0);  // x = 0

    ExponentTally out;
    out.modulus = r;
    out.counts = partial[0].sorted();
    return out;
}

ExponentTally tally_exponents_pointwise(const tower::TowerSpec& t, int k, int precision, std::uint64_t budget) {
    t.require_precision(precision);
    auto field = ff::FieldDesc::make(t.p(), t.a(), k, t.ground_modulus());
    const EmbeddedTower et(t, field, precision);
    std::map<u64, u64> counts;
    ff::enumerate_field(field, budget, [&](const ff::FFElt& x) { ++counts[et.exponent_at(x)]; });
    ExponentTally out;
    out.modulus = ff::GRElt::one(field, precision).ring_modulus();
    out.counts.assign(counts.begin(), counts.end());
    return out;
}

}  // namespace zpt::lfun
