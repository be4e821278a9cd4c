#include "zpt/slopes.hpp"

#include <stdexcept>

#include "zpt/errors.hpp"

namespace zpt::slopes {

namespace {

mpz_class pow_z(std::uint64_t p, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, e);
    return r;
}

// p^e for any integer e, as a rational.
mpq_class pow_q(std::uint64_t p, long e) {
    if (e >= 0) return mpq_class(pow_z(p, static_cast<unsigned long>(e)));
    return mpq_class(mpz_class(1), pow_z(p, static_cast<unsigned long>(-e)));
}

}  // namespace

long ell_alpha(const SlopeSeq& s, const mpq_class& alpha) {
    if (alpha < 0) throw std::invalid_argument("alpha must be non-negative");
    mpq_class slope = alpha / s.scale();
    slope.canonicalize();
    return s.multiplicity(slope);
}

long d_alpha(lfun::Engine& engine, int n, const mpq_class& alpha) {
    if (alpha < 0) throw std::invalid_argument("alpha must be non-negative");
    if (n <= 0) return 0;
    const auto p = engine.tower().p();
    long total = 0;
    for (int i = 1; i <= n; ++i) {
        // A level-i slope equal to alpha/p^n is counted by ell at alpha p^{i-n}.
        const long phi = static_cast<long>(pow_z(p, i - 1).get_ui() * (p - 1));
        total += phi * ell_alpha(engine.slopes(i), alpha * pow_q(p, i - n));
    }
    mpq_class slope = alpha / pow_q(p, n);
    slope.canonicalize();
    const long direct = engine.zeta_slopes(n).slopes.multiplicity(slope);
    if (direct != total) {
        throw ConsistencyError("d_alpha aggregate " + std::to_string(total) + " differs from the zeta multiplicity " +
                               std::to_string(direct));
    }
    return total;
}

SlopeSeq predict_stable_slopes(const SlopeSeq& base, int n, const mpq_class& d, std::uint64_t p) {
    const int k = base.level();
    if (k < 1 || n < k) throw std::invalid_argument("prediction needs 1 <= k <= n");
    const mpq_class expected_base = d * pow_q(p, k - 1) - 1;
    if (mpq_class(base.total()) != expected_base) {
        throw std::invalid_argument("base has " + std::to_string(base.total()) + " slopes, expected " +
                                    rational_string(expected_base));
    }
    const mpz_class blocks = pow_z(p, static_cast<unsigned long>(n - k));
    SlopeSeq out(p, n);
    for (mpz_class i = 0; i < blocks; ++i) {
        out.add(mpq_class(i, blocks));
        for (const auto& [alpha, mult] : base.entries()) out.add((alpha + i) / blocks, mult);
    }
    out.remove(0);
    const mpq_class expected = d * pow_q(p, n - 1) - 1;
    if (mpq_class(out.total()) != expected) throw ConsistencyError("predicted slope count disagrees with the degree");
    return out;
}

int dwx_bound_raw(const mpq_class& d, std::uint64_t p, int a) {
    const mpq_class x = d * a / 8;
    if (x <= 0) throw std::invalid_argument("d must be positive");
    // least integer m with p^m >= x
    long m = 0;
    if (x > 1) {
        while (pow_q(p, m) < x) ++m;
    } else {
        while (pow_q(p, m - 1) >= x) --m;
    }
    return static_cast<int>(1 + m);
}

int dwx_bound(const mpq_class& d, std::uint64_t p, int a) { return std::max(1, dwx_bound_raw(d, p, a)); }

StabilityReport detect_n0(lfun::Engine& engine, int n_max) {
    if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
    const auto& t = engine.tower();
    const mpq_class d = tower::slope_scale_d(t);
    const int top = engine.reachable_level(n_max);
    StabilityReport report;
    for (int m = top + 1; m <= n_max; ++m) report.unverified_levels.push_back(m);
    bool first_candidate = true;
    for (int k = 1; k <= top; ++k) {
        if (!tower::degree_is_stable(t, k)) continue;
        const SlopeSeq& base = engine.slopes(k);
        std::vector<int> verified;
        bool ok = true;
        for (int m = k + 1; m <= top; ++m) {
            if (predict_stable_slopes(base, m, d, t.p()).same_multiset(engine.slopes(m))) {
                verified.push_back(m);
            } else {
                if (first_candidate) report.mismatched_levels.push_back(m);
                ok = false;
                break;
            }
        }
        first_candidate = false;
        if (ok) {
            report.n0 = k;
            report.base_slopes = base;
            report.verified_levels = verified;
            break;
        }
    }
    if (t.is_unit_root()) {
        report.dwx_raw = dwx_bound_raw(d, t.p(), t.a());
        report.dwx_bound = dwx_bound(d, t.p(), t.a());
        report.dwx_consistent = !report.n0 || *report.n0 <= *report.dwx_bound;
    }
    return report;
}

Equidistribution equidistribution_stats(const SlopeSeq& s, int bins) {
    if (s.empty()) throw std::invalid_argument("equidistribution needs a nonempty slope sequence");
    if (bins < 1) throw std::invalid_argument("histogram needs at least one bin");
    Equidistribution out;
    out.histogram.assign(bins, 0);
    const long n = s.total();
    long before = 0;
    out.ks_distance = 0;
    for (const auto& [slope, mult] : s.entries()) {
        const long after = before + mult;
        const mpq_class above = mpq_class(after, n) - slope;
        const mpq_class below = slope - mpq_class(before, n);
        if (above > out.ks_distance) out.ks_distance = above;
        if (below > out.ks_distance) out.ks_distance = below;
        before = after;
        const mpq_class scaled = slope * bins;
        const mpz_class bin = scaled.get_num() / scaled.get_den();
        long b = std::min<long>(bin.get_si(), bins - 1);
        out.histogram[b] += mult;
    }
    out.ks_distance.canonicalize();
    return out;
}

mpz_class ramification_lower_bound(const SlopeSeq& s, int a) {
    mpz_class l = 1;
    for (const auto& [slope, mult] : s.entries()) {
        mpq_class x = slope * a;
        x.canonicalize();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den().get_mpz_t());
    }
    return l;
}

std::vector<mpq_class> oy_slopes(int d, std::uint64_t p) {
    std::vector<mpq_class> out;
    const long pl = static_cast<long>(p);
    for (long i = 1; i < d; ++i) {
        const long correction = i * pl - (i * pl / d) * d - i;
        mpq_class alpha = mpq_class(i, d) + mpq_class(d - 1, d * (pl - 1)) * correction;
        alpha.canonicalize();
        out.push_back(alpha);
    }
    return out;
}

bool oy_hypotheses(int d, std::uint64_t p, int a) {
    const mpq_class first(static_cast<long>(d) * d * (d - 1), 2);
    const mpq_class second = 1 + mpq_class(static_cast<long>(d) * (d - 1) * a, 4);
    return d % static_cast<long>(p) != 0 && mpq_class(static_cast<long>(p)) > first &&
           mpq_class(static_cast<long>(p)) > second;
}

std::vector<mpq_class> lw_slopes(int d, std::uint64_t p, int n) {
    const mpz_class denom = pow_z(p, n - 1) * d;
    std::vector<mpq_class> out;
    for (mpz_class i = 1; i < denom; ++i) {
        mpq_class x(i, denom);
        x.canonicalize();
        out.push_back(x);
    }
    return out;
}

}  // namespace zpt::slopes
