#include "zpt/tadic.hpp"

#include <stdexcept>

#include "zpt/errors.hpp"

namespace zpt::tadic {

using cyc::CycInt;

namespace {

mpz_class pow_z(std::uint64_t p, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, e);
    return r;
}

using QSeries = std::vector<mpq_class>;

// Exact L_0..L_K over Q from exact power sums: k L_k = sum_{i<=k} S_i L_{k-i}.
std::vector<QSeries> exp_series(const std::vector<Series>& sums, int K, int M) {
    std::vector<QSeries> L(K + 1, QSeries(M, 0));
    L[0][0] = 1;
    for (int k = 1; k <= K; ++k) {
        QSeries acc(M, 0);
        for (int i = 1; i <= k; ++i) {
            const Series& s = sums[i - 1];
            const QSeries& prev = L[k - i];
            for (int x = 0; x < M; ++x) {
                if (s[x] == 0) continue;
                for (int y = 0; x + y < M; ++y) acc[x + y] += s[x] * prev[y];
            }
        }
        for (auto& c : acc) c /= k;
        L[k] = std::move(acc);
    }
    return L;
}

std::vector<Series> reduce_series(const std::vector<QSeries>& L, std::uint64_t p, int N) {
    const mpz_class modulus = pow_z(p, static_cast<unsigned long>(N));
    std::vector<Series> out;
    for (const auto& row : L) {
        Series r;
        for (const auto& c : row) {
            if (mpz_divisible_ui_p(c.get_den().get_mpz_t(), p)) {
                throw ConsistencyError("T-adic coefficient " + c.get_str() + " is not p-integral");
            }
            mpz_class inv;
            mpz_invert(inv.get_mpz_t(), c.get_den().get_mpz_t(), modulus.get_mpz_t());
            mpz_class v = c.get_num() * inv;
            mpz_mod(v.get_mpz_t(), v.get_mpz_t(), modulus.get_mpz_t());
            r.push_back(v);
        }
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<Series> compute_reduced(const tower::TowerSpec& t, int K, int M, int N, int frob_prec,
                                    const lfun::ComputeOptions& opts) {
    std::vector<Series> sums;
    for (int k = 1; k <= K; ++k) sums.push_back(series_from_tally(lfun::tally_exponents(t, k, frob_prec, opts), M));
    return reduce_series(exp_series(sums, K, M), t.p(), N);
}

CycInt horner_at(const Series& f, const CycInt& x) {
    CycInt acc(x.p(), x.level());
    for (std::size_t i = f.size(); i-- > 0;) {
        acc *= x;
        acc += CycInt::from_integer(x.p(), x.level(), f[i]);
    }
    return acc;
}

}  // namespace

int ceil_log(std::uint64_t p, const mpz_class& x) {
    int m = 0;
    mpz_class pm = 1;
    while (pm < x) {
        pm *= p;
        ++m;
    }
    return m;
}

int exponent_precision(std::uint64_t p, int K, int M, int N) {
    return N + ceil_log(p, mpz_class(static_cast<long>(K) * M)) + 2;
}

Series series_from_tally(const lfun::ExponentTally& tally, int M) {
    if (M < 1) throw std::invalid_argument("T-adic truncation needs M >= 1");
    Series out(M, 0);
    mpz_class binom;
    for (const auto& [e, count] : tally.counts) {
        binom = 1;
        const mpz_class c(static_cast<unsigned long>(count));
        for (int j = 0; j < M; ++j) {
            if (j > 0) {
                if (static_cast<std::uint64_t>(j) > e) break;
                binom *= static_cast<unsigned long>(e - j + 1);
                mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), static_cast<unsigned long>(j));
            }
            mpz_addmul(out[j].get_mpz_t(), c.get_mpz_t(), binom.get_mpz_t());
        }
    }
    return out;
}

Series tadic_power_sum(const tower::TowerSpec& t, int k, int M, int N, const lfun::ComputeOptions& opts,
                       std::optional<int> exponent_prec) {
    if (N < 1) throw std::invalid_argument("T-adic precision needs N >= 1");
    const int prec = exponent_prec.value_or(exponent_precision(t.p(), k, M, N));
    Series s = series_from_tally(lfun::tally_exponents(t, k, prec, opts), M);
    const mpz_class modulus = pow_z(t.p(), static_cast<unsigned long>(N));
    for (auto& c : s) mpz_mod(c.get_mpz_t(), c.get_mpz_t(), modulus.get_mpz_t());
    return s;
}

TadicL tadic_l(const tower::TowerSpec& t, int K, int M, int N, const lfun::ComputeOptions& opts) {
    if (K < 0 || M < 1 || N < 1) throw std::invalid_argument("T-adic L needs K >= 0, M >= 1, N >= 1");
    TadicL L{t};
    L.K = K;
    L.M = M;
    L.N = N;
    L.frob_precision = exponent_precision(t.p(), std::max(K, 1), M, N);
    if (K == 0) {
        L.coeffs.push_back(Series(M, 0));
        L.coeffs[0][0] = 1;
        L.stability_certified = true;
        return L;
    }
    L.coeffs = compute_reduced(t, K, M, N, L.frob_precision, opts);
    const auto check = compute_reduced(t, K, M, N, L.frob_precision + 1, opts);
    if (check != L.coeffs) {
        throw PrecisionError("T-adic coefficients changed when the exponent precision was raised to " +
                             std::to_string(L.frob_precision + 1));
    }
    L.stability_certified = true;
    return L;
}

nlohmann::json TadicL::to_json() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["label"] = tower.label();
    j["p"] = tower.p();
    j["a"] = tower.a();
    j["K"] = K;
    j["M"] = M;
    j["N"] = N;
    j["N_prime"] = frob_precision;
    j["stability_certified"] = stability_certified;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : coeffs) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& c : row) r.push_back(c.get_str());
        rows.push_back(r);
    }
    j["coeffs"] = rows;
    return j;
}

bool mod_t_congruence(const TadicL& L) {
    const mpz_class modulus = pow_z(L.tower.p(), static_cast<unsigned long>(L.N));
    mpz_class qk = 1;
    for (int k = 0; k <= L.K; ++k) {
        mpz_class expected = qk % modulus;
        if (L.coeffs[k][0] != expected) return false;
        qk *= L.tower.q();
    }
    return true;
}

bool within_horizon(const TadicL& L, int n) {
    if (n == 0) return true;
    const mpz_class e = pow_z(L.tower.p(), static_cast<unsigned long>(n - 1)) * (L.tower.p() - 1);
    return e <= L.M;
}

Specialization specialize_at_tn(const TadicL& L, int n) {
    if (n < 0) throw std::invalid_argument("level must be >= 0");
    const auto p = L.tower.p();
    Specialization out;
    out.n = n;
    if (n == 0) {
        out.validity = static_cast<long>(L.N) * static_cast<long>(p - 1);
        for (const auto& row : L.coeffs) out.coeffs.push_back(CycInt::from_integer(p, 1, row[0]));
        return out;
    }
    if (!within_horizon(L, n)) {
        throw PrecisionError("level " + std::to_string(n) + " is beyond the specialization horizon of M = " +
                             std::to_string(L.M));
    }
    const long e = static_cast<long>(pow_z(p, static_cast<unsigned long>(n - 1)).get_ui() * (p - 1));
    out.validity = std::min<long>(static_cast<long>(L.N) * e, L.M);
    const CycInt t = -CycInt::uniformizer(p, n);  // zeta - 1
    for (const auto& row : L.coeffs) out.coeffs.push_back(horner_at(row, t));
    return out;
}

bool congruent_mod_pi(const CycInt& x, const CycInt& y, long v) {
    CycInt diff = x - y;
    for (long i = 0; i < v; ++i) {
        if (diff.is_zero()) return true;
        const mpz_class s = diff.augmentation();
        if (!mpz_divisible_ui_p(s.get_mpz_t(), x.p())) return false;
        diff = cyc::exact_div_by_uniformizer(diff);
    }
    return true;
}

std::optional<std::pair<long, long>> weierstrass(const Series& f, std::uint64_t p) {
    std::optional<std::pair<long, long>> best;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        mpz_class c = f[i];
        long v = 0;
        while (mpz_divisible_ui_p(c.get_mpz_t(), p)) {
            mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), p);
            ++v;
        }
        if (!best || v < best->first) best = std::make_pair(v, static_cast<long>(i));
    }
    return best;
}

namespace {

WeierstrassData weierstrass_cutoff(const TadicL& L, int K) {
    WeierstrassData w;
    const auto p = L.tower.p();
    int n_star = 0;
    while (tower::l_degree(L.tower, n_star + 1) <= K) ++n_star;
    w.n_star = n_star;
    const mpz_class bound = pow_z(p, static_cast<unsigned long>(n_star)) - 1;
    w.effective_M = bound < L.M ? bound.get_si() : L.M;
    Series sum(L.M, 0);
    for (int k = 0; k <= K; ++k)
        for (int j = 0; j < L.M; ++j) sum[j] += L.coeffs[k][j];
    for (long j = 0; j < w.effective_M; ++j) {
        if (!mpz_divisible_ui_p(sum[j].get_mpz_t(), p)) {
            w.certified = true;
            w.mu = 0;
            w.lambda = j;
            return w;
        }
    }
    w.reason = "precision insufficient: L(T, 1) vanishes mod p below T^" + std::to_string(w.effective_M);
    return w;
}

}  // namespace

WeierstrassData weierstrass_at_s1(const TadicL& L) {
    WeierstrassData w = weierstrass_cutoff(L, L.K);
    if (w.certified && L.K >= 1) {
        const WeierstrassData prev = weierstrass_cutoff(L, L.K - 1);
        if (prev.certified && (prev.mu != w.mu || prev.lambda != w.lambda)) {
            throw PrecisionError("unstable tail: cutoffs K and K-1 give different Weierstrass data");
        }
    }
    return w;
}

lfun::IntPoly eisenstein_min_poly(std::uint64_t p, int n) {
    if (n < 1) throw std::invalid_argument("t_n needs n >= 1");
    auto shifted_power = [&](unsigned long e) {
        lfun::IntPoly f(e + 1);
        for (unsigned long j = 0; j <= e; ++j) mpz_bin_uiui(f[j].get_mpz_t(), e, j);
        f[0] -= 1;
        return f;
    };
    const unsigned long hi = pow_z(p, static_cast<unsigned long>(n)).get_ui();
    auto q = lfun::int_poly_divide(shifted_power(hi), shifted_power(hi / p));
    if (!q) throw ConsistencyError("cyclotomic quotient is not a polynomial");
    return *q;
}

mpz_class eisenstein_norm(std::uint64_t p, int n) {
    const auto f = eisenstein_min_poly(p, n);
    const std::size_t degree = f.size() - 1;
    return degree % 2 == 0 ? f[0] : mpz_class(-f[0]);
}

}  // namespace zpt::tadic
