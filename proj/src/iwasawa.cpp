#include "zpt/iwasawa.hpp"

#include <stdexcept>

#include "zpt/errors.hpp"

namespace zpt::iwasawa {

namespace {

long vp_of(const mpz_class& x, std::uint64_t p) {
    if (x == 0) throw std::invalid_argument("v_p(0) is infinite");
    mpz_class y = x;
    long v = 0;
    while (mpz_divisible_ui_p(y.get_mpz_t(), p)) {
        mpz_divexact_ui(y.get_mpz_t(), y.get_mpz_t(), p);
        ++v;
    }
    return v;
}

mpz_class pow_z(std::uint64_t p, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p, e);
    return r;
}

}  // namespace

std::string IwasawaFit::status_string() const {
    switch (status) {
        case Status::Ok:
            return "ok";
        case Status::InsufficientData:
            return "insufficient data";
        case Status::NotStable:
            return "not yet stable at computed levels";
        case Status::NonIntegral:
            return "non-integral solution";
    }
    return "unknown";
}

ClassNumberSeq class_number_sequence(lfun::Engine& engine, int n_max) {
    if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
    const auto& t = engine.tower();
    ClassNumberSeq seq;
    seq.label = t.label();
    seq.p = t.p();
    seq.a = t.a();
    const int top = engine.reachable_level(n_max);
    seq.truncated = top < n_max;
    mpz_class h = 1;
    for (int n = 0; n <= top; ++n) {
        if (n > 0) {
            const mpz_class next = h * engine.class_number_ratio(n);
            if (!mpz_divisible_p(next.get_mpz_t(), h.get_mpz_t())) throw ConsistencyError("h_{n-1} does not divide h_n");
            h = next;
        }
        seq.levels.push_back(n);
        seq.h.push_back(h);
        seq.vp.push_back(vp_of(h, t.p()));
    }
    seq.fit = fit_iwasawa(seq);
    return seq;
}

IwasawaFit fit_iwasawa(const ClassNumberSeq& seq) {
    IwasawaFit fit;
    const std::size_t count = seq.levels.size();
    if (count < 3) return fit;
    mpq_class m[3][3], rhs[3];
    for (int r = 0; r < 3; ++r) {
        const int n = seq.levels[count - 3 + r];
        m[r][0] = pow_z(seq.p, static_cast<unsigned long>(n));
        m[r][1] = n;
        m[r][2] = 1;
        rhs[r] = seq.vp[count - 3 + r];
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
    fit.n_lo = seq.levels.front();
    fit.n_hi = seq.levels.back();
    for (const auto& s : sol) {
        if (s.get_den() != 1) {
            fit.status = IwasawaFit::Status::NonIntegral;
            return fit;
        }
    }
    fit.mu = sol[0].get_num();
    fit.lambda = sol[1].get_num();
    fit.nu = sol[2].get_num();
    fit.status = IwasawaFit::Status::Ok;
    for (std::size_t i = 0; i < count; ++i) {
        const int n = seq.levels[i];
        const mpz_class predicted = fit.mu * pow_z(seq.p, static_cast<unsigned long>(n)) + fit.lambda * n + fit.nu;
        if (predicted != seq.vp[i]) {
            fit.status = IwasawaFit::Status::NotStable;
            fit.n_lo = seq.levels[i + 1];
        }
    }
    return fit;
}

std::uint64_t unit_congruence(const ClassNumberSeq& seq, int n) {
    if (n < 1) throw std::invalid_argument("unit congruence needs n >= 1");
    std::optional<std::size_t> hi, lo;
    for (std::size_t i = 0; i < seq.levels.size(); ++i) {
        if (seq.levels[i] == n) hi = i;
        if (seq.levels[i] == n - 1) lo = i;
    }
    if (!hi || !lo) throw std::invalid_argument("levels " + std::to_string(n - 1) + " and " + std::to_string(n) +
                                                " are not both present");
    mpz_class ratio = seq.h[*hi] / seq.h[*lo];
    while (mpz_divisible_ui_p(ratio.get_mpz_t(), seq.p)) mpz_divexact_ui(ratio.get_mpz_t(), ratio.get_mpz_t(), seq.p);
    return mpz_fdiv_ui(ratio.get_mpz_t(), seq.p);
}

nlohmann::json report_json(const ClassNumberSeq& seq) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["label"] = seq.label;
    j["p"] = seq.p;
    j["a"] = seq.a;
    nlohmann::json levels = nlohmann::json::array();
    for (std::size_t i = 0; i < seq.levels.size(); ++i) {
        levels.push_back({{"n", seq.levels[i]}, {"h", seq.h[i].get_str()}, {"vp", seq.vp[i]}});
    }
    j["levels"] = levels;
    if (seq.fit && seq.fit->status == IwasawaFit::Status::Ok) {
        j["fit"] = {{"mu", seq.fit->mu.get_str()},
                    {"lambda", seq.fit->lambda.get_str()},
                    {"nu", seq.fit->nu.get_str()},
                    {"n_lo", seq.fit->n_lo},
                    {"n_hi", seq.fit->n_hi}};
    } else {
        j["fit"] = nullptr;
    }
    j["fit_status"] = seq.fit ? seq.fit->status_string() : "insufficient data";
    nlohmann::json checks = nlohmann::json::array();
    for (int n : seq.levels) {
        if (n < 1) continue;
        checks.push_back({{"n", n}, {"residue", unit_congruence(seq, n)}});
    }
    j["congruence_checks"] = checks;
    j["truncated"] = seq.truncated;
    return j;
}

}  // namespace zpt::iwasawa
