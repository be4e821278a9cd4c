#ifndef ZPT_IWASAWA_HPP
#define ZPT_IWASAWA_HPP

// Class numbers along a tower and the fit v_p(h_n) = mu p^n + lambda n + nu.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "zpt/lfun.hpp"

namespace zpt::iwasawa {

struct IwasawaFit {
    enum class Status { Ok, InsufficientData, NotStable, NonIntegral };
    Status status = Status::InsufficientData;
    mpz_class mu, lambda, nu;
    int n_lo = 0, n_hi = 0;  // levels the fit was checked on
    std::string status_string() const;
};

struct ClassNumberSeq {
    std::string label;
    std::uint64_t p = 0;
    int a = 1;
    std::vector<int> levels;
    std::vector<mpz_class> h;
    std::vector<long> vp;
    std::optional<IwasawaFit> fit;
    bool truncated = false;  // n_max was beyond the budget
};

// h_0 .. h_m for the largest reachable m <= n_max, with h_{n-1} | h_n asserted.
ClassNumberSeq class_number_sequence(lfun::Engine& engine, int n_max);

IwasawaFit fit_iwasawa(const ClassNumberSeq& seq);

// Prime-to-p part of h_n / h_{n-1}, reduced mod p.
std::uint64_t unit_congruence(const ClassNumberSeq& seq, int n);

nlohmann::json report_json(const ClassNumberSeq& seq);

}  // namespace zpt::iwasawa

#endif  // ZPT_IWASAWA_HPP
