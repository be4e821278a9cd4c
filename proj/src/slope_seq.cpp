#include "zpt/slope_seq.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace zpt {

std::string rational_string(const mpq_class& value) {
    mpq_class x = value;
    x.canonicalize();
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

SlopeSeq SlopeSeq::from_list(std::uint64_t p, int level, const std::vector<mpq_class>& slopes) {
    SlopeSeq s(p, level);
    for (const auto& x : slopes) s.add(x);
    return s;
}

void SlopeSeq::add(const mpq_class& slope, long multiplicity) {
    if (multiplicity <= 0) throw std::invalid_argument("slope multiplicity must be positive");
    if (slope < 0 || slope > 1) throw std::invalid_argument("slope " + rational_string(slope) + " outside [0, 1]");
    mpq_class s = slope;
    s.canonicalize();
    auto it = std::lower_bound(entries_.begin(), entries_.end(), s,
                               [](const auto& e, const mpq_class& v) { return e.first < v; });
    if (it != entries_.end() && it->first == s) {
        it->second += multiplicity;
    } else {
        entries_.insert(it, {s, multiplicity});
    }
}

void SlopeSeq::remove(const mpq_class& slope, long multiplicity) {
    auto it = std::find_if(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == slope; });
    if (it == entries_.end() || it->second < multiplicity) {
        throw std::invalid_argument("cannot remove slope " + rational_string(slope));
    }
    it->second -= multiplicity;
    if (it->second == 0) entries_.erase(it);
}

long SlopeSeq::total() const {
    long t = 0;
    for (const auto& e : entries_) t += e.second;
    return t;
}

long SlopeSeq::multiplicity(const mpq_class& slope) const {
    for (const auto& e : entries_)
        if (e.first == slope) return e.second;
    return 0;
}

mpq_class SlopeSeq::sum() const {
    mpq_class s = 0;
    for (const auto& e : entries_) s += e.first * e.second;
    return s;
}

std::vector<mpq_class> SlopeSeq::expanded() const {
    std::vector<mpq_class> out;
    for (const auto& e : entries_)
        for (long i = 0; i < e.second; ++i) out.push_back(e.first);
    return out;
}

mpq_class SlopeSeq::scale() const {
    mpz_class s;
    mpz_ui_pow_ui(s.get_mpz_t(), p_, static_cast<unsigned long>(level_));
    return mpq_class(s);
}

SlopeSeq SlopeSeq::reflected() const {
    SlopeSeq out(p_, level_);
    for (const auto& e : entries_) out.add(1 - e.first, e.second);
    return out;
}

SlopeSeq SlopeSeq::scaled_multiplicities(long factor) const {
    SlopeSeq out(p_, level_);
    for (const auto& e : entries_) out.add(e.first, e.second * factor);
    return out;
}

std::string SlopeSeq::to_string() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [s, m] : entries_) {
        if (!first) os << ", ";
        first = false;
        os << rational_string(s);
        if (m > 1) os << " x" << m;
    }
    os << "}";
    return os.str();
}

}  // namespace zpt
