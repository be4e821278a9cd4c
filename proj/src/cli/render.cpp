#include <sstream>

#include "zpt/cli.hpp"

namespace zpt::cli {

std::string rational_json(const mpq_class& x) {
    mpq_class y = x;
    y.canonicalize();
    return y.get_num().get_str() + "/" + y.get_den().get_str();
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

nlohmann::json slope_seq_json(const SlopeSeq& s) {
    nlohmann::json arr = nlohmann::json::array();
    const mpq_class scale = s.scale();
    for (const auto& [slope, mult] : s.entries()) {
        arr.push_back({{"slope", rational_json(slope)},
                       {"multiplicity", mult},
                       {"rescaled", rational_json(slope * scale)}});
    }
    return arr;
}

std::string slopes_csv_header() {
    return "level,slope_numerator,slope_denominator,multiplicity,rescaled_numerator,rescaled_denominator\n";
}

std::string slopes_csv_rows(const SlopeSeq& s) {
    std::ostringstream os;
    const mpq_class scale = s.scale();
    for (const auto& [slope, mult] : s.entries()) {
        mpq_class rescaled = slope * scale;
        rescaled.canonicalize();
        os << s.level() << ',' << slope.get_num().get_str() << ',' << slope.get_den().get_str() << ',' << mult << ','
           << rescaled.get_num().get_str() << ',' << rescaled.get_den().get_str() << '\n';
    }
    return os.str();
}

nlohmann::json stability_json(const slopes::StabilityReport& r) {
    nlohmann::json j;
    j["n0"] = r.n0 ? nlohmann::json(*r.n0) : nlohmann::json("not found");
    j["base_slopes"] = r.n0 ? slope_seq_json(r.base_slopes) : nlohmann::json::array();
    j["verified_levels"] = r.verified_levels;
    j["unverified_levels"] = r.unverified_levels;
    j["mismatched_levels"] = r.mismatched_levels;
    if (r.dwx_bound) {
        j["dwx_bound"] = *r.dwx_bound;
        j["dwx_raw"] = *r.dwx_raw;
        j["dwx_consistent"] = r.dwx_consistent;
    } else {
        j["dwx_bound"] = nullptr;
    }
    return j;
}

std::string info_table(const tower::TowerSpec& t, int n_max) {
    std::ostringstream os;
    os << "tower " << (t.label().empty() ? "(unlabelled)" : t.label()) << "  p=" << t.p() << " a=" << t.a()
       << " d=" << rational_string(tower::slope_scale_d(t)) << " strongly genus stable\n";
    os << "n\tconductor\tdegree\tgenus\tstable_degree\n";
    for (int n = 1; n <= n_max; ++n) {
        os << n << '\t' << tower::conductor(t, n) << '\t' << tower::l_degree(t, n) << '\t'
           << tower::genus(t, n).get_str() << '\t' << (tower::degree_is_stable(t, n) ? "yes" : "no") << '\n';
    }
    return os.str();
}

}  // namespace zpt::cli
