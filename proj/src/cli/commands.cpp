#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "zpt/cli.hpp"
#include "zpt/errors.hpp"
#include "zpt/iwasawa.hpp"
#include "zpt/tadic.hpp"

namespace zpt::cli {

using nlohmann::json;

namespace {

tower::TowerSpec load_tower(const RunConfig& cfg) {
    if (!cfg.spec_text.empty()) return tower::parse_tower_text(cfg.spec_text);
    if (cfg.spec_path.empty()) throw tower::SchemaError("--spec", "a tower spec file is required");
    return tower::load_tower_file(cfg.spec_path);
}

json load_json(const RunConfig& cfg) {
    std::string text = cfg.spec_text;
    if (text.empty()) {
        if (cfg.spec_path.empty()) throw tower::SchemaError("--spec", "a family spec file is required");
        std::ifstream in(cfg.spec_path);
        if (!in) throw tower::SchemaError(cfg.spec_path, "cannot open family spec file");
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw tower::SchemaError("family spec", std::string("malformed JSON: ") + e.what());
    }
}

bool wants_json(const RunConfig& cfg) { return cfg.format == "json" || cfg.format == "both"; }
bool wants_csv(const RunConfig& cfg) { return cfg.format == "csv" || cfg.format == "both"; }

void check_config(const RunConfig& cfg) {
    if (cfg.n_max < 1) throw tower::SchemaError("--nmax", "must be >= 1");
    if (cfg.budget < 1) throw tower::SchemaError("--budget", "must be positive");
    if (cfg.jobs < 1) throw tower::SchemaError("--jobs", "must be positive");
    if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "both") {
        throw tower::SchemaError("--format", "expected json, csv or both");
    }
}

lfun::ComputeOptions options(const RunConfig& cfg) { return {cfg.budget, cfg.jobs}; }

json header(const std::string& command, const tower::TowerSpec& t) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["tower"] = t.to_json();
    return j;
}

// f = x^d + c x with unit c and d >= 2.
std::optional<int> two_term_degree(const tower::TowerSpec& t) {
    const auto& cs = t.coefficients();
    if (cs.size() != 2 || cs[0].exponent != 1 || cs[1].exponent < 2) return std::nullopt;
    if (!t.is_unit_root()) return std::nullopt;
    ff::Coords one(t.a(), 0);
    one[0] = 1;
    if (cs[1].value != one) return std::nullopt;
    return cs[1].exponent;
}

}  // namespace

SlopeAnalysis analyze_slopes(lfun::Engine& engine, int n_max) {
    const auto& t = engine.tower();
    SlopeAnalysis out;
    const int top = engine.reachable_level(n_max);
    out.truncated = top < n_max;
    const mpq_class d = tower::slope_scale_d(t);
    json levels = json::array();
    std::ostringstream csv;
    csv << slopes_csv_header();
    for (int n = 1; n <= top; ++n) {
        const SlopeSeq& s = engine.slopes(n);
        json lv;
        lv["n"] = n;
        lv["degree"] = engine.l_poly(n).degree();
        lv["conductor"] = tower::conductor(t, n);
        lv["slopes"] = slope_seq_json(s);
        lv["slope_sum"] = rational_json(s.sum());
        lv["symmetric"] = s.reflected().same_multiset(s);
        if (!s.empty()) {
            const auto eq = slopes::equidistribution_stats(s);
            lv["ks_distance"] = rational_json(eq.ks_distance);
            lv["histogram"] = eq.histogram;
        }
        lv["ramification_lower_bound"] = slopes::ramification_lower_bound(s, t.a()).get_str();
        levels.push_back(lv);
        csv << slopes_csv_rows(s);
    }
    const auto report = slopes::detect_n0(engine, n_max);
    out.n0 = report.n0;
    out.mismatch = !report.mismatched_levels.empty();

    std::vector<std::string> verdicts;
    if (t.is_unit_root() && d.get_den() == 1 && t.p() % d.get_num().get_ui() == 1) {
        bool all = top >= 1;
        int bad = 0;
        for (int n = 1; n <= top && all; ++n) {
            const auto expected = SlopeSeq::from_list(t.p(), n, slopes::lw_slopes(static_cast<int>(d.get_num().get_si()), t.p(), n));
            if (!expected.same_multiset(engine.slopes(n))) {
                all = false;
                bad = n;
            }
        }
        verdicts.push_back(all ? "matches LW slope formula" : "differs from LW slope formula at level " + std::to_string(bad));
    }
    if (auto dd = two_term_degree(t); dd && slopes::oy_hypotheses(*dd, t.p(), t.a()) && top >= 1) {
        const auto expected = SlopeSeq::from_list(t.p(), 1, slopes::oy_slopes(*dd, t.p()));
        const bool ok = expected.same_multiset(engine.slopes(1)) && report.n0 && *report.n0 == 1;
        verdicts.push_back(ok ? "matches OY formula, n0=1" : "differs from OY formula");
    }
    if (report.n0) {
        verdicts.push_back("slope stable from n0=" + std::to_string(*report.n0) + " on computed levels");
    } else {
        verdicts.push_back("no n0 found at computed levels");
    }
    for (int m : report.mismatched_levels) {
        verdicts.push_back("prediction mismatch at level " + std::to_string(m) + " (potential counterexample lead)");
    }
    if (report.dwx_bound && !report.dwx_consistent) verdicts.push_back("n0 exceeds the DWX bound");

    json j;
    j["n_max"] = n_max;
    j["reachable_level"] = top;
    j["truncated"] = out.truncated;
    if (out.truncated) {
        j["truncation_notice"] = "levels " + std::to_string(top + 1) + ".." + std::to_string(n_max) +
                                 " exceed the enumeration budget and were not computed";
    }
    j["d"] = rational_json(d);
    j["levels"] = levels;
    j["stability"] = stability_json(report);
    if (top >= 1) {
        const auto z = engine.zeta_slopes(top);
        j["zeta"] = {{"n", top}, {"genus", z.genus.get_str()}, {"slopes", slope_seq_json(z.slopes)}};
    }
    std::string joined;
    for (const auto& v : verdicts) joined += (joined.empty() ? "" : "; ") + v;
    j["verdict"] = joined;
    j["verdicts"] = verdicts;
    out.json = j;
    out.csv = csv.str();
    return out;
}

CommandResult cmd_info(const RunConfig& cfg) {
    check_config(cfg);
    const auto t = load_tower(cfg);
    CommandResult res;
    json j = header("info", t);
    j["d"] = rational_json(tower::slope_scale_d(t));
    j["strongly_genus_stable"] = true;
    json levels = json::array();
    std::ostringstream csv;
    csv << "n,conductor,degree,genus\n";
    for (int n = 1; n <= cfg.n_max; ++n) {
        const auto num = tower::numerology(t, n);
        levels.push_back({{"n", n},
                          {"conductor", num.conductor},
                          {"degree", num.degree},
                          {"genus", num.genus.get_str()},
                          {"stable_degree", tower::degree_is_stable(t, n)}});
        csv << n << ',' << num.conductor << ',' << num.degree << ',' << num.genus.get_str() << '\n';
    }
    j["levels"] = levels;
    if (cfg.n_max >= 3) {
        if (auto fit = tower::genus_stable_fit(t, 1, cfg.n_max)) {
            j["genus_fit"] = {{"a", rational_json(fit->a)}, {"b", rational_json(fit->b)}, {"c", rational_json(fit->c)}};
        } else {
            j["genus_fit"] = nullptr;
        }
    }
    res.summary = info_table(t, cfg.n_max);
    if (wants_json(cfg)) res.files["info.json"] = dump(j);
    if (wants_csv(cfg)) res.files["info.csv"] = csv.str();
    return res;
}

CommandResult cmd_slopes(const RunConfig& cfg) {
    check_config(cfg);
    const auto t = load_tower(cfg);
    lfun::Engine engine(t, options(cfg));
    auto analysis = analyze_slopes(engine, cfg.n_max);
    json j = header("slopes", t);
    for (auto& [k, v] : analysis.json.items()) j[k] = v;
    CommandResult res;
    res.exit_code = analysis.truncated ? kPartial : kOk;
    std::ostringstream os;
    os << "slopes for " << t.label() << ": computed levels 1.." << j["reachable_level"].get<int>() << "\n";
    for (const auto& lv : j["levels"]) {
        os << "  n=" << lv["n"].get<int>() << " degree=" << lv["degree"].get<int>() << " slopes={";
        bool first = true;
        for (const auto& s : lv["slopes"]) {
            os << (first ? "" : ", ") << s["slope"].get<std::string>();
            if (s["multiplicity"].get<long>() > 1) os << " x" << s["multiplicity"].get<long>();
            first = false;
        }
        os << "}\n";
    }
    os << "  verdict: " << j["verdict"].get<std::string>() << "\n";
    if (analysis.truncated) os << "  " << j["truncation_notice"].get<std::string>() << "\n";
    res.summary = os.str();
    if (wants_json(cfg)) res.files["slopes.json"] = dump(j);
    if (wants_csv(cfg)) res.files["slopes.csv"] = analysis.csv;
    return res;
}

CommandResult cmd_classnumbers(const RunConfig& cfg) {
    check_config(cfg);
    const auto t = load_tower(cfg);
    lfun::Engine engine(t, options(cfg));
    const auto seq = iwasawa::class_number_sequence(engine, cfg.n_max);
    json j = header("classnumbers", t);
    const json report = iwasawa::report_json(seq);
    for (const auto& [k, v] : report.items()) j[k] = v;
    // h_n again as P(C_n, 1) from the integer zeta numerator.
    bool agree = true;
    for (std::size_t i = 0; i < seq.levels.size(); ++i) {
        agree = agree && lfun::int_poly_eval(engine.zeta_numerator(seq.levels[i]), 1) == seq.h[i];
    }
    j["zeta_numerator_agrees"] = agree;
    CommandResult res;
    res.exit_code = seq.truncated ? kPartial : kOk;
    std::ostringstream os, csv;
    csv << "n,h,vp\n";
    os << "class numbers for " << t.label() << "\n";
    for (std::size_t i = 0; i < seq.levels.size(); ++i) {
        os << "  h_" << seq.levels[i] << " = " << seq.h[i].get_str() << "  v_p = " << seq.vp[i] << "\n";
        csv << seq.levels[i] << ',' << seq.h[i].get_str() << ',' << seq.vp[i] << '\n';
    }
    os << "  fit: " << j["fit_status"].get<std::string>() << "\n";
    if (seq.truncated) os << "  levels beyond " << seq.levels.back() << " exceed the enumeration budget\n";
    res.summary = os.str();
    if (wants_json(cfg)) res.files["classnumbers.json"] = dump(j);
    if (wants_csv(cfg)) res.files["classnumbers.csv"] = csv.str();
    return res;
}

CommandResult cmd_tadic(const RunConfig& cfg) {
    check_config(cfg);
    const auto t = load_tower(cfg);
    const auto L = tadic::tadic_l(t, cfg.K, cfg.M, cfg.N, options(cfg));
    lfun::Engine engine(t, options(cfg));
    json j = header("tadic", t);
    j["series"] = L.to_json();
    json checks;
    checks["mod_t_congruence"] = tadic::mod_t_congruence(L);
    json specs = json::array();
    for (int n = 1; tadic::within_horizon(L, n) && n <= cfg.n_max; ++n) {
        json entry{{"n", n}};
        if (!engine.level_within_budget(n)) {
            entry["status"] = "L(chi_n, s) beyond the enumeration budget";
            specs.push_back(entry);
            continue;
        }
        const auto sp = tadic::specialize_at_tn(L, n);
        const auto& lp = engine.l_poly(n);
        bool match = true;
        for (int k = 0; k <= L.K; ++k) {
            const cyc::CycInt expected = k <= lp.degree() ? lp.coeffs[k] : cyc::CycInt(t.p(), n);
            match = match && tadic::congruent_mod_pi(sp.coeffs[k], expected, sp.validity);
        }
        entry["validity"] = sp.validity;
        entry["matches_l_polynomial"] = match;
        specs.push_back(entry);
    }
    checks["specializations"] = specs;
    const auto w = tadic::weierstrass_at_s1(L);
    json wj{{"certified", w.certified}, {"n_star", w.n_star}, {"effective_M", w.effective_M}};
    if (w.certified) {
        wj["mu"] = w.mu;
        wj["lambda"] = w.lambda;
    } else {
        wj["reason"] = w.reason;
    }
    checks["weierstrass_at_s1"] = wj;
    j["checks"] = checks;
    CommandResult res;
    std::ostringstream os;
    os << "T-adic L for " << t.label() << " mod (p^" << L.N << ", T^" << L.M << ", s^" << L.K + 1 << "), N'=" << L.frob_precision
       << "\n  mod T congruence: " << (checks["mod_t_congruence"].get<bool>() ? "holds" : "FAILS") << "\n";
    for (const auto& s : specs) {
        os << "  t_" << s["n"].get<int>() << ": ";
        if (s.contains("matches_l_polynomial")) {
            os << (s["matches_l_polynomial"].get<bool>() ? "matches" : "DIFFERS from") << " L(chi_n, s) mod pi^"
               << s["validity"].get<long>() << "\n";
        } else {
            os << s["status"].get<std::string>() << "\n";
        }
    }
    if (w.certified) {
        os << "  Weierstrass data at s=1: mu=" << w.mu << " lambda=" << w.lambda << "\n";
    } else {
        os << "  Weierstrass data at s=1: " << w.reason << "\n";
    }
    res.summary = os.str();
    if (wants_json(cfg)) res.files["tadic.json"] = dump(j);
    if (wants_csv(cfg)) {
        std::ostringstream csv;
        csv << "k,j,coefficient\n";
        for (int k = 0; k <= L.K; ++k)
            for (int x = 0; x < L.M; ++x) csv << k << ',' << x << ',' << L.coeffs[k][x].get_str() << '\n';
        res.files["tadic.csv"] = csv.str();
    }
    return res;
}

namespace {

std::vector<std::pair<std::string, tower::TowerSpec>> sweep_members(const json& fam, std::uint64_t seed) {
    if (!fam.is_object()) throw tower::SchemaError("$", "family spec must be a JSON object");
    std::vector<std::pair<std::string, tower::TowerSpec>> out;
    if (fam.contains("towers")) {
        for (const auto& [key, _] : fam.items()) {
            if (key != "towers" && key != "n_max") throw tower::SchemaError(key, "unknown field");
        }
        if (!fam["towers"].is_array()) throw tower::SchemaError("towers", "expected an array of tower specs");
        for (std::size_t i = 0; i < fam["towers"].size(); ++i) {
            auto t = tower::TowerSpec::from_json(fam["towers"][i]);
            std::string label = t.label().empty() ? "tower" + std::to_string(i) : t.label();
            out.emplace_back(label, t);
        }
    } else {
        const std::set<std::string> allowed{"family", "primes", "max_degree", "sample", "n_max"};
        for (const auto& [key, _] : fam.items()) {
            if (!allowed.count(key)) throw tower::SchemaError(key, "unknown field");
        }
        if (!fam.contains("family") || fam["family"] != "unit_root") {
            throw tower::SchemaError("family", "expected \"unit_root\" or an explicit \"towers\" list");
        }
        if (!fam.contains("primes") || !fam["primes"].is_array()) throw tower::SchemaError("primes", "expected an array");
        if (!fam.contains("max_degree") || !fam["max_degree"].is_number_integer()) {
            throw tower::SchemaError("max_degree", "expected an integer");
        }
        const int max_degree = fam["max_degree"].get<int>();
        if (max_degree < 1 || max_degree > 12) throw tower::SchemaError("max_degree", "expected 1..12");
        for (const auto& pj : fam["primes"]) {
            if (!pj.is_number_integer()) throw tower::SchemaError("primes", "expected integers");
            const auto p = pj.get<std::uint64_t>();
            if (p < 3 || p > 97 || !ff::is_prime(p)) throw tower::SchemaError("primes", "expected odd primes below 100");
            std::vector<int> exps;
            for (int i = 1; i <= max_degree; ++i)
                if (i % static_cast<int>(p) != 0) exps.push_back(i);
            std::vector<std::uint64_t> digits(exps.size(), 0);
            while (true) {
                std::size_t pos = 0;
                while (pos < digits.size() && ++digits[pos] == p) digits[pos++] = 0;
                if (pos == digits.size()) break;
                std::vector<std::pair<int, std::uint64_t>> terms;
                std::string label = "unit_root_p" + std::to_string(p) + "_";
                for (std::size_t e = 0; e < exps.size(); ++e) {
                    label += std::to_string(digits[e]);
                    if (digits[e]) terms.emplace_back(exps[e], digits[e]);
                }
                out.emplace_back(label, tower::TowerSpec::unit_root(p, terms, label));
            }
        }
        if (fam.contains("sample")) {
            if (!fam["sample"].is_number_integer() || fam["sample"].get<long>() < 0) {
                throw tower::SchemaError("sample", "expected a non-negative integer");
            }
            const auto want = fam["sample"].get<std::size_t>();
            if (want < out.size()) {
                std::mt19937_64 rng(seed);
                std::vector<std::size_t> idx(out.size());
                for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
                for (std::size_t i = 0; i < want; ++i) {
                    const std::size_t j = i + static_cast<std::size_t>(rng() % (idx.size() - i));
                    std::swap(idx[i], idx[j]);
                }
                idx.resize(want);
                std::sort(idx.begin(), idx.end());
                std::vector<std::pair<std::string, tower::TowerSpec>> picked;
                for (auto i : idx) picked.push_back(out[i]);
                out = std::move(picked);
            }
        }
    }
    std::set<std::string> labels;
    for (const auto& [label, _] : out) {
        if (!labels.insert(label).second) throw tower::SchemaError("towers", "duplicate tower label \"" + label + "\"");
    }
    return out;
}

}  // namespace

CommandResult cmd_sweep(const RunConfig& cfg) {
    check_config(cfg);
    const json fam = load_json(cfg);
    const auto members = sweep_members(fam, cfg.seed);
    int n_max = cfg.n_max;
    if (fam.contains("n_max")) {
        if (!fam["n_max"].is_number_integer() || fam["n_max"].get<int>() < 1) {
            throw tower::SchemaError("n_max", "expected a positive integer");
        }
        n_max = fam["n_max"].get<int>();
    }
    json records = json::array();
    std::map<std::string, long> n0_counts;
    json mismatches = json::array();
    long errors = 0;
    std::ostringstream csv;
    csv << "label,n0,reachable_level,truncated,mismatch,ks_distance_top\n";
    for (const auto& [label, t] : members) {
        json rec{{"label", label}, {"tower", t.to_json()}};
        try {
            lfun::Engine engine(t, options(cfg));
            const auto a = analyze_slopes(engine, n_max);
            rec["n0"] = a.n0 ? json(*a.n0) : json("not found");
            rec["reachable_level"] = a.json["reachable_level"];
            rec["truncated"] = a.truncated;
            rec["mismatch"] = a.mismatch;
            rec["verdict"] = a.json["verdict"];
            rec["stability"] = a.json["stability"];
            std::string ks;
            if (!a.json["levels"].empty() && a.json["levels"].back().contains("ks_distance")) {
                ks = a.json["levels"].back()["ks_distance"].get<std::string>();
                rec["ks_distance_top"] = ks;
            }
            ++n0_counts[a.n0 ? std::to_string(*a.n0) : "not found"];
            if (a.mismatch) mismatches.push_back(label);
            csv << label << ',' << (a.n0 ? std::to_string(*a.n0) : "not found") << ','
                << a.json["reachable_level"].get<int>() << ',' << (a.truncated ? 1 : 0) << ',' << (a.mismatch ? 1 : 0)
                << ',' << ks << '\n';
        } catch (const std::exception& e) {
            rec["error"] = e.what();
            ++errors;
        }
        records.push_back(rec);
    }
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "sweep";
    j["family"] = fam;
    j["n_max"] = n_max;
    j["seed"] = cfg.seed;
    j["records"] = records;
    j["summary"] = {{"towers", members.size()}, {"n0_distribution", n0_counts}, {"prediction_mismatches", mismatches},
                    {"errors", errors}};
    CommandResult res;
    std::ostringstream os;
    os << "sweep: " << members.size() << " towers, " << errors << " errors, " << mismatches.size()
       << " prediction mismatches\n";
    for (const auto& [k, v] : n0_counts) os << "  n0=" << k << ": " << v << "\n";
    for (const auto& m : mismatches) os << "  MISMATCH (potential counterexample lead): " << m.get<std::string>() << "\n";
    res.summary = os.str();
    if (wants_json(cfg)) res.files["sweep.json"] = dump(j);
    if (wants_csv(cfg)) res.files["sweep.csv"] = csv.str();
    return res;
}

CommandResult run_command(const std::string& name, const RunConfig& cfg) {
    try {
        if (name == "info") return cmd_info(cfg);
        if (name == "slopes") return cmd_slopes(cfg);
        if (name == "classnumbers") return cmd_classnumbers(cfg);
        if (name == "tadic") return cmd_tadic(cfg);
        if (name == "sweep") return cmd_sweep(cfg);
        return {kUsage, "unknown command: " + name + "\n", {}};
    } catch (const tower::SchemaError& e) {
        return {kUsage, std::string("error: ") + e.what() + "\n", {}};
    } catch (const BudgetExceeded& e) {
        return {kPartial, std::string("budget exceeded: ") + e.what() + "\n", {}};
    } catch (const PrecisionError& e) {
        return {kPartial, std::string("precision error: ") + e.what() + "\n", {}};
    } catch (const std::invalid_argument& e) {
        return {kUsage, std::string("error: ") + e.what() + "\n", {}};
    }
}

void write_files(const CommandResult& result, const std::string& dir) {
    if (dir.empty() || result.files.empty()) return;
    std::filesystem::create_directories(dir);
    for (const auto& [name, content] : result.files) {
        std::ofstream out(std::filesystem::path(dir) / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + name + " in " + dir);
        out << content;
    }
}

}  // namespace zpt::cli
