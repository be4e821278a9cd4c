#include <fstream>
#include <set>
#include <sstream>

#include "zpt/tower.hpp"

namespace zpt::tower {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key)) throw SchemaError(where + key, "unknown field");
    }
}

std::int64_t require_int(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw SchemaError(where + key, "missing required field");
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) throw SchemaError(where + key, "expected an integer");
    return v.get<std::int64_t>();
}

ff::Coords require_digits(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) throw SchemaError(where + key, "missing required field");
    const auto& v = obj.at(key);
    if (!v.is_array()) throw SchemaError(where + key, "expected an array of non-negative integers");
    ff::Coords out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number_integer() || v[i].get<std::int64_t>() < 0) {
            throw SchemaError(where + key + "[" + std::to_string(i) + "]", "expected a non-negative integer");
        }
        out.push_back(v[i].get<std::uint64_t>());
    }
    return out;
}

}  // namespace

TowerSpec TowerSpec::from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("$", "tower spec must be a JSON object");
    reject_unknown(j, {"label", "p", "a", "modulus", "coeffs"}, "");
    std::string label;
    if (j.contains("label")) {
        if (!j.at("label").is_string()) throw SchemaError("label", "expected a string");
        label = j.at("label").get<std::string>();
    }
    const auto p = require_int(j, "p", "");
    if (p == 2) throw SchemaError("p", "p > 2 required: the tower construction is only defined for odd p");
    if (p < 3 || !ff::is_prime(static_cast<std::uint64_t>(p))) throw SchemaError("p", "expected an odd prime");
    std::int64_t a = 1;
    if (j.contains("a")) a = require_int(j, "a", "");
    if (a < 1 || a > 64) throw SchemaError("a", "expected 1 <= a <= 64");
    std::optional<ff::Coords> modulus;
    if (j.contains("modulus")) modulus = require_digits(j, "modulus", "");

    if (!j.contains("coeffs")) throw SchemaError("coeffs", "missing required field");
    const auto& arr = j.at("coeffs");
    if (!arr.is_array() || arr.empty()) throw SchemaError("coeffs", "expected a non-empty array");
    std::vector<Coefficient> coeffs;
    for (std::size_t idx = 0; idx < arr.size(); ++idx) {
        const std::string where = "coeffs[" + std::to_string(idx) + "].";
        const auto& c = arr[idx];
        if (!c.is_object()) throw SchemaError("coeffs[" + std::to_string(idx) + "]", "expected an object");
        reject_unknown(c, {"i", "kind", "value", "precision"}, where);
        Coefficient coef;
        const auto i = require_int(c, "i", where);
        if (i < 1 || i > 1'000'000) throw SchemaError(where + "i", "expected 1 <= i <= 10^6");
        coef.exponent = static_cast<int>(i);
        if (!c.contains("kind") || !c.at("kind").is_string()) throw SchemaError(where + "kind", "expected \"teichmuller\" or \"ring\"");
        const auto kind = c.at("kind").get<std::string>();
        if (kind == "teichmuller") {
            coef.kind = CoeffKind::Teichmuller;
            if (c.contains("precision")) throw SchemaError(where + "precision", "only ring coefficients carry a precision");
        } else if (kind == "ring") {
            coef.kind = CoeffKind::Ring;
            const auto prec = require_int(c, "precision", where);
            if (prec < 1 || prec > 64) throw SchemaError(where + "precision", "expected 1 <= precision <= 64");
            coef.precision = static_cast<int>(prec);
        } else {
            throw SchemaError(where + "kind", "expected \"teichmuller\" or \"ring\"");
        }
        coef.value = require_digits(c, "value", where);
        coeffs.push_back(std::move(coef));
    }
    try {
        return TowerSpec(label, static_cast<std::uint64_t>(p), static_cast<int>(a), std::move(coeffs), modulus);
    } catch (const SchemaError&) {
        throw;
    } catch (const std::exception& e) {
        throw SchemaError("$", e.what());
    }
}

json TowerSpec::to_json() const {
    json j;
    j["label"] = label_;
    j["p"] = p_;
    j["a"] = a_;
    if (explicit_modulus_) j["modulus"] = ground_modulus_;
    json arr = json::array();
    for (const auto& c : coeffs_) {
        json e;
        e["i"] = c.exponent;
        e["kind"] = c.kind == CoeffKind::Teichmuller ? "teichmuller" : "ring";
        e["value"] = c.value;
        if (c.kind == CoeffKind::Ring) e["precision"] = c.precision;
        arr.push_back(e);
    }
    j["coeffs"] = arr;
    return j;
}

TowerSpec parse_tower_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // Translate the byte offset into line/column.
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw SchemaError("line " + std::to_string(line) + ", column " + std::to_string(col), "malformed JSON");
    }
    return TowerSpec::from_json(j);
}

TowerSpec load_tower_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError(path, "cannot open tower spec file");
    std::stringstream buf;
    buf << in.rdbuf();
    if (buf.str().find_first_not_of(" \t\r\n") == std::string::npos) throw SchemaError(path, "tower spec file is empty");
    return parse_tower_text(buf.str());
}

}  // namespace zpt::tower
