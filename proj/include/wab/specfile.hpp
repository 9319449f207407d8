#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "wab/catalog.hpp"

namespace wab {

/// One record of a module-spec file: the family tag plus parameter bindings.
/// Values are exact rationals "p/q", the token "sym" (symbolic), or "inf"
/// (gamma only). Serialization is canonical: fixed key order, only the keys
/// the family uses, so parse(serialize(r)) == r byte for byte.
struct ModuleRecord {
    Family family = Family::A;
    // unset entries mean symbolic
    std::map<std::string, std::string> values;  // keys from: a b lambda mu gamma c p layers

    std::string get(const std::string& key, const std::string& fallback = "sym") const {
        auto it = values.find(key);
        return it == values.end() ? fallback : it->second;
    }
};

inline std::vector<std::string> record_keys(Family f) {
    std::vector<std::string> keys{"a", "b"};
    if (family_uses_lambda_mu(f)) {
        keys.push_back("lambda");
        keys.push_back("mu");
    }
    if (family_uses_gamma(f)) keys.push_back("gamma");
    if (f == Family::AbarInteger) keys.push_back("c");
    if (f == Family::AbarPeriodic) keys.push_back("p");
    keys.push_back("layers");
    return keys;
}

inline std::string serialize_record(const ModuleRecord& r) {
    std::string line = family_name(r.family);
    for (auto& key : record_keys(r.family)) {
        auto it = r.values.find(key);
        if (it == r.values.end()) continue;
        line += " " + key + "=" + it->second;
    }
    return line;
}

inline ModuleRecord parse_record(const std::string& line) {
    std::istringstream in(line);
    std::string tag;
    in >> tag;
    auto fam = family_from_name(tag);
    if (!fam) throw BadParams("unknown family tag '" + tag + "'");
    ModuleRecord r;
    r.family = *fam;
    auto keys = record_keys(*fam);
    std::string tok;
    while (in >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw BadParams("malformed binding '" + tok + "'");
        std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw BadParams("family " + tag + " does not take '" + key + "'");
        if (val.empty()) throw BadParams("empty value for '" + key + "'");
        r.values[key] = val;
    }
    return r;
}

/// '#' starts a comment; blank lines are skipped.
inline std::vector<ModuleRecord> parse_spec_file(const std::string& text) {
    std::vector<ModuleRecord> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        bool blank = true;
        for (char ch : line) blank = blank && std::isspace(static_cast<unsigned char>(ch));
        if (blank) continue;
        out.push_back(parse_record(line));
    }
    return out;
}

inline std::string serialize_spec_file(const std::vector<ModuleRecord>& records) {
    std::string out;
    for (auto& r : records) out += serialize_record(r) + "\n";
    return out;
}

namespace detail {

inline Scalar value_scalar(const std::string& val, const std::string& symbol) {
    if (val == "sym") return Scalar::variable(symbol);
    return Scalar(parse_rational(val));
}

inline LayerWindow parse_layers(const std::string& val) {
    auto dots = val.find("..");
    if (dots == std::string::npos) throw BadParams("layers must look like lo..hi");
    std::string lo = val.substr(0, dots), hi = val.substr(dots + 2);
    LayerWindow w;
    w.lo_inf = lo == "-inf";
    w.hi_inf = hi == "inf";
    try {
        if (!w.lo_inf) w.lo = std::stol(lo);
        if (!w.hi_inf) w.hi = std::stol(hi);
    } catch (const std::exception&) {
        throw BadParams("malformed layers '" + val + "'");
    }
    if (!w.lo_inf && !w.hi_inf && w.lo > w.hi) throw BadParams("layers lo > hi");
    return w;
}

}  // namespace detail

/// Builds the validated ModuleSpec for a record; `overrides` is applied on
/// top of the record (the CLI --set mechanism).
inline ModuleSpec record_to_spec(const ModuleRecord& rec,
                                 const std::map<std::string, std::string>& overrides = {}) {
    auto get = [&](const std::string& key, const char* fallback) -> std::string {
        auto ov = overrides.find(key);
        if (ov != overrides.end()) return ov->second;
        return rec.get(key, fallback);
    };
    Scalar a = detail::value_scalar(get("a", "sym"), "a");
    Scalar b = detail::value_scalar(get("b", "sym"), "b");
    Scalar lambda = detail::value_scalar(get("lambda", "sym"), "lam");
    Scalar mu = detail::value_scalar(get("mu", "sym"), "mu");
    Scalar c = detail::value_scalar(get("c", "sym"), "c");
    std::string gs = get("gamma", "sym");
    ExtendedScalar gamma = gs == "inf" ? ExtendedScalar::infinity()
                                       : ExtendedScalar::finite(detail::value_scalar(gs, "gam"));
    int p = 0;
    std::string ps = get("p", "");
    if (!ps.empty()) {
        try {
            p = std::stoi(ps);
        } catch (const std::exception&) {
            throw BadParams("malformed p '" + ps + "'");
        }
    }
    std::optional<LayerWindow> window;
    std::string ls = get("layers", "");
    if (!ls.empty()) window = detail::parse_layers(ls);
    return build_module(rec.family, AlgebraParams::with(a, b), lambda, mu, gamma, c, p, window);
}

inline ModuleRecord spec_to_record(const ModuleSpec& spec) {
    ModuleRecord r;
    r.family = spec.family;
    auto put_scalar = [&](const std::string& key, const Scalar& s) {
        if (auto v = s.as_rational()) r.values[key] = rational_text(*v);
        // symbolic values are the default and stay implicit
    };
    put_scalar("a", spec.algebra.a);
    put_scalar("b", spec.algebra.b);
    if (family_uses_lambda_mu(spec.family)) {
        put_scalar("lambda", spec.lambda);
        put_scalar("mu", spec.mu);
    }
    if (family_uses_gamma(spec.family)) {
        if (spec.gamma.is_infinite())
            r.values["gamma"] = "inf";
        else
            put_scalar("gamma", spec.gamma.value());
    }
    if (spec.family == Family::AbarInteger) put_scalar("c", spec.c);
    if (spec.family == Family::AbarPeriodic) r.values["p"] = std::to_string(spec.p);
    if (spec.layers != family_natural_window(spec.family, spec.p))
        r.values["layers"] = spec.layers.text();
    return r;
}

/// The full catalog with symbolic parameters: one record per family tag.
/// The rational-a families ship at a = 1/2 (p = 2) and a = 0.
inline std::vector<ModuleRecord> standard_catalog() {
    std::vector<ModuleRecord> out;
    for (auto& [fam, name] : family_names()) {
        ModuleRecord r;
        r.family = fam;
        if (family_is_tilde(fam)) r.values["b"] = "1";
        if (family_is_hat(fam)) r.values["b"] = "0";
        if (fam == Family::AbarPeriodic) {
            r.values["a"] = "1/2";
            r.values["b"] = "1";
            r.values["p"] = "2";
        }
        if (fam == Family::AbarInteger) {
            r.values["a"] = "0";
            r.values["b"] = "1";
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace wab
