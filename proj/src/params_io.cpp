#include "pfg/params_io.hpp"
#include "pfg/error.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace pfg {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json params_to_json(const Params& pr) {
    ordered_json j;
    j["m"] = pr.m;
    j["l"] = pr.l;
    j["j"] = pr.j;
    j["i"] = pr.i;
    j["N_v"] = pr.N_v;
    j["N_u"] = pr.N_u;
    j["p"] = pr.p;
    j["epsilon"] = pr.epsilon;
    ordered_json xi = ordered_json::object();
    for (const auto& [two_m, v] : pr.xi_table) xi[std::to_string(two_m)] = v;
    j["xi"] = xi;
    return j;
}

namespace {

i64 get_int(const json& j, const char* key) {
    if (!j.contains(key)) fail("bad-params", std::string("missing field ") + key);
    const json& v = j.at(key);
    if (!v.is_number_integer()) fail("bad-params", std::string("field ") + key + " is not an integer");
    return v.get<i64>();
}

u64 get_uint(const json& j, const char* key) {
    i64 v = get_int(j, key);
    if (v < 0) fail("bad-params", std::string("field ") + key + " is negative");
    return static_cast<u64>(v);
}

} // namespace

Params params_from_json(const json& j) {
    Params pr;
    pr.m = get_int(j, "m");
    pr.l = get_int(j, "l");
    pr.j = get_int(j, "j");
    pr.i = get_int(j, "i");
    pr.N_v = get_int(j, "N_v");
    pr.N_u = get_int(j, "N_u");
    pr.p = get_uint(j, "p");
    pr.epsilon = get_uint(j, "epsilon");
    if (pr.p < 3) fail("bad-params", "p too small");
    // p-1 = 8*N_u*c: factor the small pieces instead of p-1 itself
    if (pr.N_u <= 0 || (pr.p - 1) % (8 * static_cast<u64>(pr.N_u)) != 0)
        fail("bad-params", "8*N_u does not divide p-1");
    std::vector<u64> fs = prime_factors(static_cast<u64>(pr.N_u));
    for (u64 q : prime_factors((pr.p - 1) / (8 * static_cast<u64>(pr.N_u)))) fs.push_back(q);
    fs.push_back(2);
    std::sort(fs.begin(), fs.end());
    fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
    pr.factors = fs;
    if (j.contains("xi")) {
        for (const auto& [k, v] : j.at("xi").items()) {
            i64 two_m = 0;
            try {
                two_m = std::stoll(k);
            } catch (const std::exception&) {
                fail("bad-params", "xi key '" + k + "' is not an integer");
            }
            if (!v.is_number_integer() || two_m <= 0) fail("bad-params", "bad xi entry " + k);
            pr.xi_table[two_m] = v.get<u64>();
        }
    }
    pr.validate();
    return pr;
}

ordered_json spec_to_json(const ParamSpec& s) {
    ordered_json j;
    j["m_base"] = s.m_base;
    j["k_mult"] = s.k_mult;
    j["prime_search_limit"] = s.prime_search_limit;
    j["seed"] = s.seed;
    return j;
}

ParamSpec spec_from_json(const json& j) {
    ParamSpec s;
    if (j.contains("m_base")) s.m_base = get_int(j, "m_base");
    if (j.contains("k_mult")) s.k_mult = get_int(j, "k_mult");
    if (j.contains("prime_search_limit")) s.prime_search_limit = get_int(j, "prime_search_limit");
    if (j.contains("seed")) s.seed = get_int(j, "seed");
    s.validate();
    return s;
}

std::string params_to_toml(const Params& pr) {
    std::ostringstream os;
    os << "m = " << pr.m << "\nl = " << pr.l << "\nj = " << pr.j << "\ni = " << pr.i
       << "\nN_v = " << pr.N_v << "\nN_u = " << pr.N_u << "\np = " << pr.p
       << "\nepsilon = " << pr.epsilon << "\n\n[xi]\n";
    for (const auto& [two_m, v] : pr.xi_table) os << '"' << two_m << "\" = " << v << '\n';
    return os.str();
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

json toml_to_json(const std::string& text) {
    json out = json::object();
    json* table = &out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto where = " at line " + std::to_string(lineno);
        if (line.front() == '[') {
            if (line.back() != ']') fail("syntax-error", "unterminated table header" + where);
            std::string name = trim(line.substr(1, line.size() - 2));
            if (name.empty()) fail("syntax-error", "empty table name" + where);
            out[name] = json::object();
            table = &out[name];
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) fail("syntax-error", "expected key = value" + where);
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.size() >= 2 && key.front() == '"' && key.back() == '"') key = key.substr(1, key.size() - 2);
        if (key.empty() || val.empty()) fail("syntax-error", "empty key or value" + where);
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(val, &used);
        } catch (const std::exception&) {
            fail("syntax-error", "value is not a decimal integer" + where);
        }
        if (used != val.size()) fail("syntax-error", "trailing characters after integer" + where);
        (*table)[key] = v;
    }
    return out;
}

Params load_params_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail("io-error", "cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    std::string text = ss.str();
    auto first = text.find_first_not_of(" \t\r\n");
    json doc;
    if (first != std::string::npos && text[first] == '{') {
        try {
            doc = json::parse(text);
        } catch (const json::parse_error& e) {
            fail("syntax-error", e.what());
        }
    } else {
        doc = toml_to_json(text);
    }
    if (doc.contains("p")) return params_from_json(doc);
    return find_params(spec_from_json(doc));
}

} // namespace pfg
