#include "pfg/error.hpp"
#include "pfg/params_io.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

using namespace pfg;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
    std::string path = "pfg_test_" + name;
    std::ofstream(path) << text;
    return path;
}

} // namespace

TEST_CASE("params JSON round trip") {
    Params pr = find_params(ParamSpec{});
    auto j = params_to_json(pr);
    CHECK(j["p"] == pr.p);
    CHECK(j["N_u"] == 82944);
    CHECK(params_from_json(nlohmann::json::parse(j.dump())) == pr);
    auto keys = std::vector<std::string>{};
    for (auto& [k, v] : j.items()) keys.push_back(k);
    CHECK(keys.front() == "m");
}

TEST_CASE("tampered params are rejected") {
    Params pr = find_params(ParamSpec{});
    nlohmann::json j = nlohmann::json::parse(params_to_json(pr).dump());
    j["p"] = pr.p + 2;
    CHECK_THROWS_AS(params_from_json(j), Error);
    j = nlohmann::json::parse(params_to_json(pr).dump());
    j["epsilon"] = 2;
    CHECK_THROWS_AS(params_from_json(j), Error);
}

TEST_CASE("TOML files") {
    Params pr = find_params(ParamSpec{});
    std::string path = write_temp("full.toml", params_to_toml(pr));
    CHECK(load_params_file(path) == pr);
    std::remove(path.c_str());
    std::string spec = write_temp("spec.toml", "# small tower\nm_base = 4\nk_mult = 1\n");
    Params small = load_params_file(spec);
    CHECK(small.p == 12289);
    CHECK(small.N_u == 256);
    std::remove(spec.c_str());
    std::string js = write_temp("spec.json", "{\"m_base\": 6, \"k_mult\": 1}");
    CHECK(load_params_file(js).m == 6);
    std::remove(js.c_str());
    CHECK_THROWS_AS(load_params_file("pfg_test_missing.toml"), Error);
    CHECK_THROWS_AS(toml_to_json("m_base = = 3"), Error);
}

TEST_CASE("spec JSON") {
    ParamSpec s;
    s.m_base = 8;
    s.k_mult = 3;
    ParamSpec t = spec_from_json(nlohmann::json::parse(spec_to_json(s).dump()));
    CHECK(t.m_base == 8);
    CHECK(t.k_mult == 3);
}
