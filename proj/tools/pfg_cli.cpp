// Command-line front end. Every subcommand prints one JSON object per line;
// exit status is 0 on success, 2 when a check fails, 1 on error.

#include "pfg/climit.hpp"
#include "pfg/dynamics.hpp"
#include "pfg/error.hpp"
#include "pfg/params_io.hpp"
#include "pfg/parser.hpp"
#include "pfg/qe.hpp"
#include "pfg/wick.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace pfg;
using ojson = nlohmann::ordered_json;

namespace {

struct Globals {
    std::string params_file;
    std::string mode = "extended";
    std::string backend = "fp";
    bool json = true;
    int threads = 1;
    i64 m_base = 12;
    i64 k_mult = 2;
};

Params load(const Globals& g) {
    if (!g.params_file.empty()) return load_params_file(g.params_file);
    ParamSpec s;
    s.m_base = g.m_base;
    s.k_mult = g.k_mult;
    return find_params(s);
}

ojson cjson(const ComplexVal& v) {
    ojson o{{"re", v.re}, {"im", v.im}};
    if (v.overflow) o["overflow"] = true;
    return o;
}

ojson cjson(const cplx& v) { return ojson{{"re", v.real()}, {"im", v.imag()}}; }

void emit(const ojson& o) { std::cout << o.dump() << "\n"; }

// Literal JSON or @path to a file holding it.
nlohmann::json read_json_arg(const std::string& s) {
    if (!s.empty() && s[0] == '@') {
        std::ifstream in(s.substr(1));
        if (!in) fail("io", "cannot read " + s.substr(1));
        std::stringstream ss;
        ss << in.rdbuf();
        return nlohmann::json::parse(ss.str());
    }
    return nlohmann::json::parse(s);
}

bool close(const ComplexVal& x, const ComplexVal& y) {
    double scale = std::max(1.0, std::max(x.abs(), y.abs()));
    return (x - y).abs() < 1e-8 * scale;
}

std::vector<i64> parse_csv(const std::string& s) {
    std::vector<i64> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoll(item));
    return out;
}

Assignment parse_assignment(const std::string& s) {
    Assignment a;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) fail("bad-assignment", "expected name=value, got " + item);
        a[item.substr(0, eq)] = std::stoll(item.substr(eq + 1));
    }
    return a;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-finite Gaussian calculus engine"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--params-file", g.params_file, "parameter file (TOML or JSON)");
    app.add_option("--mode", g.mode, "extended or strict")->check(CLI::IsMember({"extended", "strict"}));
    app.add_option("--backend", g.backend, "fp or complex")->check(CLI::IsMember({"fp", "complex"}));
    app.add_flag("--json", g.json, "JSON output (always on)");
    app.add_option("--threads", g.threads, "worker threads for brute-force sums")->check(CLI::Range(1, 256));
    app.add_option("--m", g.m_base, "tower base m when no params file is given");
    app.add_option("--k", g.k_mult, "tower multiplier k when no params file is given");

    int status = 0;

    auto* c_params = app.add_subcommand("params", "print the parameter tower");
    c_params->callback([&] { emit(params_to_json(load(g))); });

    GaussSumSpec gs;
    std::string gs_domain = "V", gs_which = "both";
    auto* c_gauss = app.add_subcommand("gauss-sum", "Gauss sum by brute force and closed form");
    c_gauss->add_option("--a", gs.a)->required();
    c_gauss->add_option("--b", gs.b);
    c_gauss->add_option("--M", gs.M)->required();
    c_gauss->add_option("--domain", gs_domain)->check(CLI::IsMember({"U", "V"}));
    c_gauss->add_option("--mode", gs_which)->check(CLI::IsMember({"brute", "closed", "both"}));
    c_gauss->callback([&] {
        Params pr = load(g);
        gs.domain = parse_tag(gs_domain);
        check_spec(gs);
        Mode mode = parse_mode(g.mode);
        bool fp = parse_backend(g.backend) == Backend::Fp;
        ojson out;
        out["inputs"] = {{"a", gs.a}, {"b", gs.b}, {"M", gs.M}, {"domain", gs_domain},
                         {"mode", gs_which}, {"sum_mode", g.mode}, {"backend", g.backend}};
        bool agree = true;
        std::optional<FpElem> bfp, cfp;
        std::optional<ComplexVal> bc, cc;
        std::optional<GaussCoeff> closed;
        if (gs_which != "closed") {
            bfp = gauss_brute_fp(pr, gs, g.threads);
            if (!fp) bc = gauss_brute_complex(gs, g.threads);
        }
        if (gs_which != "brute") {
            closed = gauss_closed(gs, mode, &pr);
            cfp = to_fp(pr, *closed);
            cc = to_complex_std(pr, *closed);
        }
        out["value_fp"] = cfp ? cfp->value : bfp->value;
        if (cc)
            out["value_complex"] = cjson(*cc);
        else if (bc)
            out["value_complex"] = cjson(*bc);
        else
            out["value_complex"] = nullptr;
        out["coeff_normal_form"] = closed ? ojson(closed->str()) : ojson(nullptr);
        if (gs_which == "both") {
            out["brute_fp"] = bfp->value;
            if (bc) out["brute_complex"] = cjson(*bc);
            agree = fp ? *bfp == *cfp : close(*bc, *cc);
        }
        out["agree"] = agree;
        emit(out);
        if (!agree) status = 2;
    });

    std::string s1_text, s2_text, kind_text = "E";
    auto* c_inner = app.add_subcommand("inner", "inner product of two Gaussian states");
    c_inner->add_option("--s1", s1_text, "state JSON or @file")->required();
    c_inner->add_option("--s2", s2_text, "state JSON or @file")->required();
    c_inner->add_option("--kind", kind_text)->check(CLI::IsMember({"E", "H"}));
    c_inner->callback([&] {
        Params pr = load(g);
        GaussState s1 = state_from_json(pr, read_json_arg(s1_text));
        GaussState s2 = state_from_json(pr, read_json_arg(s2_text));
        GaussCoeff v = inner(pr, s1, s2, parse_kind(kind_text), parse_mode(g.mode));
        ojson out{{"kind", kind_text}, {"coeff", v.str()}, {"value_fp", to_fp(pr, v).value}};
        out["value_complex"] = cjson(to_complex(pr, v));
        emit(out);
    });

    i64 ev_t = 1;
    std::string ev_state;
    auto* c_evolve = app.add_subcommand("evolve", "apply the free propagator");
    c_evolve->add_option("--t", ev_t)->required();
    c_evolve->add_option("--state", ev_state, "state JSON or @file")->required();
    c_evolve->callback([&] {
        Params pr = load(g);
        GaussState s = state_from_json(pr, read_json_arg(ev_state));
        GaussOperator op = free_propagator(pr, ev_t, s.domain.tag);
        GaussState out = apply(pr, op, s, parse_mode(g.mode));
        emit(ojson{{"t", ev_t}, {"propagator", op.kernel.str()}, {"state", state_to_json(out)}});
    });

    std::string wc_domain = "V";
    auto* c_weyl = app.add_subcommand("weyl-check", "check UV = qVU on every position state");
    c_weyl->add_option("--domain", wc_domain)->check(CLI::IsMember({"U", "V"}));
    c_weyl->callback([&] {
        Params pr = load(g);
        WeylPair w = weyl_pair(pr, parse_tag(wc_domain));
        auto bad = weyl_relation_failures(pr, w);
        i64 N = domain_of(pr, parse_tag(wc_domain)).N;
        emit(ojson{{"domain", wc_domain}, {"N", N}, {"checked", N}, {"failures", bad}, {"holds", bad.empty()}});
        if (!bad.empty()) status = 2;
    });

    i64 sm_A = -1, sm_B = 0, sm_C = -1;
    auto* c_sm = app.add_subcommand("sm-compose", "transfer matrix and its square");
    c_sm->add_option("--A", sm_A);
    c_sm->add_option("--B", sm_B);
    c_sm->add_option("--C", sm_C);
    c_sm->callback([&] {
        Params pr = load(g);
        GaussOperator t = sm_transfer(pr, QuadForm{Rational(sm_A), Rational(sm_B), Rational(sm_C)});
        GaussOperator t2 = compose(pr, t, t, parse_mode(g.mode));
        emit(ojson{{"form", {sm_A, sm_B, sm_C}}, {"transfer", t.kernel.str()}, {"composed", t2.kernel.str()}});
    });

    int wk_pairs = 100;
    std::string wk_kind = "E";
    u64 wk_seed = 1;
    auto* c_wick = app.add_subcommand("wick-check", "inner-product correspondence on random pairs");
    c_wick->add_option("--pairs", wk_pairs)->check(CLI::Range(1, 100000));
    c_wick->add_option("--kind", wk_kind)->check(CLI::IsMember({"E", "H"}));
    c_wick->add_option("--seed", wk_seed);
    c_wick->callback([&] {
        Params pr = load(g);
        std::mt19937_64 rng(wk_seed);
        InnerKind kind = parse_kind(wk_kind);
        ojson checks = ojson::array();
        int failures = 0;
        for (int n = 0; n < wk_pairs; ++n) {
            auto [s1, s2] = random_u_pair(pr, rng);
            auto rep = check_inner_correspondence(pr, s1, s2, kind, parse_mode(g.mode));
            if (!rep.holds) ++failures;
            checks.push_back({{"s1", state_to_json(s1)}, {"s2", state_to_json(s2)},
                              {"mapped", rep.mapped_u.str()}, {"wicked", rep.v_inner.str()},
                              {"holds", rep.holds}});
        }
        emit(ojson{{"kind", wk_kind}, {"pairs", wk_pairs}, {"failures", failures},
                   {"holds", failures == 0}, {"checks", checks}});
        if (failures) status = 2;
    });

    i64 lim_A = 1, lim_k = 2;
    double lim_B = 0.0;
    std::string lim_kind = "E", lim_seq = "144,576,2304";
    auto* c_limit = app.add_subcommand("limit", "finite inner products against the continuum value");
    c_limit->add_option("--A", lim_A);
    c_limit->add_option("--B", lim_B);
    c_limit->add_option("--kind", lim_kind)->check(CLI::IsMember({"E", "H"}));
    c_limit->add_option("--N-seq", lim_seq);
    c_limit->add_option("--k-mult", lim_k);
    c_limit->callback([&] {
        LimitReport r = convergence_check(lim_A, lim_B, parse_kind(lim_kind), parse_csv(lim_seq), lim_k,
                                          parse_mode(g.mode));
        ojson fin = ojson::array();
        for (auto& v : r.finite_values) fin.push_back(cjson(v));
        emit(ojson{{"A", lim_A}, {"B", lim_B}, {"kind", lim_kind}, {"N_sequence", r.N_sequence},
                   {"finite_values", fin}, {"continuum_value", cjson(r.continuum_value)},
                   {"errors", r.errors}, {"tail_monotone", r.tail_monotone}, {"notes", r.notes}});
    });

    double ho_omega = 1.0, ho_t = 1.0, ho_x = 0.0, ho_x0 = 0.0;
    auto* c_ho = app.add_subcommand("ho", "harmonic-oscillator propagator");
    c_ho->add_option("--omega", ho_omega);
    c_ho->add_option("--t", ho_t);
    c_ho->add_option("--x", ho_x);
    c_ho->add_option("--x0", ho_x0);
    c_ho->callback([&] {
        emit(ojson{{"omega", ho_omega}, {"t", ho_t}, {"x", ho_x}, {"x0", ho_x0},
                   {"value", cjson(ho_propagator(ho_omega, ho_t, ho_x, ho_x0))},
                   {"free", cjson(free_kernel(ho_t, ho_x, ho_x0))}});
    });

    std::string qe_expr, qe_assign;
    auto* c_qe = app.add_subcommand("qe", "eliminate the quantifiers of an expression");
    c_qe->add_option("--expr", qe_expr, "expression text or @file")->required();
    c_qe->add_option("--assign", qe_assign, "comma-separated name=value list to evaluate at");
    c_qe->callback([&] {
        Params pr = load(g);
        std::string text = qe_expr;
        if (!text.empty() && text[0] == '@') {
            std::ifstream in(text.substr(1));
            if (!in) fail("io", "cannot read " + text.substr(1));
            std::stringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        }
        ExprPtr e = parse_expr(text);
        NormalForm nf = eliminate(*e, pr, parse_mode(g.mode));
        auto fv = free_vars(*e);
        ojson out{{"input", format(*e)},
                  {"free_vars", std::vector<std::string>(fv.begin(), fv.end())},
                  {"quantifiers", count_quantifiers(*e)},
                  {"normal_form", nf.str()},
                  {"terms", nf.terms.size()}};
        if (!qe_assign.empty()) {
            Assignment a = parse_assignment(qe_assign);
            bool agree;
            if (parse_backend(g.backend) == Backend::Fp) {
                FpElem x = eval_fp(*e, pr, a), y = nf.eval_fp(pr, a);
                out["eval"] = {{"expr", x.value}, {"normal_form", y.value}};
                agree = x == y;
            } else {
                ComplexVal x = eval_complex(*e, pr, a), y = nf.eval_complex(pr, a);
                out["eval"] = {{"expr", cjson(x)}, {"normal_form", cjson(y)}};
                agree = close(x, y);
            }
            out["agree"] = agree;
            if (!agree) status = 2;
        }
        emit(out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        emit(ojson{{"error", "usage"}, {"message", e.what()}});
        return 1;
    } catch (const Error& e) {
        emit(ojson{{"error", e.kind()}, {"message", e.what()}});
        return 1;
    } catch (const std::exception& e) {
        emit(ojson{{"error", "internal"}, {"message", e.what()}});
        return 1;
    }
    return status;
}
