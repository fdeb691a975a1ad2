#include "qe_gen.hpp"

#include "pfg/error.hpp"
#include "pfg/parser.hpp"
#include "pfg/qe.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <numbers>

using namespace pfg;

namespace {

const Params& P() {
    static Params pr = find_params(ParamSpec{});
    return pr;
}

const Params& small() {
    static Params pr = [] {
        ParamSpec s;
        s.m_base = 4;
        s.k_mult = 1;
        return find_params(s);
    }();
    return pr;
}

std::string kind_of(const std::string& text) {
    try {
        parse_expr(text);
    } catch (const Error& e) {
        return e.kind();
    }
    return "ok";
}

} // namespace

TEST_CASE("parse examples") {
    ExprPtr a = parse_expr("e((-r^2 + 2*r*p)/2N @V)");
    CHECK(a->kind == ExprKind::Phase);
    CHECK(a->tag == Tag::V);
    CHECK(free_vars(*a) == std::set<std::string>{"p", "r"});
    ExprPtr b = parse_expr("sum r . e((-r^2)/2N @V) * e((2*r*p)/2N @V)");
    CHECK(b->kind == ExprKind::Sum);
    CHECK(b->kids[0]->kind == ExprKind::Mul);
    CHECK(free_vars(*b) == std::set<std::string>{"p"});
    CHECK(kind_of("e((r^3)/2N @V)") == "degree-error");
    CHECK(kind_of("e((r*r*s)/2N @V)") == "degree-error");
    CHECK(kind_of("e((r*(s+1)*r)/2N @V)") == "degree-error");
}

TEST_CASE("syntax errors carry positions") {
    for (std::string bad : {"", "e(", "sum . j", "3 +", "j j", "e(r/2N @W)", "sqrt(-2)", "1/0", "e(r/3N @V)",
                            "(j", "int 3 . j", "e(j/2N @V)", "#"}) {
        INFO(bad);
        CHECK(kind_of(bad) == "syntax-error");
    }
    try {
        parse_expr("j *\n  e(r/2N @Q)");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("2:") != std::string::npos);
    }
}

TEST_CASE("format round trips every production") {
    for (std::string text : {"3", "-2/7", "j", "e8", "sqrt(5)", "sqrt(3/4)", "e((0)/2N @V)", "e((x^2 - 2*x*y + 4)/2N @U)",
                             "j * e8 * 2", "j + e8 + 1/2", "(j + 1) * e8", "j * (e8 * 2)", "(j * e8) * 2",
                             "sum x . e((x^2)/2N @V)", "int y . e((-y^2 + 2*y*a)/2N @U) + j",
                             "j * (sum x . e((x^2)/2N @V)) * e8", "sum x . sum y . e((x*y)/2N @V)",
                             "(sum x . j) + (int y . e8)"}) {
        ExprPtr e = parse_expr(text);
        std::string f = format(*e);
        ExprPtr back = parse_expr(f);
        INFO(text << " -> " << f);
        CHECK(same_structure(*e, *back));
        CHECK(format(*back) == f);
    }
    qegen::Gen gen(3);
    for (int k = 0; k < 300; ++k) {
        Tag t;
        ExprPtr e = gen.next(t);
        REQUIRE(same_structure(*e, *parse_expr(format(*e))));
    }
}

TEST_CASE("monomial order is deterministic") {
    CHECK(format(*parse_expr("e((y*x + x^2 + 2)/2N @V)")) == format(*parse_expr("e((2 + x*y + x^2)/2N @V)")));
}

TEST_CASE("parser is total on random token streams") {
    const std::vector<std::string> toks{"sum", "int", "x", "y", ".", "(", ")", "+", "*", "-", "/", "2N", "@", "U",
                                        "V", "e(", "e8", "j", "sqrt(", "3", "^", "2", " ", "\n", "N", "@V)"};
    std::mt19937_64 rng(8);
    int ok = 0, err = 0;
    for (int k = 0; k < 5000; ++k) {
        std::string s;
        size_t len = rng() % 25;
        for (size_t t = 0; t < len; ++t) s += toks[rng() % toks.size()];
        try {
            parse_expr(s);
            ++ok;
        } catch (const Error& e) {
            CHECK((e.kind() == "syntax-error" || e.kind() == "degree-error"));
            ++err;
        }
    }
    CHECK(ok + err == 5000);
    std::string deep(100000, '(');
    CHECK(kind_of(deep) == "syntax-error");
}

TEST_CASE("evaluation basics") {
    CHECK(eval_fp(*parse_expr("e(0/2N @V)"), P(), {}).value == 1);
    CHECK(eval_fp(*parse_expr("2 + 1/2"), P(), {}).value == to_residue(Rational(5, 2), P().p));
    CHECK_THROWS_AS(eval_fp(*parse_expr("e((a)/2N @V)"), P(), {}), Error);
    CHECK(eval_fp(*parse_expr("sum x . 1"), P(), {}).value == 144);
    CHECK_THROWS_AS(eval_fp(*parse_expr("sum x . e((x^2)/2N @V) * e((x^2)/2N @U)"), P(), {}), Error);
}

TEST_CASE("elimination of the basic form") {
    NormalForm nf = eliminate(*parse_expr("sum x . e((-x^2)/2N @V)"), P());
    REQUIRE(nf.terms.size() == 1);
    CHECK(nf.terms[0].guards.empty());
    CHECK(nf.terms[0].coeff == GaussCoeff::rational(Rational(12)) * GaussCoeff::e8_pow(-1));
    CHECK(nf.eval_fp(P(), {}) == eval_fp(*parse_expr("sum x . e((-x^2)/2N @V)"), P(), {}));
}

TEST_CASE("absent variable multiplies by N") {
    NormalForm nf = eliminate(*parse_expr("sum x . e((a^2)/2N @V)"), P());
    REQUIRE(nf.terms.size() == 1);
    CHECK(nf.terms[0].coeff == GaussCoeff::rational(Rational(144)));
    CHECK(eliminate(*parse_expr("sum x . e((a^2)/2N @V)"), P(), Mode::Strict).terms.empty());
}

TEST_CASE("nested sums match the two-variable brute force") {
    ExprPtr e = parse_expr("sum x . sum y . e((-x^2 + 2*x*y - 3*y^2 + 2*y*a)/2N @V)");
    NormalForm nf = eliminate(*e, P());
    CHECK(nf.vars() == std::set<std::string>{"a"});
    const i64 N = P().N_v;
    for (i64 a : {-7, 0, 4, 13}) {
        u64 acc = 0;
        for (i64 x = -N / 2; x < N / 2; ++x)
            for (i64 y = -N / 2; y < N / 2; ++y)
                acc = add_mod(acc, char_e(P(), Rational(mod64(-x * x + 2 * x * y - 3 * y * y + 2 * y * a, 2 * N), 2 * N)).value,
                              P().p);
        CHECK(nf.eval_fp(P(), {{"a", a}}).value == acc);
    }
}

TEST_CASE("outer sum stays periodic after an inner sum leaves rational coefficients") {
    ExprPtr e = parse_expr("sum z . int x . j * e((3*a^2 - 6*a*x + 4*x^2 + 4*x*z - 3*z^2 + 6*a + 4*x - 5)/2N @V)");
    NormalForm nf = eliminate(*e, small());
    for (i64 a = -9; a <= 9; ++a) CHECK(nf.eval_fp(small(), {{"a", a}}) == eval_fp(*e, small(), {{"a", a}}));
}

TEST_CASE("guards render in the normal form") {
    NormalForm nf = eliminate(*parse_expr("sum x . e((-4*x^2 + 2*x*a)/2N @V)"), P());
    CHECK(nf.str().find("if 4 | (") != std::string::npos);
    for (i64 a = -9; a <= 9; ++a) {
        Assignment as{{"a", a}};
        CHECK(nf.eval_fp(P(), as) == eval_fp(*parse_expr("sum x . e((-4*x^2 + 2*x*a)/2N @V)"), P(), as));
    }
    CHECK(eliminate(*parse_expr("0"), P()).str() == "0");
}

TEST_CASE("random expressions on the small tower") {
    qegen::Gen gen(77);
    for (int k = 0; k < 120; ++k) {
        Tag t;
        ExprPtr e = gen.next(t);
        NormalForm nf = eliminate(*e, small());
        for (int s = 0; s < 10; ++s) {
            Assignment as{{"a", gen.draw(-300, 300)}, {"b", gen.draw(-300, 300)}};
            INFO(format(*e));
            REQUIRE(eval_fp(*e, small(), as) == nf.eval_fp(small(), as));
        }
    }
}

TEST_CASE("random V expressions on the default tower") {
    qegen::Gen gen(5);
    gen.max_quantifiers = 1;
    int n = 0;
    while (n < 40) {
        int q = 0;
        ExprPtr e = gen.expr(0, {"a", "b"}, Tag::V, q);
        ++n;
        NormalForm nf = eliminate(*e, P());
        for (int s = 0; s < 5; ++s) {
            Assignment as{{"a", gen.draw(-500, 500)}, {"b", gen.draw(-500, 500)}};
            INFO(format(*e));
            REQUIRE(eval_fp(*e, P(), as) == nf.eval_fp(P(), as));
        }
    }
}

TEST_CASE("complex backend approaches the Fresnel value") {
    for (i64 m : {4, 8, 12}) {
        ParamSpec s;
        s.m_base = m;
        s.k_mult = 1;
        Params pr = find_params(s);
        ComplexVal v = eval_complex(*parse_expr("int r . e((-r^2)/2N @V)"), pr, {});
        CHECK(std::abs(v.z() - std::polar(1.0, std::numbers::pi / 4)) < 1e-9);
        NormalForm nf = eliminate(*parse_expr("int r . e((-r^2)/2N @V)"), pr);
        CHECK(std::abs(nf.eval_complex(pr, {}).z() - v.z()) < 1e-9);
    }
}
