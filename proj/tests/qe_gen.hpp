#pragma once

// Random well-formed expressions for the rewriter tests. Bound variables get
// even linear and cross coefficients so every summand is N-periodic.

#include "pfg/expr.hpp"

#include <random>

namespace qegen {

using namespace pfg;

struct Gen {
    std::mt19937_64 rng;
    int max_quantifiers = 3;

    explicit Gen(u64 seed) : rng(seed) {}

    i64 draw(i64 lo, i64 hi) { return lo + static_cast<i64>(rng() % static_cast<u64>(hi - lo + 1)); }

    Poly poly(const std::vector<std::string>& vs) {
        Poly p;
        for (size_t x = 0; x < vs.size(); ++x) {
            Poly v = Poly::var(vs[x]);
            if (draw(0, 2)) p += Poly(Rational(draw(-4, 4))) * v * v;
            if (draw(0, 1)) p += Poly(Rational(2 * draw(-3, 3))) * v;
            for (size_t y = x + 1; y < vs.size(); ++y)
                if (draw(0, 1)) p += Poly(Rational(2 * draw(-3, 3))) * v * Poly::var(vs[y]);
        }
        return p + Poly(Rational(draw(-5, 5)));
    }

    ExprPtr atom(const std::vector<std::string>& scope, Tag tag) {
        std::vector<std::string> vs;
        for (auto& v : scope)
            if (draw(0, 2)) vs.push_back(v);
        switch (draw(0, 4)) {
        case 0: return Expr::rational(Rational(draw(-3, 3), draw(1, 3)));
        case 1: return Expr::mul({Expr::j(), Expr::phase(poly(vs), tag)});
        case 2: return Expr::mul({Expr::e8(), Expr::sqrt(Rational(draw(1, 4))), Expr::phase(poly(vs), tag)});
        default: return Expr::phase(poly(vs), tag);
        }
    }

    ExprPtr expr(int depth, std::vector<std::string> scope, Tag tag, int& quants) {
        i64 c = depth > 3 ? draw(0, 3) : draw(0, 9);
        if (c <= 3) return atom(scope, tag);
        if (c <= 5) return Expr::mul({expr(depth + 1, scope, tag, quants), expr(depth + 1, scope, tag, quants)});
        if (c == 6) return Expr::add({expr(depth + 1, scope, tag, quants), expr(depth + 1, scope, tag, quants)});
        if (quants >= max_quantifiers) return expr(depth + 1, scope, tag, quants);
        ++quants;
        std::string v(1, "xyz"[draw(0, 2)]);
        scope.push_back(v);
        ExprPtr body = expr(depth + 1, scope, tag, quants);
        return draw(0, 3) ? Expr::sum(v, body) : Expr::integral(v, body);
    }

    // Free variables a, b. U-domain expressions are capped at two quantifiers
    // to keep literal evaluation affordable.
    ExprPtr next(Tag& tag) {
        tag = draw(0, 4) == 0 ? Tag::U : Tag::V;
        max_quantifiers = tag == Tag::U ? 2 : 3;
        int q = 0;
        return expr(0, {"a", "b"}, tag, q);
    }
};

} // namespace qegen
