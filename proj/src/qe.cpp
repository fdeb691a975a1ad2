#include "pfg/qe.hpp"

#include "pfg/error.hpp"

#include <map>

namespace pfg {

namespace {

constexpr size_t max_terms = 1 << 14;

i64 domain_N(const Params& pr, Tag t) { return t == Tag::U ? pr.N_u : pr.N_v; }

std::vector<GTerm> merge(std::vector<GTerm> in) {
    std::map<std::string, std::pair<GTerm, Rational>> acc;
    std::vector<std::string> order;
    for (auto& t : in) {
        t.normalize();
        if (t.is_zero()) continue;
        Rational c = t.coeff.c();
        GTerm unit = t.scaled(GaussCoeff::rational(Rational(1) / c));
        std::string key = unit.str();
        auto it = acc.find(key);
        if (it == acc.end()) {
            acc.emplace(key, std::make_pair(unit, c));
            order.push_back(key);
        } else {
            it->second.second = it->second.second + c;
        }
    }
    std::vector<GTerm> out;
    for (auto& k : order) {
        auto& [unit, c] = acc.at(k);
        if (c.is_zero()) continue;
        out.push_back(unit.scaled(GaussCoeff::rational(c)));
    }
    return out;
}

// Every phase atom under e that sees the bound y is n-periodic in it. Then so
// is every term of the body, including after inner sums are eliminated.
bool atoms_periodic(const Expr& e, const std::string& y, i64 n, const Params& pr) {
    if (e.kind == ExprKind::Phase) return periodic_in(e.poly, y, n, 2 * domain_N(pr, e.tag));
    if ((e.kind == ExprKind::Sum || e.kind == ExprKind::Int) && e.var == y) return true;
    for (auto& k : e.kids)
        if (!atoms_periodic(*k, y, n, pr)) return false;
    return true;
}

std::vector<GTerm> to_nf(const Expr& e, const Params& pr, Mode mode) {
    switch (e.kind) {
    case ExprKind::Rational: return merge({GTerm(GaussCoeff::rational(e.value))});
    case ExprKind::J: return {GTerm(GaussCoeff::j_pow(1))};
    case ExprKind::E8: return {GTerm(GaussCoeff::e8_pow(1))};
    case ExprKind::Sqrt: return merge({GTerm(GaussCoeff::sqrt_of(e.value))});
    case ExprKind::Phase: return merge({GTerm::exp(e.poly, e.tag, domain_N(pr, e.tag))});
    case ExprKind::Add: {
        std::vector<GTerm> out;
        for (auto& k : e.kids) {
            auto part = to_nf(*k, pr, mode);
            out.insert(out.end(), part.begin(), part.end());
        }
        return merge(std::move(out));
    }
    case ExprKind::Mul: {
        std::vector<GTerm> acc{GTerm(GaussCoeff::rational(Rational(1)))};
        for (auto& k : e.kids) {
            auto part = to_nf(*k, pr, mode);
            if (acc.size() * part.size() > max_terms)
                fail("too-large", "normal form exceeds " + std::to_string(max_terms) + " terms");
            std::vector<GTerm> next;
            for (auto& x : acc)
                for (auto& y : part) next.push_back(x * y);
            acc = merge(std::move(next));
        }
        return acc;
    }
    case ExprKind::Sum:
    case ExprKind::Int: {
        i64 N = domain_N(pr, bound_domain(e));
        const bool periodic = atoms_periodic(*e.kids[0], e.var, N, pr);
        auto body = to_nf(*e.kids[0], pr, mode);
        std::vector<GTerm> out;
        for (auto& t : body) {
            GTerm s = sum_out(t, e.var, N, mode, pr, periodic);
            if (e.kind == ExprKind::Int) s = s.scaled(GaussCoeff::rational(Rational(1, pr.m)));
            out.push_back(s);
        }
        return merge(std::move(out));
    }
    }
    return {};
}

} // namespace

std::set<std::string> NormalForm::vars() const {
    std::set<std::string> out;
    for (auto& t : terms) {
        auto v = t.vars();
        out.insert(v.begin(), v.end());
    }
    return out;
}

FpElem NormalForm::eval_fp(const Params& pr, const Assignment& a) const {
    u64 acc = 0;
    for (auto& t : terms) acc = add_mod(acc, t.eval_fp(pr, a).value, pr.p);
    return {acc};
}

ComplexVal NormalForm::eval_complex(const Params& pr, const Assignment& a) const {
    ComplexVal acc;
    for (auto& t : terms) acc = acc + t.eval_complex(pr, a);
    return acc;
}

std::string NormalForm::str() const {
    if (terms.empty()) return "0";
    std::string s;
    for (size_t n = 0; n < terms.size(); ++n) {
        if (n) s += " + ";
        s += terms[n].str();
    }
    return s;
}

NormalForm eliminate(const Expr& e, const Params& pr, Mode mode) {
    return NormalForm{to_nf(e, pr, mode)};
}

} // namespace pfg
