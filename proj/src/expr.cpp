#include "pfg/expr.hpp"

#include "pfg/error.hpp"

#include <functional>
#include <map>

namespace pfg {

namespace {

ExprPtr make(ExprKind k) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    return e;
}

// Phase atoms of `e` in which `v` occurs free.
void tags_mentioning(const Expr& e, const std::string& v, std::set<Tag>& out) {
    switch (e.kind) {
    case ExprKind::Phase:
        if (e.poly.has_var(v)) out.insert(e.tag);
        return;
    case ExprKind::Sum:
    case ExprKind::Int:
        if (e.var == v) return; // shadowed
        tags_mentioning(*e.kids[0], v, out);
        return;
    default:
        for (auto& k : e.kids) tags_mentioning(*k, v, out);
    }
}

void all_tags(const Expr& e, std::set<Tag>& out) {
    if (e.kind == ExprKind::Phase) out.insert(e.tag);
    for (auto& k : e.kids) all_tags(*k, out);
}

void collect_free(const Expr& e, std::set<std::string>& bound, std::set<std::string>& out) {
    switch (e.kind) {
    case ExprKind::Phase:
        for (auto& v : e.poly.vars())
            if (!bound.count(v)) out.insert(v);
        return;
    case ExprKind::Sum:
    case ExprKind::Int: {
        bool fresh = bound.insert(e.var).second;
        collect_free(*e.kids[0], bound, out);
        if (fresh) bound.erase(e.var);
        return;
    }
    default:
        for (auto& k : e.kids) collect_free(*k, bound, out);
    }
}

bool is_quantifier(const Expr& e) { return e.kind == ExprKind::Sum || e.kind == ExprKind::Int; }

std::string fmt(const Expr& e);

std::string fmt_child(const Expr& parent, const Expr& c) {
    bool paren = is_quantifier(c) || c.kind == ExprKind::Add ||
                 (c.kind == ExprKind::Mul && parent.kind == ExprKind::Mul);
    return paren ? "(" + fmt(c) + ")" : fmt(c);
}

std::string fmt(const Expr& e) {
    switch (e.kind) {
    case ExprKind::Rational: return e.value.str();
    case ExprKind::J: return "j";
    case ExprKind::E8: return "e8";
    case ExprKind::Sqrt: return "sqrt(" + e.value.str() + ")";
    case ExprKind::Phase:
        return "e((" + e.poly.str() + ")/2N @" + tag_name(e.tag) + ")";
    case ExprKind::Mul:
    case ExprKind::Add: {
        std::string sep = e.kind == ExprKind::Mul ? " * " : " + ";
        std::string s;
        for (size_t n = 0; n < e.kids.size(); ++n) {
            if (n) s += sep;
            s += fmt_child(e, *e.kids[n]);
        }
        return s;
    }
    case ExprKind::Sum:
    case ExprKind::Int:
        return std::string(e.kind == ExprKind::Sum ? "sum " : "int ") + e.var + " . " + fmt(*e.kids[0]);
    }
    return "";
}

i64 domain_N(const Params& pr, Tag t) { return t == Tag::U ? pr.N_u : pr.N_v; }

// Expression compiled against variable slots so that literal summation does
// not pay for map lookups at every point.
struct Compiled {
    ExprKind kind;
    Rational value;
    std::vector<std::pair<i64, std::vector<int>>> mono; // integer coefficient, slots
    i64 two_n = 0;
    Tag tag = Tag::V;
    int slot = -1;
    i64 N = 0;
    std::vector<Compiled> kids;
};

struct Compiler {
    const Params& pr;
    std::map<std::string, std::vector<int>> scope;
    int nslots = 0;

    int lookup(const std::string& v) {
        auto it = scope.find(v);
        if (it == scope.end() || it->second.empty()) fail("unbound-variable", "no value for " + v);
        return it->second.back();
    }

    Compiled run(const Expr& e) {
        Compiled c;
        c.kind = e.kind;
        c.value = e.value;
        c.tag = e.tag;
        switch (e.kind) {
        case ExprKind::Phase: {
            if (!e.poly.is_integral())
                fail("bad-phase", "phase polynomial must have integer coefficients");
            c.two_n = 2 * domain_N(pr, e.tag);
            for (auto& [m, q] : e.poly.terms()) {
                std::vector<int> slots;
                for (auto& v : m) slots.push_back(lookup(v));
                c.mono.push_back({mod64(q.num(), c.two_n), slots});
            }
            break;
        }
        case ExprKind::Sum:
        case ExprKind::Int: {
            c.N = domain_N(pr, bound_domain(e));
            c.slot = nslots++;
            scope[e.var].push_back(c.slot);
            c.kids.push_back(run(*e.kids[0]));
            scope[e.var].pop_back();
            break;
        }
        default:
            for (auto& k : e.kids) c.kids.push_back(run(*k));
        }
        return c;
    }
};

template <class V, class Ops>
V run_eval(const Compiled& c, std::vector<i64>& env, const Ops& ops) {
    switch (c.kind) {
    case ExprKind::Rational: return ops.rational(c.value);
    case ExprKind::J: return ops.j();
    case ExprKind::E8: return ops.e8();
    case ExprKind::Sqrt: return ops.sqrt(c.value);
    case ExprKind::Phase: {
        i128 acc = 0;
        for (auto& [k, slots] : c.mono) {
            i128 t = k;
            for (int s : slots) t = (t * mod64(env[s], c.two_n)) % c.two_n;
            acc += t;
        }
        return ops.phase(c.tag, c.two_n, static_cast<i64>(acc % c.two_n));
    }
    case ExprKind::Mul: {
        V r = ops.one();
        for (auto& k : c.kids) r = ops.mul(r, run_eval<V>(k, env, ops));
        return r;
    }
    case ExprKind::Add: {
        V r = ops.zero();
        for (auto& k : c.kids) r = ops.add(r, run_eval<V>(k, env, ops));
        return r;
    }
    case ExprKind::Sum:
    case ExprKind::Int: {
        V r = ops.zero();
        for (i64 x = -c.N / 2; x < c.N - c.N / 2; ++x) {
            env[c.slot] = x;
            r = ops.add(r, run_eval<V>(c.kids[0], env, ops));
        }
        if (c.kind == ExprKind::Int) r = ops.mul(r, ops.rational(Rational(1, ops.pr.m)));
        return r;
    }
    }
    return ops.zero();
}

template <class V, class Ops>
V evaluate(const Expr& e, const Params& pr, const Assignment& a, const Ops& ops) {
    Compiler comp{pr, {}, 0};
    std::vector<i64> env;
    for (auto& [v, x] : a) {
        comp.scope[v].push_back(comp.nslots++);
        env.push_back(x);
    }
    Compiled c = comp.run(e);
    env.resize(comp.nslots, 0);
    return run_eval<V>(c, env, ops);
}

struct FpOps {
    const Params& pr;
    mutable std::map<std::pair<Tag, i64>, std::vector<FpElem>> tables;
    FpElem one() const { return {1}; }
    FpElem zero() const { return {0}; }
    FpElem mul(FpElem x, FpElem y) const { return {mul_mod(x.value, y.value, pr.p)}; }
    FpElem add(FpElem x, FpElem y) const { return {add_mod(x.value, y.value, pr.p)}; }
    FpElem rational(const Rational& r) const { return {to_residue(r, pr.p)}; }
    FpElem j() const { return to_fp(pr, GaussCoeff::j_pow(1)); }
    FpElem e8() const { return to_fp(pr, GaussCoeff::e8_pow(1)); }
    FpElem sqrt(const Rational& r) const { return sqrt_rational(pr, r); }
    FpElem phase(Tag t, i64 two_n, i64 k) const {
        auto& tab = tables[{t, two_n}];
        if (tab.empty()) {
            tab.resize(two_n);
            for (i64 n = 0; n < two_n; ++n) tab[n] = char_e(pr, Rational(n, two_n));
        }
        return tab[k];
    }
};

struct ComplexOps {
    const Params& pr;
    mutable std::map<std::pair<Tag, i64>, std::vector<ComplexVal>> tables;
    ComplexVal one() const { return {1.0, 0.0}; }
    ComplexVal zero() const { return {0.0, 0.0}; }
    ComplexVal mul(const ComplexVal& x, const ComplexVal& y) const { return x * y; }
    ComplexVal add(const ComplexVal& x, const ComplexVal& y) const { return x + y; }
    ComplexVal rational(const Rational& r) const { return {r.to_double(), 0.0}; }
    ComplexVal j() const { return to_complex(pr, GaussCoeff::j_pow(1)); }
    ComplexVal e8() const { return to_complex(pr, GaussCoeff::e8_pow(1)); }
    ComplexVal sqrt(const Rational& r) const { return to_complex(pr, GaussCoeff::sqrt_of(r)); }
    ComplexVal phase(Tag t, i64 two_n, i64 k) const {
        auto& tab = tables[{t, two_n}];
        if (tab.empty()) {
            tab.resize(two_n);
            for (i64 n = 0; n < two_n; ++n)
                tab[n] = to_complex(pr, GaussCoeff::phase(Rational(n, two_n), t));
        }
        return tab[k];
    }
};

} // namespace

ExprPtr Expr::rational(const Rational& r) {
    auto e = make(ExprKind::Rational);
    std::const_pointer_cast<Expr>(e)->value = r;
    return e;
}
ExprPtr Expr::j() { return make(ExprKind::J); }
ExprPtr Expr::e8() { return make(ExprKind::E8); }
ExprPtr Expr::sqrt(const Rational& r) {
    if (r.sign() < 0) fail("bad-sqrt", "sqrt of a negative rational");
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Sqrt;
    e->value = r;
    return e;
}
ExprPtr Expr::phase(const Poly& p, Tag t) {
    if (t == Tag::None) fail("bad-phase", "phase needs a U or V domain");
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Phase;
    e->poly = p;
    e->tag = t;
    return e;
}
ExprPtr Expr::mul(std::vector<ExprPtr> kids) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Mul;
    e->kids = std::move(kids);
    return e;
}
ExprPtr Expr::add(std::vector<ExprPtr> kids) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Add;
    e->kids = std::move(kids);
    return e;
}
ExprPtr Expr::sum(const std::string& v, ExprPtr body) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Sum;
    e->var = v;
    e->kids = {std::move(body)};
    return e;
}
ExprPtr Expr::integral(const std::string& v, ExprPtr body) {
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::Int;
    e->var = v;
    e->kids = {std::move(body)};
    return e;
}

bool same_structure(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.kids.size() != b.kids.size()) return false;
    switch (a.kind) {
    case ExprKind::Rational:
    case ExprKind::Sqrt:
        if (!(a.value == b.value)) return false;
        break;
    case ExprKind::Phase:
        if (!(a.poly == b.poly) || a.tag != b.tag) return false;
        break;
    case ExprKind::Sum:
    case ExprKind::Int:
        if (a.var != b.var) return false;
        break;
    default: break;
    }
    for (size_t n = 0; n < a.kids.size(); ++n)
        if (!same_structure(*a.kids[n], *b.kids[n])) return false;
    return true;
}

std::set<std::string> free_vars(const Expr& e) {
    std::set<std::string> bound, out;
    collect_free(e, bound, out);
    return out;
}

int count_quantifiers(const Expr& e) {
    int n = is_quantifier(e) ? 1 : 0;
    for (auto& k : e.kids) n += count_quantifiers(*k);
    return n;
}

std::string format(const Expr& e) { return fmt(e); }

Tag bound_domain(const Expr& q) {
    if (!is_quantifier(q)) fail("bad-expr", "not a quantifier");
    std::set<Tag> tags;
    tags_mentioning(*q.kids[0], q.var, tags);
    if (tags.empty()) all_tags(*q.kids[0], tags);
    if (tags.size() > 1)
        fail("domain-mismatch", "variable " + q.var + " occurs in both U and V phases");
    return tags.empty() ? Tag::V : *tags.begin();
}

FpElem eval_fp(const Expr& e, const Params& pr, const Assignment& a) {
    FpOps ops{pr, {}};
    return evaluate<FpElem>(e, pr, a, ops);
}

ComplexVal eval_complex(const Expr& e, const Params& pr, const Assignment& a) {
    ComplexOps ops{pr, {}};
    return evaluate<ComplexVal>(e, pr, a, ops);
}

} // namespace pfg
