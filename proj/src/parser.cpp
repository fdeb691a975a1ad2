#include "pfg/parser.hpp"

#include "pfg/error.hpp"

#include <cctype>
#include <charconv>

namespace pfg {

namespace {

enum class Tok { Int, Ident, Sym, End };

struct Token {
    Tok kind = Tok::End;
    std::string text;
    i64 value = 0;
    int line = 1, col = 1;
};

constexpr int max_depth = 400;

bool is_keyword(const std::string& s) {
    return s == "sum" || s == "int" || s == "j" || s == "e8" || s == "sqrt" || s == "e";
}

std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t n = 0;
    auto err = [&](const std::string& msg) {
        fail("syntax-error", std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
    };
    while (n < src.size()) {
        unsigned char ch = static_cast<unsigned char>(src[n]);
        if (ch == '\n') {
            ++line;
            col = 1;
            ++n;
            continue;
        }
        if (std::isspace(ch)) {
            ++col;
            ++n;
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        size_t start = n;
        if (std::isdigit(ch)) {
            while (n < src.size() && std::isdigit(static_cast<unsigned char>(src[n]))) ++n;
            t.kind = Tok::Int;
            t.text = src.substr(start, n - start);
            auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.value);
            if (ec != std::errc() || p != t.text.data() + t.text.size()) err("integer literal out of range");
        } else if (std::isalpha(ch) || ch == '_') {
            while (n < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[n])) || src[n] == '_'))
                ++n;
            t.kind = Tok::Ident;
            t.text = src.substr(start, n - start);
        } else if (std::string("()+-*/^.@").find(static_cast<char>(ch)) != std::string::npos) {
            t.kind = Tok::Sym;
            t.text = std::string(1, static_cast<char>(ch));
            ++n;
        } else {
            err(std::string("unexpected character '") + static_cast<char>(ch) + "'");
        }
        col += static_cast<int>(n - start);
        out.push_back(t);
    }
    Token end;
    end.line = line;
    end.col = col;
    out.push_back(end);
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    ExprPtr top() {
        ExprPtr e = expr();
        if (peek().kind != Tok::End) error("unexpected '" + peek().text + "'");
        return e;
    }

private:
    std::vector<Token> toks_;
    size_t pos_ = 0;
    int depth_ = 0;

    const Token& peek() const { return toks_[pos_]; }
    Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool sym(const char* s) const { return peek().kind == Tok::Sym && peek().text == s; }

    [[noreturn]] void error(const std::string& msg) const { error_at(peek(), msg); }
    [[noreturn]] static void error_at(const Token& t, const std::string& msg) {
        fail("syntax-error", std::to_string(t.line) + ":" + std::to_string(t.col) + ": " + msg);
    }

    void expect(const char* s) {
        if (!sym(s)) error(std::string("expected '") + s + "'");
        next();
    }

    struct Guard {
        Parser& p;
        explicit Guard(Parser& p_) : p(p_) {
            if (++p.depth_ > max_depth) p.error("nesting too deep");
        }
        ~Guard() { --p.depth_; }
    };

    static ExprPtr at(ExprPtr e, const Token& t) {
        auto m = std::const_pointer_cast<Expr>(e);
        m->line = t.line;
        m->col = t.col;
        return e;
    }

    ExprPtr expr() {
        Guard g(*this);
        Token first = peek();
        std::vector<ExprPtr> kids{prod()};
        while (sym("+")) {
            next();
            kids.push_back(prod());
        }
        return kids.size() == 1 ? kids[0] : at(Expr::add(std::move(kids)), first);
    }

    ExprPtr prod() {
        Token first = peek();
        std::vector<ExprPtr> kids{term()};
        while (sym("*")) {
            next();
            kids.push_back(term());
        }
        return kids.size() == 1 ? kids[0] : at(Expr::mul(std::move(kids)), first);
    }

    Rational rational_literal() {
        bool neg = false;
        if (sym("-")) {
            next();
            neg = true;
        }
        if (peek().kind != Tok::Int) error("expected a number");
        i64 num = next().value;
        i64 den = 1;
        if (sym("/") && toks_[pos_ + 1].kind == Tok::Int) {
            next();
            den = next().value;
            if (den == 0) error_at(toks_[pos_ - 1], "zero denominator");
        }
        return Rational(neg ? -num : num, den);
    }

    ExprPtr term() {
        Guard g(*this);
        Token t = peek();
        if (t.kind == Tok::Int || (t.kind == Tok::Sym && t.text == "-"))
            return at(Expr::rational(rational_literal()), t);
        if (t.kind == Tok::Sym && t.text == "(") {
            next();
            ExprPtr e = expr();
            expect(")");
            return e;
        }
        if (t.kind != Tok::Ident) error(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
        next();
        if (t.text == "j") return at(Expr::j(), t);
        if (t.text == "e8") return at(Expr::e8(), t);
        if (t.text == "sqrt") {
            expect("(");
            Token at_tok = peek();
            Rational r = rational_literal();
            if (r.sign() < 0) error_at(at_tok, "sqrt of a negative number");
            expect(")");
            return at(Expr::sqrt(r), t);
        }
        if (t.text == "e") {
            expect("(");
            Poly p;
            try {
                p = poly();
            } catch (const Error& e) {
                if (e.kind() != "overflow") throw;
                error_at(t, "coefficient out of range");
            }
            if (p.degree() > 2) error_degree(t);
            expect("/");
            if (peek().kind != Tok::Int || peek().value != 2) error("expected '2N'");
            next();
            if (peek().kind != Tok::Ident || peek().text != "N") error("expected '2N'");
            next();
            expect("@");
            if (peek().kind != Tok::Ident || (peek().text != "U" && peek().text != "V"))
                error("expected domain U or V");
            Tag tag = parse_tag(next().text);
            expect(")");
            return at(Expr::phase(p, tag), t);
        }
        if (t.text == "sum" || t.text == "int") {
            if (peek().kind != Tok::Ident || is_keyword(peek().text)) error("expected a variable name");
            std::string v = next().text;
            expect(".");
            ExprPtr body = expr();
            return at(t.text == "sum" ? Expr::sum(v, body) : Expr::integral(v, body), t);
        }
        error_at(t, "unexpected identifier '" + t.text + "'");
    }

    [[noreturn]] static void error_degree(const Token& t) {
        fail("degree-error", std::to_string(t.line) + ":" + std::to_string(t.col) +
                                 ": phase polynomial has degree above 2");
    }

    Poly poly() {
        Guard g(*this);
        Token first = peek();
        Poly acc = pterm();
        while (sym("+") || sym("-")) {
            bool minus = next().text == "-";
            Poly t = pterm();
            acc = minus ? acc - t : acc + t;
        }
        if (acc.degree() > 2) error_degree(first);
        return acc;
    }

    Poly pterm() {
        bool neg = false;
        if (sym("-")) {
            next();
            neg = true;
        }
        Token first = peek();
        Poly acc = pfactor();
        while (sym("*")) {
            next();
            acc = acc * pfactor();
            if (acc.degree() > 2) error_degree(first);
        }
        return neg ? -acc : acc;
    }

    Poly pfactor() {
        Guard g(*this);
        Token t = peek();
        Poly base;
        if (t.kind == Tok::Int) {
            next();
            base = Poly(Rational(t.value));
        } else if (t.kind == Tok::Ident) {
            if (is_keyword(t.text) || t.text == "N") error("'" + t.text + "' cannot be a variable");
            next();
            base = Poly::var(t.text);
        } else if (sym("(")) {
            next();
            base = poly();
            expect(")");
        } else {
            error(t.kind == Tok::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
        }
        if (sym("^")) {
            next();
            if (peek().kind != Tok::Int) error("expected an exponent");
            i64 e = next().value;
            if (e > 2) error_degree(t);
            Poly r(Rational(1));
            for (i64 n = 0; n < e; ++n) r = r * base;
            base = r;
        }
        if (base.degree() > 2) error_degree(t);
        return base;
    }
};

} // namespace

ExprPtr parse_expr(const std::string& text) {
    Parser p(lex(text));
    return p.top();
}

} // namespace pfg
