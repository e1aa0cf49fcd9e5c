#ifndef FLATLAB_EXPR_HPP
#define FLATLAB_EXPR_HPP

#include <cctype>
#include <string>

#include "poly.hpp"

namespace flatlab {

// Minimal token stream shared by the polynomial expression parser and the
// problem-file parser.
struct Tok {
    enum class Kind { integer, ident, sym, end };
    Kind kind = Kind::end;
    std::string text;
    long long num = 0;
    size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(std::string src) : src_(std::move(src)) { advance(); }

    const Tok& peek() const { return cur_; }
    Tok take() {
        Tok t = cur_;
        advance();
        return t;
    }
    bool at_end() const { return cur_.kind == Tok::Kind::end; }

    bool is_sym(char c) const { return cur_.kind == Tok::Kind::sym && cur_.text[0] == c; }
    bool is_ident(const std::string& s) const {
        return cur_.kind == Tok::Kind::ident && cur_.text == s;
    }
    void expect_sym(char c, const std::string& what) {
        if (!is_sym(c)) fail(errc::parse, "expected '" + std::string(1, c) + "' " + what);
        advance();
    }

private:
    void advance() {
        while (i_ < src_.size() && std::isspace((unsigned char)src_[i_])) ++i_;
        cur_ = Tok{};
        cur_.pos = i_;
        if (i_ >= src_.size()) return;
        char c = src_[i_];
        if (std::isdigit((unsigned char)c)) {
            size_t j = i_;
            while (j < src_.size() && std::isdigit((unsigned char)src_[j])) ++j;
            cur_.kind = Tok::Kind::integer;
            cur_.text = src_.substr(i_, j - i_);
            if (cur_.text.size() > 18) fail(errc::parse, "integer literal too large");
            cur_.num = std::stoll(cur_.text);
            i_ = j;
            return;
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            size_t j = i_;
            while (j < src_.size() && (std::isalnum((unsigned char)src_[j]) || src_[j] == '_' ||
                                       src_[j] == '@' || src_[j] == '\''))
                ++j;
            cur_.kind = Tok::Kind::ident;
            cur_.text = src_.substr(i_, j - i_);
            i_ = j;
            return;
        }
        cur_.kind = Tok::Kind::sym;
        cur_.text = std::string(1, c);
        ++i_;
    }

    std::string src_;
    size_t i_ = 0;
    Tok cur_;
};

// Recursive-descent polynomial expressions: + - * ^, unary minus,
// parentheses, rational literals a/b with integer a, b only.
template <class K>
class ExprParser {
public:
    ExprParser(Lexer& lx, RingPtr rg, FieldCtx<K> cx)
        : lx_(lx), rg_(std::move(rg)), cx_(std::move(cx)) {}

    Poly<K> expr() {
        Poly<K> acc = term();
        while (lx_.is_sym('+') || lx_.is_sym('-')) {
            bool plus = lx_.is_sym('+');
            lx_.take();
            Poly<K> t = term();
            acc = plus ? acc + t : acc - t;
        }
        return acc;
    }

private:
    Poly<K> term() {
        Poly<K> acc = unary();
        while (lx_.is_sym('*')) {
            lx_.take();
            acc = acc * unary();
        }
        return acc;
    }

    Poly<K> unary() {
        if (lx_.is_sym('-')) {
            lx_.take();
            return -unary();
        }
        return power();
    }

    Poly<K> power() {
        Poly<K> base = atom();
        if (lx_.is_sym('^')) {
            lx_.take();
            if (lx_.peek().kind != Tok::Kind::integer)
                fail(errc::parse, "exponent must be a nonnegative integer");
            long long e = lx_.take().num;
            Poly<K> acc = Poly<K>::constant(rg_, cx_.one());
            for (long long k = 0; k < e; ++k) acc = acc * base;
            return acc;
        }
        return base;
    }

    Poly<K> atom() {
        const Tok& t = lx_.peek();
        if (t.kind == Tok::Kind::integer) {
            long long n = lx_.take().num;
            if (lx_.is_sym('/')) {
                lx_.take();
                if (lx_.peek().kind != Tok::Kind::integer)
                    fail(errc::parse, "rational literal must be integer/integer");
                long long d = lx_.take().num;
                return Poly<K>::constant(rg_, cx_.from_fraction(n, d));
            }
            return Poly<K>::constant(rg_, cx_.from_int(n));
        }
        if (t.kind == Tok::Kind::ident) {
            std::string name = lx_.take().text;
            int idx = rg_->var_index(name);
            if (idx < 0) fail(errc::parse, "unknown variable '" + name + "'");
            return Poly<K>::variable(rg_, (size_t)idx, cx_.one());
        }
        if (t.kind == Tok::Kind::sym && t.text[0] == '(') {
            lx_.take();
            Poly<K> inner = expr();
            lx_.expect_sym(')', "to close subexpression");
            return inner;
        }
        fail(errc::parse, "unexpected token '" + t.text + "' in expression");
    }

    Lexer& lx_;
    RingPtr rg_;
    FieldCtx<K> cx_;
};

template <class K>
Poly<K> parse_poly(const RingPtr& rg, const FieldCtx<K>& cx, const std::string& s) {
    Lexer lx(s);
    ExprParser<K> p(lx, rg, cx);
    Poly<K> out = p.expr();
    if (!lx.at_end()) fail(errc::parse, "trailing input after expression: '" + lx.peek().text + "'");
    return out;
}

}  // namespace flatlab

#endif
