#ifndef FLATLAB_DSL_HPP
#define FLATLAB_DSL_HPP

#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "expr.hpp"

namespace flatlab {

// Parsed problem file: declarations plus a task list. Structure only; field
// elements are materialized later so one parse serves both coefficient fields.

struct FieldDecl {
    bool rational = true;
    uint64_t p = 0;
};

struct BaseDecl {
    std::string name;
    std::vector<std::string> vars;
};

struct AlgebraDecl {
    std::string name;
    std::vector<std::string> yvars;
    std::vector<std::string> rels;
};

struct LocalizeDecl {
    std::string algebra;
    std::string element;
};

struct ModuleDecl {
    std::string name;
    std::string algebra;
    uint32_t gens = 0;
    std::vector<std::vector<std::string>> rels;
    bool graded = false;
};

struct DeclRef {
    enum class Kind { algebra, localize, module_decl };
    Kind kind;
    size_t index;
};

struct TaskDecl {
    std::string kind;                   // flat, dim2, tor, torsion, depth, codepth,
                                        // audit, oracle, ass-points, bench
    std::string sub;                    // audit tag or oracle name
    std::vector<std::string> names;     // module operands
    std::vector<std::string> polys;     // expression operands
    std::map<std::string, int> params;  // d, dmax
    std::string text;                   // canonical one-line form
    size_t line = 0;
};

struct ProblemFile {
    FieldDecl field;
    BaseDecl base;
    std::vector<AlgebraDecl> algebras;
    std::vector<LocalizeDecl> localizations;
    std::vector<ModuleDecl> modules;
    std::vector<DeclRef> order;
    std::vector<TaskDecl> tasks;

    std::string print() const;
};

namespace detail {

[[noreturn]] inline void perr(size_t line, const std::string& msg) {
    fail(errc::parse, "line " + std::to_string(line) + ": " + msg);
}

[[noreturn]] inline void perr_arity(size_t line, size_t got, uint32_t want) {
    fail(errc::arity, "line " + std::to_string(line) + ": relation has " +
                          std::to_string(got) + " entries for " + std::to_string(want) +
                          " generators");
}

inline std::string collapse_ws(const std::string& s) {
    std::string out;
    bool pending = false;
    for (char c : s) {
        if (std::isspace((unsigned char)c)) {
            pending = !out.empty();
            continue;
        }
        if (pending) out += ' ';
        pending = false;
        out += c;
    }
    return out;
}

inline const std::set<std::string>& dsl_keywords() {
    static const std::set<std::string> kw{
        "field", "base", "algebra", "localize", "module", "task", "poly", "over",
        "gens",  "rel",  "graded",  "at",       "audit",  "oracle"};
    return kw;
}

inline bool plain_name(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha((unsigned char)s[0]) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum((unsigned char)c) && c != '_') return false;
    return true;
}

// one statement line plus its lexer; expression operands are sliced out of
// the raw text so the printed form preserves what the author wrote
class LineParser {
public:
    LineParser(std::string text, size_t line)
        : text_(std::move(text)), line_(line), lx_(text_) {}

    size_t line() const { return line_; }
    Lexer& lx() { return lx_; }

    [[noreturn]] void err(const std::string& msg) const { perr(line_, msg); }

    std::string ident(const std::string& what) {
        if (lx_.peek().kind != Tok::Kind::ident) err("expected " + what);
        return lx_.take().text;
    }

    // identifiers glued by single dashes: torsion-tor, ass-points
    std::string dashed_ident(const std::string& what) {
        std::string s = ident(what);
        while (lx_.is_sym('-')) {
            lx_.take();
            s += "-" + ident(what);
        }
        return s;
    }

    std::string name(const std::string& what) {
        std::string s = ident(what);
        if (!plain_name(s)) err("'" + s + "' is not a usable name");
        if (dsl_keywords().count(s)) err("'" + s + "' is a reserved word");
        return s;
    }

    long long integer(const std::string& what) {
        bool neg = false;
        if (lx_.is_sym('-')) {
            lx_.take();
            neg = true;
        }
        if (lx_.peek().kind != Tok::Kind::integer) err("expected " + what);
        long long v = lx_.take().num;
        return neg ? -v : v;
    }

    void expect(char c, const std::string& what) {
        if (!lx_.is_sym(c)) err("expected '" + std::string(1, c) + "' " + what);
        lx_.take();
    }

    void expect_end() {
        if (!lx_.at_end()) err("unexpected trailing input '" + lx_.peek().text + "'");
    }

    // raw expression text up to a top-level ',' or ')' (or end of line)
    std::string expr_slice() {
        size_t start = lx_.peek().pos;
        int depth = 0;
        while (!lx_.at_end()) {
            if (lx_.is_sym('(')) ++depth;
            else if (lx_.is_sym(')')) {
                if (depth == 0) break;
                --depth;
            } else if (lx_.is_sym(',') && depth == 0)
                break;
            lx_.take();
        }
        std::string out = collapse_ws(text_.substr(start, lx_.peek().pos - start));
        if (out.empty()) err("expected a polynomial expression");
        return out;
    }

    std::vector<std::string> expr_tuple() {
        expect('(', "to open the tuple");
        std::vector<std::string> out;
        if (!lx_.is_sym(')')) {
            out.push_back(expr_slice());
            while (lx_.is_sym(',')) {
                lx_.take();
                out.push_back(expr_slice());
            }
        }
        expect(')', "to close the tuple");
        return out;
    }

private:
    std::string text_;
    size_t line_;
    Lexer lx_;
};

// full syntax check of one stored expression over the declared variables
inline void check_expr(const std::string& expr, const std::vector<std::string>& vars,
                       size_t line) {
    try {
        RingPtr scratch = Ring::make(vars);
        parse_poly(scratch, FieldCtx<Rational>{}, expr);
    } catch (const error& e) {
        perr(line, std::string(e.what()) + " in '" + expr + "'");
    }
}

}  // namespace detail

inline ProblemFile parse_problem(const std::string& text) {
    using detail::LineParser;
    ProblemFile pf;
    bool seen_field = false, seen_base = false;
    std::set<std::string> algebra_names, module_names;
    std::map<std::string, std::vector<std::string>> algebra_vars;
    std::map<std::string, std::string> module_algebra;

    auto algebra_of = [&](LineParser& p, const std::string& n) -> std::vector<std::string>& {
        auto it = algebra_vars.find(n);
        if (it == algebra_vars.end()) p.err("unknown algebra '" + n + "'");
        return it->second;
    };
    auto module_of = [&](LineParser& p, const std::string& n) -> const std::string& {
        auto it = module_algebra.find(n);
        if (it == module_algebra.end()) p.err("unknown module '" + n + "'");
        return it->second;
    };
    auto fresh = [&](LineParser& p, const std::string& n) {
        if (n == pf.base.name || algebra_names.count(n) || module_names.count(n))
            p.err("duplicate name '" + n + "'");
    };

    size_t lineno = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        std::string raw = text.substr(pos, eol == std::string::npos ? std::string::npos
                                                                    : eol - pos);
        pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
        ++lineno;
        if (auto h = raw.find('#'); h != std::string::npos) raw = raw.substr(0, h);
        if (detail::collapse_ws(raw).empty()) continue;

        LineParser p(raw, lineno);
        std::string head = p.ident("a statement keyword");

        if (head == "field") {
            if (seen_field) p.err("duplicate field declaration");
            seen_field = true;
            std::string f = p.ident("a field name (Q or F)");
            if (f == "Q") {
                pf.field.rational = true;
            } else if (f == "F") {
                long long q = p.integer("a prime modulus");
                if (q < 2 || q >= (1LL << 31)) p.err("modulus out of range");
                pf.field.rational = false;
                pf.field.p = (uint64_t)q;
            } else
                p.err("unknown field '" + f + "'");
            p.expect_end();
        } else if (head == "base") {
            if (seen_base) p.err("duplicate base declaration");
            seen_base = true;
            pf.base.name = p.name("a base ring name");
            p.expect('=', "after the base name");
            if (p.ident("'poly'") != "poly") p.err("the base must be a polynomial ring");
            p.expect('(', "to open the variable list");
            pf.base.vars.push_back(p.name("a variable"));
            while (p.lx().is_sym(',')) {
                p.lx().take();
                pf.base.vars.push_back(p.name("a variable"));
            }
            p.expect(')', "to close the variable list");
            p.expect_end();
            std::set<std::string> seen(pf.base.vars.begin(), pf.base.vars.end());
            if (seen.size() != pf.base.vars.size()) p.err("repeated base variable");
            if (seen.count(pf.base.name)) p.err("base name collides with a variable");
            algebra_names.insert(pf.base.name);
            algebra_vars[pf.base.name] = pf.base.vars;
        } else if (head == "algebra") {
            if (!seen_base) p.err("algebra declared before the base ring");
            AlgebraDecl a;
            a.name = p.name("an algebra name");
            fresh(p, a.name);
            p.expect('=', "after the algebra name");
            std::string over = p.name("the base ring name");
            if (over != pf.base.name) p.err("algebras extend the declared base only");
            p.expect('[', "to open the variable list");
            a.yvars.push_back(p.name("a variable"));
            while (p.lx().is_sym(',')) {
                p.lx().take();
                a.yvars.push_back(p.name("a variable"));
            }
            p.expect(']', "to close the variable list");
            if (p.lx().is_sym('/')) {
                p.lx().take();
                a.rels = p.expr_tuple();
                if (a.rels.empty()) p.err("empty relation tuple");
            }
            p.expect_end();
            std::vector<std::string> vars = pf.base.vars;
            for (auto& y : a.yvars) {
                for (auto& v : vars)
                    if (v == y) p.err("variable '" + y + "' already in use");
                vars.push_back(y);
            }
            for (auto& r : a.rels) detail::check_expr(r, vars, p.line());
            algebra_names.insert(a.name);
            algebra_vars[a.name] = vars;
            pf.order.push_back({DeclRef::Kind::algebra, pf.algebras.size()});
            pf.algebras.push_back(std::move(a));
        } else if (head == "localize") {
            LocalizeDecl l;
            l.algebra = p.name("an algebra name");
            auto& vars = algebra_of(p, l.algebra);
            if (p.ident("'at'") != "at") p.err("expected 'at'");
            l.element = p.expr_slice();
            p.expect_end();
            detail::check_expr(l.element, vars, p.line());
            pf.order.push_back({DeclRef::Kind::localize, pf.localizations.size()});
            pf.localizations.push_back(std::move(l));
        } else if (head == "module") {
            ModuleDecl m;
            m.name = p.name("a module name");
            fresh(p, m.name);
            if (p.ident("'over'") != "over") p.err("expected 'over'");
            m.algebra = p.name("an algebra name");
            auto& vars = algebra_of(p, m.algebra);
            p.expect(':', "before the module clauses");
            bool have_gens = false;
            for (;;) {
                std::string clause = p.ident("a module clause");
                if (clause == "gens") {
                    if (have_gens) p.err("duplicate gens clause");
                    have_gens = true;
                    long long g = p.integer("a generator count");
                    if (g < 1 || g > 64) p.err("generator count out of range");
                    m.gens = (uint32_t)g;
                } else if (clause == "rel") {
                    if (!have_gens) p.err("rel before gens");
                    auto col = p.expr_tuple();
                    if (col.size() != m.gens)
                        detail::perr_arity(p.line(), col.size(), m.gens);
                    for (auto& e : col) detail::check_expr(e, vars, p.line());
                    m.rels.push_back(std::move(col));
                } else if (clause == "graded") {
                    m.graded = true;
                } else
                    p.err("unknown module clause '" + clause + "'");
                if (!p.lx().is_sym(';')) break;
                p.lx().take();
            }
            p.expect_end();
            if (!have_gens) p.err("module without a gens clause");
            module_names.insert(m.name);
            module_algebra[m.name] = m.algebra;
            pf.order.push_back({DeclRef::Kind::module_decl, pf.modules.size()});
            pf.modules.push_back(std::move(m));
        } else if (head == "task") {
            TaskDecl t;
            t.line = p.line();
            t.kind = p.dashed_ident("a task kind");
            auto mod_operand = [&]() {
                std::string n = p.name("a module name");
                module_of(p, n);
                t.names.push_back(n);
            };
            auto int_param = [&](const std::string& key) {
                if (p.lx().peek().kind == Tok::Kind::ident && p.lx().peek().text == key) {
                    p.lx().take();
                    p.expect('=', "after '" + key + "'");
                    t.params[key] = (int)p.integer("an integer value");
                    return true;
                }
                return false;
            };
            if (t.kind == "flat") {
                mod_operand();
                int_param("d");
            } else if (t.kind == "dim2" || t.kind == "torsion" || t.kind == "depth" ||
                       t.kind == "codepth") {
                mod_operand();
            } else if (t.kind == "tor") {
                mod_operand();
                mod_operand();
            } else if (t.kind == "ass-points") {
                mod_operand();
                int_param("d");
            } else if (t.kind == "bench") {
                mod_operand();
                int_param("dmax");
            } else if (t.kind == "oracle") {
                t.sub = p.ident("an oracle name");
                if (t.sub != "smith" && t.sub != "fitting")
                    p.err("unknown oracle '" + t.sub + "'");
                mod_operand();
            } else if (t.kind == "audit") {
                t.sub = p.dashed_ident("an audit tag");
                if (t.sub == "rigidity" || t.sub == "torsion-tor") {
                    mod_operand();
                    mod_operand();
                } else if (t.sub == "descent") {
                    mod_operand();
                    int_param("d");
                } else if (t.sub == "codepth") {
                    mod_operand();
                    if (p.lx().peek().kind == Tok::Kind::ident) mod_operand();
                } else if (t.sub == "dim2") {
                    mod_operand();
                } else if (t.sub == "koszul2") {
                    mod_operand();
                    t.polys = p.expr_tuple();
                    if (t.polys.size() != 2) p.err("koszul2 takes a pair of elements");
                    for (auto& e : t.polys)
                        detail::check_expr(e, algebra_vars[module_of(p, t.names[0])],
                                           p.line());
                } else
                    p.err("unknown audit '" + t.sub + "'");
            } else
                p.err("unknown task '" + t.kind + "'");
            p.expect_end();

            t.text = t.kind;
            if (!t.sub.empty()) t.text += " " + t.sub;
            for (auto& n : t.names) t.text += " " + n;
            if (!t.polys.empty()) {
                t.text += " (";
                for (size_t i = 0; i < t.polys.size(); ++i)
                    t.text += (i ? ", " : "") + t.polys[i];
                t.text += ")";
            }
            for (auto& [k, v] : t.params) t.text += " " + k + "=" + std::to_string(v);
            pf.tasks.push_back(std::move(t));
        } else
            p.err("unknown statement '" + head + "'");
    }

    if (!seen_base && (!pf.algebras.empty() || !pf.modules.empty() || !pf.tasks.empty()))
        fail(errc::parse, "missing base declaration");
    return pf;
}

inline std::string ProblemFile::print() const {
    std::string out;
    out += field.rational ? "field Q\n" : "field F " + std::to_string(field.p) + "\n";
    if (!base.name.empty()) {
        out += "base " + base.name + " = poly(";
        for (size_t i = 0; i < base.vars.size(); ++i) out += (i ? ", " : "") + base.vars[i];
        out += ")\n";
    }
    for (auto& ref : order) {
        if (ref.kind == DeclRef::Kind::algebra) {
            const AlgebraDecl& a = algebras[ref.index];
            out += "algebra " + a.name + " = " + base.name + "[";
            for (size_t i = 0; i < a.yvars.size(); ++i) out += (i ? ", " : "") + a.yvars[i];
            out += "]";
            if (!a.rels.empty()) {
                out += " / (";
                for (size_t i = 0; i < a.rels.size(); ++i) out += (i ? ", " : "") + a.rels[i];
                out += ")";
            }
            out += "\n";
        } else if (ref.kind == DeclRef::Kind::localize) {
            const LocalizeDecl& l = localizations[ref.index];
            out += "localize " + l.algebra + " at " + l.element + "\n";
        } else {
            const ModuleDecl& m = modules[ref.index];
            out += "module " + m.name + " over " + m.algebra + " : gens " +
                   std::to_string(m.gens);
            for (auto& col : m.rels) {
                out += " ; rel (";
                for (size_t i = 0; i < col.size(); ++i) out += (i ? ", " : "") + col[i];
                out += ")";
            }
            if (m.graded) out += " ; graded";
            out += "\n";
        }
    }
    for (auto& t : tasks) out += "task " + t.text + "\n";
    return out;
}

}  // namespace flatlab

#endif
