#ifndef FLATLAB_MONOMIAL_HPP
#define FLATLAB_MONOMIAL_HPP

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "error.hpp"

namespace flatlab {

// Exponent vector over a fixed variable list.
struct Monomial {
    std::vector<uint32_t> e;

    Monomial() = default;
    explicit Monomial(size_t n) : e(n, 0) {}
    explicit Monomial(std::vector<uint32_t> exps) : e(std::move(exps)) {}

    static Monomial var(size_t n, size_t i, uint32_t k = 1) {
        Monomial m(n);
        m.e[i] = k;
        return m;
    }

    size_t nvars() const { return e.size(); }
    bool is_one() const {
        for (uint32_t x : e)
            if (x) return false;
        return true;
    }
    uint32_t deg() const { return std::accumulate(e.begin(), e.end(), uint32_t(0)); }
    uint32_t deg(size_t lo, size_t hi) const {
        uint32_t s = 0;
        for (size_t i = lo; i < hi; ++i) s += e[i];
        return s;
    }

    Monomial operator*(const Monomial& o) const {
        Monomial r(*this);
        for (size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
        return r;
    }
    bool divides(const Monomial& o) const {
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }
    // exact quotient *this / o; caller guarantees divisibility
    Monomial operator/(const Monomial& o) const {
        Monomial r(*this);
        for (size_t i = 0; i < e.size(); ++i) {
            require(r.e[i] >= o.e[i], errc::domain, "monomial quotient is not exact");
            r.e[i] -= o.e[i];
        }
        return r;
    }
    Monomial lcm(const Monomial& o) const {
        Monomial r(*this);
        for (size_t i = 0; i < e.size(); ++i)
            if (o.e[i] > r.e[i]) r.e[i] = o.e[i];
        return r;
    }
    Monomial gcd(const Monomial& o) const {
        Monomial r(*this);
        for (size_t i = 0; i < e.size(); ++i)
            if (o.e[i] < r.e[i]) r.e[i] = o.e[i];
        return r;
    }
    bool coprime(const Monomial& o) const {
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] && o.e[i]) return false;
        return true;
    }

    // zero out exponents in [lo, hi)
    Monomial without(size_t lo, size_t hi) const {
        Monomial r(*this);
        for (size_t i = lo; i < hi; ++i) r.e[i] = 0;
        return r;
    }
    bool supported_in(size_t lo, size_t hi) const {
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] && (i < lo || i >= hi)) return false;
        return true;
    }

    bool operator==(const Monomial& o) const { return e == o.e; }
    bool operator!=(const Monomial& o) const { return e != o.e; }
};

// Term orders. `block` compares the leading block [0, split) first (grevlex
// inside each block); it is an elimination order for the leading block.
struct Order {
    enum class Kind { lex, grevlex, block };
    Kind kind = Kind::grevlex;
    size_t split = 0;  // meaningful for block only

    static Order lex() { return {Kind::lex, 0}; }
    static Order grevlex() { return {Kind::grevlex, 0}; }
    static Order block(size_t split) { return {Kind::block, split}; }

    // -1, 0, or 1 as a <, =, > b
    int cmp(const Monomial& a, const Monomial& b) const {
        switch (kind) {
            case Kind::lex: {
                for (size_t i = 0; i < a.e.size(); ++i)
                    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? -1 : 1;
                return 0;
            }
            case Kind::grevlex:
                return grevlex_range(a, b, 0, a.e.size());
            case Kind::block: {
                if (int c = grevlex_range(a, b, 0, split)) return c;
                return grevlex_range(a, b, split, a.e.size());
            }
        }
        return 0;
    }

    std::string name() const {
        switch (kind) {
            case Kind::lex: return "lex";
            case Kind::grevlex: return "grevlex";
            case Kind::block: return "block" + std::to_string(split);
        }
        return "?";
    }

    bool operator==(const Order&) const = default;

private:
    static int grevlex_range(const Monomial& a, const Monomial& b, size_t lo, size_t hi) {
        uint32_t da = a.deg(lo, hi), db = b.deg(lo, hi);
        if (da != db) return da < db ? -1 : 1;
        for (size_t i = hi; i > lo; --i) {
            uint32_t xa = a.e[i - 1], xb = b.e[i - 1];
            if (xa != xb) return xa > xb ? -1 : 1;  // smaller trailing exponent wins
        }
        return 0;
    }
};

}  // namespace flatlab

#endif
