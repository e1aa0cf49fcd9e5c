#ifndef FLATLAB_POLY_HPP
#define FLATLAB_POLY_HPP

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "ring.hpp"
#include "scalar.hpp"

namespace flatlab {

template <class K>
struct Term {
    Monomial m;
    K c;
};

// Sparse polynomial: terms sorted strictly descending in the ring order, no
// zero coefficients. A default-constructed Poly is the zero polynomial of an
// unspecified ring and only usable as an assignment target.
template <class K>
class Poly {
public:
    Poly() = default;
    explicit Poly(RingPtr r) : rg_(std::move(r)) {}

    static Poly zero(RingPtr r) { return Poly(std::move(r)); }
    static Poly constant(RingPtr r, K c) {
        Poly p(std::move(r));
        if (!c.is_zero()) p.ts_.push_back({Monomial(p.rg_->nvars()), std::move(c)});
        return p;
    }
    static Poly variable(RingPtr r, size_t i, K one, uint32_t k = 1) {
        Poly p(r);
        if (k == 0) return constant(r, std::move(one));
        p.ts_.push_back({Monomial::var(r->nvars(), i, k), std::move(one)});
        return p;
    }
    static Poly monomial(RingPtr r, Monomial m, K c) {
        Poly p(std::move(r));
        if (!c.is_zero()) p.ts_.push_back({std::move(m), std::move(c)});
        return p;
    }
    // sorts, merges duplicates, drops zeros
    static Poly from_terms(RingPtr r, std::vector<Term<K>> ts) {
        Poly p(r);
        std::sort(ts.begin(), ts.end(),
                  [&](const Term<K>& a, const Term<K>& b) { return r->cmp(a.m, b.m) > 0; });
        for (auto& t : ts) {
            if (t.c.is_zero()) continue;
            if (!p.ts_.empty() && p.ts_.back().m == t.m) {
                p.ts_.back().c += t.c;
                if (p.ts_.back().c.is_zero()) p.ts_.pop_back();
            } else {
                p.ts_.push_back(std::move(t));
            }
        }
        return p;
    }

    const RingPtr& ring() const { return rg_; }
    const std::vector<Term<K>>& terms() const { return ts_; }
    bool is_zero() const { return ts_.empty(); }
    size_t nterms() const { return ts_.size(); }

    const Monomial& lm() const {
        require(!ts_.empty(), errc::domain, "leading monomial of zero");
        return ts_.front().m;
    }
    const K& lc() const {
        require(!ts_.empty(), errc::domain, "leading coefficient of zero");
        return ts_.front().c;
    }
    uint32_t deg() const {
        uint32_t d = 0;
        for (auto& t : ts_) d = std::max(d, t.m.deg());
        return d;
    }
    bool is_constant() const { return ts_.empty() || (ts_.size() == 1 && ts_[0].m.is_one()); }

    Poly operator-() const {
        Poly r(*this);
        for (auto& t : r.ts_) t.c = -t.c;
        return r;
    }

    Poly operator+(const Poly& o) const {
        check(o);
        Poly r(rg_);
        r.ts_ = merge(ts_, o.ts_, *rg_);
        return r;
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const K& c) const {
        Poly r(rg_);
        if (c.is_zero()) return r;
        r.ts_ = ts_;
        for (auto& t : r.ts_) t.c *= c;
        return r;
    }
    // multiply by a term c * x^m
    Poly shifted(const Monomial& m, const K& c) const {
        Poly r(rg_);
        if (c.is_zero()) return r;
        r.ts_.reserve(ts_.size());
        for (auto& t : ts_) r.ts_.push_back({t.m * m, t.c * c});
        return r;
    }
    Poly operator*(const Poly& o) const {
        check(o);
        Poly acc(rg_);
        for (auto& t : o.ts_) acc = acc + shifted(t.m, t.c);
        return acc;
    }

    Poly& operator+=(const Poly& o) { *this = *this + o; return *this; }
    Poly& operator-=(const Poly& o) { *this = *this - o; return *this; }
    Poly& operator*=(const Poly& o) { *this = *this * o; return *this; }

    bool operator==(const Poly& o) const {
        if (!same_ring(rg_, o.rg_)) return false;
        if (ts_.size() != o.ts_.size()) return false;
        for (size_t i = 0; i < ts_.size(); ++i)
            if (ts_[i].m != o.ts_[i].m || !(ts_[i].c == o.ts_[i].c)) return false;
        return true;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    // transport into another ring along a variable map
    Poly mapped(const RingPtr& dst, const std::vector<size_t>& map) const {
        std::vector<Term<K>> ts;
        ts.reserve(ts_.size());
        for (auto& t : ts_) ts.push_back({map_monomial(t.m, map, dst->nvars()), t.c});
        return from_terms(dst, std::move(ts));
    }
    Poly mapped(const RingPtr& dst) const { return mapped(dst, var_map(*rg_, *dst)); }

    std::string str() const {
        if (ts_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& t : ts_) {
            std::string c = t.c.str();
            bool neg = !c.empty() && c[0] == '-';
            if (neg) c = c.substr(1);
            if (first) {
                if (neg) os << "-";
            } else {
                os << (neg ? " - " : " + ");
            }
            std::string mono = mono_str(t.m);
            if (mono.empty()) {
                os << c;
            } else if (c == "1") {
                os << mono;
            } else {
                os << c << "*" << mono;
            }
            first = false;
        }
        return os.str();
    }

private:
    void check(const Poly& o) const {
        require(same_ring(rg_, o.rg_), errc::mismatch, "polynomials over different rings");
    }

    std::string mono_str(const Monomial& m) const {
        std::ostringstream os;
        bool first = true;
        for (size_t i = 0; i < m.e.size(); ++i) {
            if (!m.e[i]) continue;
            if (!first) os << "*";
            os << rg_->vars[i];
            if (m.e[i] > 1) os << "^" << m.e[i];
            first = false;
        }
        return os.str();
    }

    static std::vector<Term<K>> merge(const std::vector<Term<K>>& a, const std::vector<Term<K>>& b,
                                      const Ring& rg) {
        std::vector<Term<K>> out;
        out.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            int c = rg.cmp(a[i].m, b[j].m);
            if (c > 0) {
                out.push_back(a[i++]);
            } else if (c < 0) {
                out.push_back(b[j++]);
            } else {
                K s = a[i].c + b[j].c;
                if (!s.is_zero()) out.push_back({a[i].m, std::move(s)});
                ++i; ++j;
            }
        }
        while (i < a.size()) out.push_back(a[i++]);
        while (j < b.size()) out.push_back(b[j++]);
        return out;
    }

    RingPtr rg_;
    std::vector<Term<K>> ts_;
};

}  // namespace flatlab

#endif
