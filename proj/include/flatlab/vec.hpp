#ifndef FLATLAB_VEC_HPP
#define FLATLAB_VEC_HPP

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "poly.hpp"

namespace flatlab {

template <class K>
struct MTerm {
    uint32_t comp = 0;
    Monomial m;
    K c;
};

// Element of a free module A^rank. Terms are sorted strictly descending in
// the ring's module order; no zero coefficients. Ideals are the rank-1 case.
template <class K>
class Vec {
public:
    Vec() : rank_(0) {}
    Vec(RingPtr r, uint32_t rank) : rg_(std::move(r)), rank_(rank) {}

    static Vec zero(RingPtr r, uint32_t rank) { return Vec(std::move(r), rank); }
    static Vec unit(RingPtr r, uint32_t rank, uint32_t comp, K one) {
        Vec v(std::move(r), rank);
        require(comp < rank, errc::arity, "unit component out of range");
        v.ts_.push_back({comp, Monomial(v.rg_->nvars()), std::move(one)});
        return v;
    }
    static Vec single(RingPtr r, uint32_t rank, uint32_t comp, const Poly<K>& p) {
        Vec v(std::move(r), rank);
        require(comp < rank, errc::arity, "component out of range");
        for (auto& t : p.terms()) v.ts_.push_back({comp, t.m, t.c});
        return v;
    }
    static Vec from_terms(RingPtr r, uint32_t rank, std::vector<MTerm<K>> ts) {
        Vec v(r, rank);
        std::sort(ts.begin(), ts.end(), [&](const MTerm<K>& a, const MTerm<K>& b) {
            return r->cmp_term(a.comp, a.m, b.comp, b.m) > 0;
        });
        for (auto& t : ts) {
            require(t.comp < rank, errc::arity, "component out of range");
            if (t.c.is_zero()) continue;
            if (!v.ts_.empty() && v.ts_.back().comp == t.comp && v.ts_.back().m == t.m) {
                v.ts_.back().c += t.c;
                if (v.ts_.back().c.is_zero()) v.ts_.pop_back();
            } else {
                v.ts_.push_back(std::move(t));
            }
        }
        return v;
    }
    // column vector from per-component polynomials
    static Vec from_polys(RingPtr r, const std::vector<Poly<K>>& ps) {
        std::vector<MTerm<K>> ts;
        for (size_t j = 0; j < ps.size(); ++j)
            for (auto& t : ps[j].terms()) ts.push_back({(uint32_t)j, t.m, t.c});
        return from_terms(std::move(r), (uint32_t)ps.size(), std::move(ts));
    }

    const RingPtr& ring() const { return rg_; }
    uint32_t rank() const { return rank_; }
    const std::vector<MTerm<K>>& terms() const { return ts_; }
    bool is_zero() const { return ts_.empty(); }
    size_t nterms() const { return ts_.size(); }

    const MTerm<K>& lt() const {
        require(!ts_.empty(), errc::domain, "leading term of zero");
        return ts_.front();
    }

    Poly<K> component(uint32_t j) const {
        std::vector<Term<K>> ts;
        for (auto& t : ts_)
            if (t.comp == j) ts.push_back({t.m, t.c});
        return Poly<K>::from_terms(rg_, std::move(ts));
    }
    std::vector<Poly<K>> to_polys() const {
        std::vector<Poly<K>> out;
        out.reserve(rank_);
        for (uint32_t j = 0; j < rank_; ++j) out.push_back(component(j));
        return out;
    }

    Vec operator-() const {
        Vec r(*this);
        for (auto& t : r.ts_) t.c = -t.c;
        return r;
    }
    Vec operator+(const Vec& o) const {
        check(o);
        Vec r(rg_, rank_);
        r.ts_ = merge(ts_, o.ts_, *rg_);
        return r;
    }
    Vec operator-(const Vec& o) const { return *this + (-o); }
    Vec& operator+=(const Vec& o) { *this = *this + o; return *this; }
    Vec& operator-=(const Vec& o) { *this = *this - o; return *this; }

    Vec operator*(const K& c) const {
        Vec r(rg_, rank_);
        if (c.is_zero()) return r;
        r.ts_ = ts_;
        for (auto& t : r.ts_) t.c *= c;
        return r;
    }
    Vec shifted(const Monomial& m, const K& c) const {
        Vec r(rg_, rank_);
        if (c.is_zero()) return r;
        r.ts_.reserve(ts_.size());
        for (auto& t : ts_) r.ts_.push_back({t.comp, t.m * m, t.c * c});
        return r;
    }
    Vec scaled(const Poly<K>& p) const {
        Vec acc(rg_, rank_);
        for (auto& t : p.terms()) acc = acc + shifted(t.m, t.c);
        return acc;
    }

    bool operator==(const Vec& o) const {
        if (!same_ring(rg_, o.rg_) || rank_ != o.rank_) return false;
        if (ts_.size() != o.ts_.size()) return false;
        for (size_t i = 0; i < ts_.size(); ++i)
            if (ts_[i].comp != o.ts_[i].comp || ts_[i].m != o.ts_[i].m ||
                !(ts_[i].c == o.ts_[i].c))
                return false;
        return true;
    }
    bool operator!=(const Vec& o) const { return !(*this == o); }

    Vec mapped(const RingPtr& dst, const std::vector<size_t>& map) const {
        std::vector<MTerm<K>> ts;
        ts.reserve(ts_.size());
        for (auto& t : ts_) ts.push_back({t.comp, map_monomial(t.m, map, dst->nvars()), t.c});
        return from_terms(dst, rank_, std::move(ts));
    }
    Vec mapped(const RingPtr& dst) const { return mapped(dst, var_map(*rg_, *dst)); }

    // re-tag components through comp -> f(comp) into a wider/narrower module
    template <class F>
    Vec retagged(uint32_t new_rank, F&& f) const {
        std::vector<MTerm<K>> ts;
        ts.reserve(ts_.size());
        for (auto& t : ts_) ts.push_back({(uint32_t)f(t.comp), t.m, t.c});
        return from_terms(rg_, new_rank, std::move(ts));
    }

    std::string str() const {
        std::ostringstream os;
        os << "(";
        for (uint32_t j = 0; j < rank_; ++j) {
            if (j) os << ", ";
            os << component(j).str();
        }
        os << ")";
        return os.str();
    }

private:
    void check(const Vec& o) const {
        require(same_ring(rg_, o.rg_), errc::mismatch, "module elements over different rings");
        require(rank_ == o.rank_, errc::mismatch, "module elements of different ranks");
    }

    static std::vector<MTerm<K>> merge(const std::vector<MTerm<K>>& a,
                                       const std::vector<MTerm<K>>& b, const Ring& rg) {
        std::vector<MTerm<K>> out;
        out.reserve(a.size() + b.size());
        size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            int c = rg.cmp_term(a[i].comp, a[i].m, b[j].comp, b[j].m);
            if (c > 0) {
                out.push_back(a[i++]);
            } else if (c < 0) {
                out.push_back(b[j++]);
            } else {
                K s = a[i].c + b[j].c;
                if (!s.is_zero()) out.push_back({a[i].comp, a[i].m, std::move(s)});
                ++i; ++j;
            }
        }
        while (i < a.size()) out.push_back(a[i++]);
        while (j < b.size()) out.push_back(b[j++]);
        return out;
    }

    RingPtr rg_;
    uint32_t rank_;
    std::vector<MTerm<K>> ts_;
};

}  // namespace flatlab

#endif
