#ifndef FLATLAB_MODOPS_HPP
#define FLATLAB_MODOPS_HPP

#include <memory>
#include <optional>
#include <vector>

#include "gb.hpp"

namespace flatlab {

// Ideal with a lazily cached reduced GB. Value type; the cache is shared on
// copy. Single-task confinement: not safe for concurrent mutation.
template <class K>
class Ideal {
public:
    Ideal() = default;
    Ideal(RingPtr r, std::vector<Poly<K>> gens)
        : rg_(std::move(r)), gens_(std::move(gens)), gb_(std::make_shared<Cache>()) {
        for (auto& g : gens_)
            require(same_ring(g.ring(), rg_), errc::mismatch, "ideal generator over wrong ring");
    }
    static Ideal zero(RingPtr r) { return Ideal(std::move(r), {}); }

    const RingPtr& ring() const { return rg_; }
    const std::vector<Poly<K>>& gens() const { return gens_; }

    const std::vector<Poly<K>>& gb() const {
        if (!gb_->val) gb_->val = buchberger(gens_);
        return *gb_->val;
    }

    bool contains(const Poly<K>& f) const { return normal_form(f, gb()).is_zero(); }
    bool is_zero_ideal() const { return gb().empty(); }
    bool is_unit() const { return gb().size() == 1 && gb()[0].is_constant(); }

    bool operator==(const Ideal& o) const {
        if (!same_ring(rg_, o.rg_)) return false;
        return gb() == o.gb();
    }

private:
    struct Cache {
        std::optional<std::vector<Poly<K>>> val;
    };
    RingPtr rg_;
    std::vector<Poly<K>> gens_;
    std::shared_ptr<Cache> gb_ = std::make_shared<Cache>();
};

// Submodule of A^rank, same caching contract as Ideal.
template <class K>
class Submodule {
public:
    Submodule() : rank_(0) {}
    Submodule(RingPtr r, uint32_t rank, std::vector<Vec<K>> gens)
        : rg_(std::move(r)), rank_(rank), gens_(std::move(gens)),
          gb_(std::make_shared<Cache>()) {
        for (auto& g : gens_) {
            require(same_ring(g.ring(), rg_), errc::mismatch, "generator over wrong ring");
            require(g.rank() == rank_, errc::mismatch, "generator of wrong rank");
        }
    }
    static Submodule zero(RingPtr r, uint32_t rank) { return Submodule(std::move(r), rank, {}); }

    const RingPtr& ring() const { return rg_; }
    uint32_t rank() const { return rank_; }
    const std::vector<Vec<K>>& gens() const { return gens_; }

    const std::vector<Vec<K>>& gb() const {
        if (!gb_->val) gb_->val = buchberger(gens_);
        return *gb_->val;
    }

    bool contains(const Vec<K>& f) const { return normal_form(f, gb()).is_zero(); }
    bool is_zero_module() const { return gb().empty(); }
    // contains every unit vector, i.e. equals A^rank
    bool is_full(const FieldCtx<K>& cx) const {
        for (uint32_t j = 0; j < rank_; ++j)
            if (!contains(Vec<K>::unit(rg_, rank_, j, cx.one()))) return false;
        return true;
    }

    bool operator==(const Submodule& o) const {
        if (!same_ring(rg_, o.rg_) || rank_ != o.rank_) return false;
        return gb() == o.gb();
    }

private:
    struct Cache {
        std::optional<std::vector<Vec<K>>> val;
    };
    RingPtr rg_;
    uint32_t rank_;
    std::vector<Vec<K>> gens_;
    std::shared_ptr<Cache> gb_ = std::make_shared<Cache>();
};

// Schreyer syzygies of a module GB. Every S-pair of the input must reduce to
// zero; a nonzero remainder rejects the input as not a GB. The relation from
// pair (i, j) is  (lcm/lm_i)/lc_i e_i - (lcm/lm_j)/lc_j e_j - sum q_k e_k.
template <class K>
Submodule<K> syzygies(const std::vector<Vec<K>>& G) {
    require(!G.empty(), errc::arity, "syzygies of an empty list");
    const RingPtr& rg = G[0].ring();
    const uint32_t q = (uint32_t)G.size();
    std::vector<Vec<K>> out;
    for (uint32_t i = 0; i < q; ++i) {
        require(!G[i].is_zero(), errc::domain, "zero element in GB input");
        for (uint32_t j = i + 1; j < q; ++j) {
            const MTerm<K>& li = G[i].lt();
            const MTerm<K>& lj = G[j].lt();
            if (li.comp != lj.comp) continue;
            Monomial l = li.m.lcm(lj.m);
            Vec<K> s = G[i].shifted(l / li.m, li.c.inv()) - G[j].shifted(l / lj.m, lj.c.inv());
            std::vector<Poly<K>> qs;
            Vec<K> r = normal_form(s, G, &qs);
            require(r.is_zero(), errc::precondition, "input list is not a Groebner basis");
            std::vector<MTerm<K>> ts;
            ts.push_back({i, l / li.m, li.c.inv()});
            ts.push_back({j, l / lj.m, -(lj.c.inv())});
            for (uint32_t k = 0; k < q; ++k)
                for (auto& t : qs[k].terms()) ts.push_back({k, t.m, -t.c});
            Vec<K> syz = Vec<K>::from_terms(rg, q, std::move(ts));
            if (!syz.is_zero()) out.push_back(std::move(syz));
        }
    }
    return Submodule<K>(rg, q, std::move(out));
}

// Kernel of the map A^q -> A^g / target, where the map sends e_i to cols[i].
// Tagged elimination: compute a GB of {(cols[i]; e_i)} u {(t; 0) : t in
// target} in A^(g+q) under the position-over-term order, where real
// components dominate tags; basis elements supported entirely in the tag
// block cut out exactly the kernel.
template <class K>
Submodule<K> kernel_of_map(const FieldCtx<K>& cx, const std::vector<Vec<K>>& cols,
                           const Submodule<K>& target) {
    const uint32_t q = (uint32_t)cols.size();
    const uint32_t g = target.rank();
    const RingPtr rg = target.ring();
    for (auto& c : cols) {
        require(same_ring(c.ring(), rg), errc::mismatch, "map column over wrong ring");
        require(c.rank() == g, errc::mismatch, "map column of wrong rank");
    }
    if (q == 0) return Submodule<K>::zero(rg, 0);
    if (g == 0) {
        // everything maps to zero
        std::vector<Vec<K>> units;
        for (uint32_t i = 0; i < q; ++i)
            units.push_back(Vec<K>::unit(rg, q, i, cx.one()));
        return Submodule<K>(rg, q, std::move(units));
    }
    std::vector<Vec<K>> gens;
    for (uint32_t i = 0; i < q; ++i) {
        Vec<K> t = cols[i].retagged(g + q, [](uint32_t c) { return c; });
        t += Vec<K>::unit(rg, g + q, g + i, cx.one());
        gens.push_back(std::move(t));
    }
    for (auto& t : target.gens())
        gens.push_back(t.retagged(g + q, [](uint32_t c) { return c; }));
    std::vector<Vec<K>> gb = buchberger(gens);
    std::vector<Vec<K>> ker;
    for (auto& e : gb) {
        if (e.is_zero() || e.lt().comp < g) continue;  // touches real components
        ker.push_back(e.retagged(q, [&](uint32_t c) { return c - g; }));
    }
    return Submodule<K>(rg, q, std::move(ker));
}

// syzygies of an arbitrary (not necessarily GB) column list
template <class K>
Submodule<K> kernel_of_map(const FieldCtx<K>& cx, const std::vector<Vec<K>>& cols, uint32_t g) {
    require(!cols.empty(), errc::arity, "kernel of an empty map");
    return kernel_of_map(cx, cols, Submodule<K>::zero(cols[0].ring(), g));
}

// (N : f) = { v : f v in N }
template <class K>
Submodule<K> quotient_by_poly(const FieldCtx<K>& cx, const Submodule<K>& N, const Poly<K>& f) {
    require(same_ring(f.ring(), N.ring()), errc::mismatch, "quotient over wrong ring");
    require(!f.is_zero(), errc::domain, "module quotient by the zero polynomial");
    const uint32_t g = N.rank();
    std::vector<Vec<K>> cols;
    for (uint32_t j = 0; j < g; ++j)
        cols.push_back(Vec<K>::single(N.ring(), g, j, f));
    return kernel_of_map(cx, cols, N);
}

template <class K>
Submodule<K> intersect(const FieldCtx<K>& cx, const Submodule<K>& U, const Submodule<K>& V) {
    require(same_ring(U.ring(), V.ring()) && U.rank() == V.rank(), errc::mismatch,
            "intersection of incompatible submodules");
    const uint32_t g = U.rank();
    const RingPtr& rg = U.ring();
    if (g == 0 || U.gens().empty() || V.gens().empty())
        return Submodule<K>::zero(rg, g);
    std::vector<Vec<K>> both;
    for (auto& u : U.gens()) both.push_back(u.retagged(2 * g, [](uint32_t c) { return c; }));
    for (auto& v : V.gens())
        both.push_back(v.retagged(2 * g, [&](uint32_t c) { return c + g; }));
    Submodule<K> target(rg, 2 * g, std::move(both));
    std::vector<Vec<K>> diag;
    for (uint32_t j = 0; j < g; ++j) {
        Vec<K> d = Vec<K>::unit(rg, 2 * g, j, cx.one());
        d += Vec<K>::unit(rg, 2 * g, g + j, cx.one());
        diag.push_back(std::move(d));
    }
    return kernel_of_map(cx, diag, target);
}

// (N : J) for an ideal J, intersecting over the generators of J
template <class K>
Submodule<K> quotient(const FieldCtx<K>& cx, const Submodule<K>& N, const Ideal<K>& J) {
    std::optional<Submodule<K>> acc;
    for (auto& f : J.gens()) {
        if (f.is_zero()) continue;
        Submodule<K> qf = quotient_by_poly(cx, N, f);
        acc = acc ? intersect(cx, *acc, qf) : qf;
    }
    require(acc.has_value(), errc::domain, "module quotient by the zero ideal");
    return *acc;
}

template <class K>
struct Saturation {
    Submodule<K> module;
    int steps = 0;  // quotients applied until stabilization
};

// (N : f^inf), iterating (N : f) until the canonical GB stabilizes
template <class K>
Saturation<K> saturate(const FieldCtx<K>& cx, const Submodule<K>& N, const Poly<K>& f) {
    require(!f.is_zero(), errc::domain, "saturation by the zero polynomial");
    Saturation<K> s{N, 0};
    for (;;) {
        Submodule<K> next = quotient_by_poly(cx, s.module, f);
        if (next == s.module) return s;
        s.module = std::move(next);
        ++s.steps;
    }
}

// saturation by an ideal: iterate (N : J) to a fixpoint
template <class K>
Saturation<K> saturate_by_ideal(const FieldCtx<K>& cx, const Submodule<K>& N, const Ideal<K>& J) {
    Saturation<K> s{N, 0};
    for (;;) {
        Submodule<K> next = quotient(cx, s.module, J);
        if (next == s.module) return s;
        s.module = std::move(next);
        ++s.steps;
    }
}

// ideal saturation (I : f^inf) through the rank-1 view
template <class K>
Ideal<K> saturate_ideal(const FieldCtx<K>& cx, const Ideal<K>& I, const Poly<K>& f) {
    const RingPtr& rg = I.ring();
    std::vector<Vec<K>> gens;
    for (auto& g : I.gens()) gens.push_back(Vec<K>::single(rg, 1, 0, g));
    Saturation<K> s = saturate(cx, Submodule<K>(rg, 1, std::move(gens)), f);
    std::vector<Poly<K>> out;
    for (auto& v : s.module.gb()) out.push_back(v.component(0));
    return Ideal<K>(rg, std::move(out));
}

// I ∩ k[x_split..]: block elimination order on a ring copy, keep the GB
// elements free of the leading block, map back.
template <class K>
Ideal<K> eliminate(const Ideal<K>& I, size_t split) {
    const RingPtr& rg = I.ring();
    require(split <= rg->nvars(), errc::arity, "elimination block out of range");
    RingPtr er = with_order(rg, Order::block(split));
    std::vector<Poly<K>> moved;
    for (auto& g : I.gens()) moved.push_back(g.mapped(er));
    std::vector<Poly<K>> gb = buchberger(moved);
    std::vector<Poly<K>> kept;
    for (auto& g : gb) {
        if (g.is_zero()) continue;
        // an elimination order makes the lead see the leading block first
        if (!g.lm().supported_in(split, er->nvars())) continue;
        bool pure = true;
        for (auto& t : g.terms())
            if (!t.m.supported_in(split, er->nvars())) { pure = false; break; }
        require(pure, errc::domain, "elimination postcondition violated");
        kept.push_back(g.mapped(rg));
    }
    return Ideal<K>(rg, std::move(kept));
}

}  // namespace flatlab

#endif
