#ifndef FLATLAB_GB_HPP
#define FLATLAB_GB_HPP

#include <cstdlib>
#include <set>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "vec.hpp"

namespace flatlab {

// Cumulative per-thread work meter. Reset at task boundaries to attribute
// work to one computation.
struct GbStats {
    long long pairs = 0;       // S-pairs actually reduced
    size_t max_terms = 0;      // largest intermediate element seen
};

inline GbStats& gb_stats() {
    thread_local GbStats s;
    return s;
}
inline void gb_stats_reset() { gb_stats() = GbStats{}; }

// FLATLAB_GB_LIMIT caps S-pair reductions per engine invocation; 0 or unset
// means unlimited. Exceeding the cap aborts with a resource error, it never
// degrades a verdict.
inline long long gb_pair_limit() {
    const char* s = std::getenv("FLATLAB_GB_LIMIT");
    if (!s || !*s) return 0;
    char* end = nullptr;
    long long v = std::strtoll(s, &end, 10);
    if (end == s || v < 0) return 0;
    return v;
}

struct GbOptions {
    bool sugar = false;  // sugar pair selection instead of plain degree
};

namespace detail {

inline void note_terms(size_t n) {
    if (n > gb_stats().max_terms) gb_stats().max_terms = n;
}

template <class K>
void normalize_content(Vec<K>& v) {
    if (v.is_zero()) return;
    if constexpr (std::is_same_v<K, Rational>) {
        mpz_class g = 0, l = 1;
        for (auto& t : v.terms()) {
            mpz_class n = abs(t.c.num());
            g = g == 0 ? n : mpz_class(gcd(g, n));
            l = mpz_class(lcm(l, t.c.den()));
        }
        Rational f{mpq_class(l, g)};
        if (v.lt().c.sign() < 0) f = -f;
        v = v * f;
    } else {
        v = v * v.lt().c.inv();
    }
}

template <class K>
void make_monic(Vec<K>& v) {
    if (!v.is_zero() && !v.lt().c.is_one()) v = v * v.lt().c.inv();
}

}  // namespace detail

// Remainder of f on full division by G: no remainder term is divisible by any
// leading term of G. Reducers are tried in list order, lowest index first,
// which pins the result for non-GB reducer lists as well. When `quotients` is
// given it receives q with f = sum q[i] G[i] + r.
template <class K>
Vec<K> normal_form(const Vec<K>& f, const std::vector<Vec<K>>& G,
                   std::vector<Poly<K>>* quotients = nullptr) {
    const RingPtr& rg = f.ring();
    if (quotients) quotients->assign(G.size(), Poly<K>::zero(rg));
    Vec<K> h = f;
    std::vector<MTerm<K>> rem;
    while (!h.is_zero()) {
        detail::note_terms(h.nterms());
        const MTerm<K>& lt = h.lt();
        bool reduced = false;
        for (size_t i = 0; i < G.size(); ++i) {
            if (G[i].is_zero()) continue;
            const MTerm<K>& gl = G[i].lt();
            if (gl.comp != lt.comp || !gl.m.divides(lt.m)) continue;
            K c = lt.c / gl.c;
            Monomial u = lt.m / gl.m;
            h -= G[i].shifted(u, c);
            if (quotients)
                (*quotients)[i] += Poly<K>::monomial(rg, u, c);
            reduced = true;
            break;
        }
        if (!reduced) {
            rem.push_back(lt);
            h -= Vec<K>::from_terms(rg, h.rank(), {lt});
        }
    }
    // terms were peeled in strictly decreasing order
    return Vec<K>::from_terms(rg, f.rank(), std::move(rem));
}

template <class K>
Poly<K> normal_form(const Poly<K>& f, const std::vector<Poly<K>>& G) {
    std::vector<Vec<K>> gv;
    gv.reserve(G.size());
    for (auto& g : G) gv.push_back(Vec<K>::single(f.ring(), 1, 0, g));
    return normal_form(Vec<K>::single(f.ring(), 1, 0, f), gv).component(0);
}

namespace detail {

struct Pair {
    uint32_t i, j;
    Monomial lcm;
    uint32_t deg;
    uint64_t sugar;
};

// Buchberger with normal pair selection (minimal lcm degree, ties by pair
// index) or the sugar refinement; product criterion in rank 1, chain
// criterion throughout.
template <class K>
std::vector<Vec<K>> buchberger_core(std::vector<Vec<K>> basis, const GbOptions& opts) {
    const long long limit = gb_pair_limit();
    long long used = 0;

    std::vector<Vec<K>> G;
    std::vector<uint64_t> sug;
    for (auto& g : basis) {
        if (g.is_zero()) continue;
        normalize_content(g);
        uint64_t s = 0;
        for (auto& t : g.terms()) s = std::max<uint64_t>(s, t.m.deg());
        G.push_back(std::move(g));
        sug.push_back(s);
    }
    if (G.empty()) return G;
    const uint32_t rank = G[0].rank();

    std::vector<Pair> pending;
    std::set<std::pair<uint32_t, uint32_t>> pset;
    auto push_pairs = [&](uint32_t t) {
        for (uint32_t i = 0; i < t; ++i) {
            if (G[i].lt().comp != G[t].lt().comp) continue;
            Monomial l = G[i].lt().m.lcm(G[t].lt().m);
            uint64_t s = std::max(sug[i] + (l / G[i].lt().m).deg(),
                                  sug[t] + (l / G[t].lt().m).deg());
            pending.push_back({i, t, l, l.deg(), s});
            pset.insert({i, t});
        }
    };
    for (uint32_t t = 1; t < (uint32_t)G.size(); ++t) push_pairs(t);

    auto in_pending = [&](uint32_t a, uint32_t b) {
        if (a > b) std::swap(a, b);
        return pset.count({a, b}) != 0;
    };

    while (!pending.empty()) {
        size_t best = 0;
        for (size_t k = 1; k < pending.size(); ++k) {
            const Pair& a = pending[k];
            const Pair& b = pending[best];
            uint64_t ka = opts.sugar ? a.sugar : a.deg;
            uint64_t kb = opts.sugar ? b.sugar : b.deg;
            if (ka != kb ? ka < kb
                         : (a.deg != b.deg ? a.deg < b.deg
                                           : (a.i != b.i ? a.i < b.i : a.j < b.j)))
                best = k;
        }
        Pair p = pending[best];
        pending.erase(pending.begin() + (long)best);
        pset.erase({p.i, p.j});

        const MTerm<K>& li = G[p.i].lt();
        const MTerm<K>& lj = G[p.j].lt();
        if (rank == 1 && li.m.coprime(lj.m)) continue;
        bool chained = false;
        for (uint32_t k = 0; k < (uint32_t)G.size() && !chained; ++k) {
            if (k == p.i || k == p.j) continue;
            if (G[k].lt().comp != li.comp || !G[k].lt().m.divides(p.lcm)) continue;
            if (!in_pending(p.i, k) && !in_pending(p.j, k)) chained = true;
        }
        if (chained) continue;

        if (limit > 0 && ++used > limit)
            fail(errc::resource, "S-pair limit exceeded (FLATLAB_GB_LIMIT)");
        ++gb_stats().pairs;

        Vec<K> s = G[p.i].shifted(p.lcm / li.m, li.c.inv()) -
                   G[p.j].shifted(p.lcm / lj.m, lj.c.inv());
        Vec<K> r = normal_form(s, G);
        if (r.is_zero()) continue;
        normalize_content(r);
        uint64_t rs = opts.sugar ? p.sugar : 0;
        G.push_back(std::move(r));
        sug.push_back(rs);
        push_pairs((uint32_t)G.size() - 1);
    }
    return G;
}

}  // namespace detail

// Reduced module GB: minimal, interreduced, monic, sorted descending by
// leading term. Unique for the submodule, so independent of generator order.
template <class K>
std::vector<Vec<K>> buchberger(const std::vector<Vec<K>>& gens, const GbOptions& opts = {}) {
    for (size_t i = 1; i < gens.size(); ++i) {
        require(same_ring(gens[i].ring(), gens[0].ring()), errc::mismatch,
                "generators over different rings");
        require(gens[i].rank() == gens[0].rank(), errc::mismatch,
                "generators of different ranks");
    }
    std::vector<Vec<K>> G = detail::buchberger_core<K>(gens, opts);
    if (G.empty()) return G;
    const RingPtr& rg = G[0].ring();

    // minimalize: keep only elements whose lead no kept lead divides
    std::vector<size_t> order(G.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        int c = rg->cmp_term(G[a].lt().comp, G[a].lt().m, G[b].lt().comp, G[b].lt().m);
        return c != 0 ? c < 0 : a < b;
    });
    std::vector<Vec<K>> kept;
    for (size_t idx : order) {
        bool red = false;
        for (auto& k : kept)
            if (k.lt().comp == G[idx].lt().comp && k.lt().m.divides(G[idx].lt().m)) {
                red = true;
                break;
            }
        if (!red) kept.push_back(G[idx]);
    }

    // interreduce tails to a fixpoint
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < kept.size(); ++i) {
            std::vector<Vec<K>> others;
            for (size_t j = 0; j < kept.size(); ++j)
                if (j != i) others.push_back(kept[j]);
            Vec<K> r = normal_form(kept[i], others);
            detail::normalize_content(r);
            if (r != kept[i]) {
                require(!r.is_zero(), errc::domain, "minimal GB element reduced to zero");
                kept[i] = std::move(r);
                changed = true;
            }
        }
    }
    for (auto& g : kept) detail::make_monic(g);
    std::sort(kept.begin(), kept.end(), [&](const Vec<K>& a, const Vec<K>& b) {
        return rg->cmp_term(a.lt().comp, a.lt().m, b.lt().comp, b.lt().m) > 0;
    });
    return kept;
}

template <class K>
std::vector<Poly<K>> buchberger(const std::vector<Poly<K>>& gens, const GbOptions& opts = {}) {
    if (gens.empty()) return {};
    const RingPtr& rg = gens[0].ring();
    std::vector<Vec<K>> gv;
    for (auto& g : gens) gv.push_back(Vec<K>::single(rg, 1, 0, g));
    std::vector<Vec<K>> gb = buchberger(gv, opts);
    std::vector<Poly<K>> out;
    for (auto& g : gb) out.push_back(g.component(0));
    return out;
}

template <class K>
bool in_span(const Vec<K>& f, const std::vector<Vec<K>>& gb) {
    return normal_form(f, gb).is_zero();
}
template <class K>
bool in_span(const Poly<K>& f, const std::vector<Poly<K>>& gb) {
    return normal_form(f, gb).is_zero();
}

// canonical text form, one element per line
template <class K>
std::string dump_gb(const std::vector<Vec<K>>& gb) {
    std::ostringstream os;
    for (size_t i = 0; i < gb.size(); ++i) os << i << ": " << gb[i].str() << "\n";
    return os.str();
}
template <class K>
std::string dump_gb(const std::vector<Poly<K>>& gb) {
    std::ostringstream os;
    for (size_t i = 0; i < gb.size(); ++i) os << i << ": " << gb[i].str() << "\n";
    return os.str();
}

}  // namespace flatlab

#endif
