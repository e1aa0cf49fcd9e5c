#ifndef FLATLAB_TORSION_HPP
#define FLATLAB_TORSION_HPP

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "pmodule.hpp"

namespace flatlab {

namespace detail {

template <class K>
void normalize_content_poly(Poly<K>& p) {
    if (p.is_zero()) return;
    Vec<K> v = Vec<K>::single(p.ring(), 1, 0, p);
    normalize_content(v);
    p = v.component(0);
}

// Leading group data of a nonzero element over K(x)[y]^g: the terms sharing
// the maximal (component, y-part); their x-parts form the leading
// coefficient, a polynomial in the base variables alone.
template <class K>
struct LeadGroup {
    uint32_t comp;
    Monomial ypart;   // x-exponents zeroed
    Poly<K> lcx;      // supported in the x block
};

template <class K>
LeadGroup<K> lead_group(const Vec<K>& f, size_t ny) {
    const auto& ts = f.terms();
    LeadGroup<K> lg;
    lg.comp = ts[0].comp;
    lg.ypart = ts[0].m.without(ny, ts[0].m.nvars());
    std::vector<Term<K>> xs;
    for (auto& t : ts) {
        if (t.comp != lg.comp) break;
        Monomial yp = t.m.without(ny, t.m.nvars());
        if (yp != lg.ypart) break;
        xs.push_back({t.m.without(0, ny), t.c});
    }
    lg.lcx = Poly<K>::from_terms(f.ring(), std::move(xs));
    return lg;
}

// strip the common x-monomial factor; returns it (all-zero when trivial)
template <class K>
Monomial strip_x_content(Vec<K>& f, size_t ny) {
    const size_t n = f.ring()->nvars();
    Monomial mn = f.terms()[0].m;
    for (auto& t : f.terms())
        for (size_t i = ny; i < n; ++i) mn.e[i] = std::min(mn.e[i], t.m.e[i]);
    for (size_t i = 0; i < ny; ++i) mn.e[i] = 0;
    if (mn.is_one()) return mn;
    std::vector<MTerm<K>> ts;
    for (auto& t : f.terms()) ts.push_back({t.comp, t.m / mn, t.c});
    f = Vec<K>::from_terms(f.ring(), f.rank(), std::move(ts));
    return mn;
}

template <class K>
struct FractionGb {
    std::vector<Vec<K>> basis;       // GB over K(x)[y]^g, in the reordered ring
    std::vector<Poly<K>> denoms;     // nonconstant multipliers, canonicalized
};

// Module GB over K(x)[y] by denominator-tracked pseudo-reduction: never
// divide by an x-polynomial, instead cross-multiply and record it. Input
// lives in a ring with the y block leading and a block order split at ny.
template <class K>
FractionGb<K> fraction_field_gb(const FieldCtx<K>& cx, std::vector<Vec<K>> gens, size_t ny) {
    FractionGb<K> out;
    const long long limit = gb_pair_limit();
    long long used = 0;
    const K one = cx.one();
    std::set<std::string> seen;
    auto record = [&](const Poly<K>& p) {
        Poly<K> q = p;
        normalize_content_poly(q);
        if (q.is_zero() || q.is_constant()) return;
        if (seen.insert(q.str()).second) out.denoms.push_back(q);
    };
    auto record_monomial = [&](const RingPtr& rg, const Monomial& m) {
        if (m.is_one()) return;
        // record each variable once; powers are regained when the
        // certificate multiplier is raised
        for (size_t i = 0; i < m.e.size(); ++i)
            if (m.e[i]) record(Poly<K>::variable(rg, i, one));
    };

    std::vector<Vec<K>>& G = out.basis;
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        normalize_content(g);
        record_monomial(g.ring(), strip_x_content(g, ny));
        G.push_back(std::move(g));
    }
    if (G.empty()) return out;
    const RingPtr rg = G[0].ring();
    const uint32_t rank = G[0].rank();

    // full pseudo-reduction of f against G on leading (comp, y) groups
    auto reduce = [&](Vec<K> f) {
        for (;;) {
            if (f.is_zero()) return f;
            note_terms(f.nterms());
            LeadGroup<K> lf = lead_group(f, ny);
            bool did = false;
            for (size_t i = 0; i < G.size(); ++i) {
                LeadGroup<K> lg = lead_group(G[i], ny);
                if (lg.comp != lf.comp || !lg.ypart.divides(lf.ypart)) continue;
                record(lg.lcx);
                Monomial yd = lf.ypart / lg.ypart;
                f = f.scaled(lg.lcx) - G[i].scaled(lf.lcx.shifted(yd, one));
                if (!f.is_zero()) {
                    normalize_content(f);
                    record_monomial(rg, strip_x_content(f, ny));
                }
                did = true;
                break;
            }
            if (!did) return f;
        }
    };

    struct YPair {
        uint32_t i, j;
        Monomial lcm;
        uint32_t deg;
    };
    std::vector<YPair> pending;
    std::set<std::pair<uint32_t, uint32_t>> pset;
    auto push_pairs = [&](uint32_t t) {
        LeadGroup<K> lt = lead_group(G[t], ny);
        for (uint32_t i = 0; i < t; ++i) {
            LeadGroup<K> li = lead_group(G[i], ny);
            if (li.comp != lt.comp) continue;
            Monomial l = li.ypart.lcm(lt.ypart);
            pending.push_back({i, t, l, l.deg()});
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
            const YPair& a = pending[k];
            const YPair& b = pending[best];
            if (a.deg != b.deg ? a.deg < b.deg : (a.i != b.i ? a.i < b.i : a.j < b.j)) best = k;
        }
        YPair p = pending[best];
        pending.erase(pending.begin() + (long)best);
        pset.erase({p.i, p.j});

        LeadGroup<K> li = lead_group(G[p.i], ny);
        LeadGroup<K> lj = lead_group(G[p.j], ny);
        if (rank == 1 && li.ypart.coprime(lj.ypart)) continue;
        bool chained = false;
        for (uint32_t k = 0; k < (uint32_t)G.size() && !chained; ++k) {
            if (k == p.i || k == p.j) continue;
            LeadGroup<K> lk = lead_group(G[k], ny);
            if (lk.comp != li.comp || !lk.ypart.divides(p.lcm)) continue;
            if (!in_pending(p.i, k) && !in_pending(p.j, k)) chained = true;
        }
        if (chained) continue;

        if (limit > 0 && ++used > limit)
            fail(errc::resource, "S-pair limit exceeded (FLATLAB_GB_LIMIT)");
        ++gb_stats().pairs;

        record(li.lcx);
        record(lj.lcx);
        Vec<K> s = G[p.i].scaled(lj.lcx.shifted(p.lcm / li.ypart, one)) -
                   G[p.j].scaled(li.lcx.shifted(p.lcm / lj.ypart, one));
        Vec<K> r = reduce(std::move(s));
        if (r.is_zero()) continue;
        normalize_content(r);
        record_monomial(rg, strip_x_content(r, ny));
        G.push_back(std::move(r));
        push_pairs((uint32_t)G.size() - 1);
    }

    // minimalize on (comp, y) leads; the kept leading coefficients are the
    // denominators any later reduction can introduce
    std::vector<Vec<K>> kept;
    for (auto& g : G) {
        LeadGroup<K> lg = lead_group(g, ny);
        bool red = false;
        for (auto& k : kept) {
            LeadGroup<K> lk = lead_group(k, ny);
            if (lk.comp == lg.comp && lk.ypart.divides(lg.ypart)) { red = true; break; }
        }
        if (!red) kept.push_back(g);
    }
    for (auto& g : kept) record(lead_group(g, ny).lcx);
    out.basis = std::move(kept);
    return out;
}

}  // namespace detail

template <class K>
struct TorsionInfo {
    bool torsion_free = true;
    std::vector<Vec<K>> gens;        // reduced GB of the saturated relations
    std::vector<Poly<K>> factors;    // denominators, over the ambient ring
    Poly<K> h;                       // certified multiplier: h * gens lie in the relations
    int sat_steps = 0;
    PresentedModule<K> quotient;     // M / torsion
};

// Torsion submodule over the base: run the relation GB with the base
// variables inverted, saturate the relations by every denominator met, and
// certify a single polynomial multiplier.
template <class K>
TorsionInfo<K> torsion_submodule(const PresentedModule<K>& M) {
    const AffineAlgebra<K>& alg = M.algebra();
    const RingPtr& amb = alg.ambient();
    const FieldCtx<K>& cx = alg.ctx();
    const size_t m = alg.n_base(), ny = alg.n_y();

    TorsionInfo<K> info;
    info.h = Poly<K>::constant(amb, cx.one());
    info.quotient = M;
    if (M.lifted().empty()) return info;  // free module over a domain

    // reordered ring: y block first, then the base block, elimination order
    std::vector<std::string> names;
    for (size_t i = 0; i < ny; ++i) names.push_back(amb->vars[m + i]);
    for (size_t i = 0; i < m; ++i) names.push_back(amb->vars[i]);
    RingPtr rr = Ring::make(names, Order::block(ny), amb->conv);

    std::vector<Vec<K>> moved;
    for (auto& r : M.lifted()) moved.push_back(r.mapped(rr));
    detail::FractionGb<K> fgb = detail::fraction_field_gb(cx, std::move(moved), ny);

    for (auto& d : fgb.denoms) {
        Poly<K> p = d.mapped(amb);
        detail::normalize_content_poly(p);
        info.factors.push_back(std::move(p));
    }
    std::sort(info.factors.begin(), info.factors.end(), [](const Poly<K>& a, const Poly<K>& b) {
        if (a.deg() != b.deg()) return a.deg() < b.deg();
        return a.str() < b.str();
    });

    Submodule<K> S = M.relation_submodule();
    for (auto& f : info.factors) {
        Saturation<K> st = saturate(cx, S, f);
        S = std::move(st.module);
        info.sat_steps += st.steps;
    }
    info.gens = S.gb();

    info.torsion_free = true;
    for (auto& g : info.gens)
        if (!M.nf(g).is_zero()) { info.torsion_free = false; break; }

    if (!info.torsion_free) {
        Poly<K> hp = Poly<K>::constant(amb, cx.one());
        for (auto& f : info.factors) hp = hp * f;
        Poly<K> acc = hp;
        bool ok = false;
        for (int k = 1; k <= info.sat_steps + 1 && !ok; ++k) {
            ok = true;
            for (auto& g : info.gens)
                if (!M.nf(g.scaled(acc)).is_zero()) { ok = false; break; }
            if (ok) info.h = acc;
            else acc = acc * hp;
        }
        require(ok, errc::domain, "torsion multiplier certification failed");

        std::vector<Vec<K>> qrels = M.relations();
        for (auto& g : info.gens) qrels.push_back(g);
        info.quotient = PresentedModule<K>(alg, M.ngens(), std::move(qrels));
    }
    return info;
}

template <class K>
bool is_torsion_free(const PresentedModule<K>& M) {
    return torsion_submodule(M).torsion_free;
}

template <class K>
PresentedModule<K> torsion_quotient(const PresentedModule<K>& M) {
    return torsion_submodule(M).quotient;
}

// The torsion submodule itself, presented by its nonzero generator classes
// and the kernel of the evaluation map into M.
template <class K>
PresentedModule<K> presented_torsion(const PresentedModule<K>& M) {
    TorsionInfo<K> ti = torsion_submodule(M);
    std::vector<Vec<K>> cols;
    for (auto& g : ti.gens)
        if (!M.nf(g).is_zero()) cols.push_back(g);
    if (cols.empty()) return PresentedModule<K>(M.algebra(), 0, {});
    Submodule<K> ker = kernel_of_map(M.algebra().ctx(), cols, M.relation_submodule());
    return PresentedModule<K>(M.algebra(), (uint32_t)cols.size(), ker.gens());
}

}  // namespace flatlab

#endif
