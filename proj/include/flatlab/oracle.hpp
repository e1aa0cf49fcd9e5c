#ifndef FLATLAB_ORACLE_HPP
#define FLATLAB_ORACLE_HPP

#include <string>
#include <utility>
#include <vector>

#include "pmodule.hpp"

namespace flatlab {

// ---- Smith normal form over a univariate base ----
//
// Deliberately avoids the Groebner engine: plain long division and
// row/column elimination, so it can serve as an independent cross-check.

namespace detail {

template <class K>
std::pair<Poly<K>, Poly<K>> divmod1(const Poly<K>& f, const Poly<K>& g) {
    require(!g.is_zero(), errc::domain, "univariate division by zero");
    const RingPtr& rg = f.ring();
    Poly<K> q = Poly<K>::zero(rg), r = f;
    while (!r.is_zero() && r.deg() >= g.deg()) {
        K c = r.lc() / g.lc();
        Monomial m = r.lm() / g.lm();
        Poly<K> step = Poly<K>::monomial(rg, m, c);
        q += step;
        r -= step * g;
    }
    return {q, r};
}

}  // namespace detail

template <class K>
struct SmithResult {
    std::vector<Poly<K>> invariants;  // monic, each dividing the next
    uint32_t free_rank = 0;
    bool flat = false;  // no nonconstant invariant factor
};

// Diagonalize the relation matrix of a module over k[t] by Euclidean row and
// column operations, with the full divisibility sweep d1 | d2 | ...
template <class K>
SmithResult<K> smith_oracle(const PresentedModule<K>& M) {
    const AffineAlgebra<K>& alg = M.algebra();
    require(alg.is_base_witness() && alg.tower().dim() == 1, errc::precondition,
            "Smith form needs a module over a univariate base");
    const RingPtr& rg = alg.ambient();
    const size_t g = M.ngens(), p = M.relations().size();
    std::vector<std::vector<Poly<K>>> a(g, std::vector<Poly<K>>(p, Poly<K>::zero(rg)));
    for (size_t j = 0; j < p; ++j) {
        auto ps = M.relations()[j].to_polys();
        for (size_t i = 0; i < g; ++i) a[i][j] = ps[i];
    }
    const size_t n = std::min(g, p);
    size_t corner = 0;
    while (corner < n) {
        // minimal-degree pivot in the remaining block
        size_t bi = corner, bj = corner;
        bool have = false;
        for (size_t i = corner; i < g; ++i)
            for (size_t j = corner; j < p; ++j)
                if (!a[i][j].is_zero() && (!have || a[i][j].deg() < a[bi][bj].deg())) {
                    bi = i;
                    bj = j;
                    have = true;
                }
        if (!have) break;
        std::swap(a[corner], a[bi]);
        for (size_t i = 0; i < g; ++i) std::swap(a[i][corner], a[i][bj]);
        bool settled = true;
        for (size_t i = corner + 1; i < g; ++i) {
            if (a[i][corner].is_zero()) continue;
            auto [q, r] = detail::divmod1(a[i][corner], a[corner][corner]);
            for (size_t j = corner; j < p; ++j) a[i][j] -= q * a[corner][j];
            if (!r.is_zero()) settled = false;
        }
        for (size_t j = corner + 1; j < p; ++j) {
            if (a[corner][j].is_zero()) continue;
            auto [q, r] = detail::divmod1(a[corner][j], a[corner][corner]);
            for (size_t i = 0; i < g; ++i) a[i][j] -= q * a[i][corner];
            if (!r.is_zero()) settled = false;
        }
        if (!settled) continue;
        // pivot must divide the rest of the block
        bool divides = true;
        for (size_t i = corner + 1; i < g && divides; ++i)
            for (size_t j = corner + 1; j < p && divides; ++j)
                if (!detail::divmod1(a[i][j], a[corner][corner]).second.is_zero()) {
                    for (size_t jj = corner; jj < p; ++jj) a[corner][jj] += a[i][jj];
                    divides = false;
                }
        if (divides) ++corner;
    }
    SmithResult<K> out;
    for (size_t k = 0; k < n; ++k)
        if (!a[k][k].is_zero()) out.invariants.push_back(a[k][k] * a[k][k].lc().inv());
    out.free_rank = (uint32_t)(g - out.invariants.size());
    out.flat = true;
    for (auto& d : out.invariants)
        if (!d.is_constant()) out.flat = false;
    return out;
}

// ---- finiteness over the base and Fitting-ideal flatness ----

namespace detail {

// ring with the fiber block leading and term-over-position comparison, so a
// lead free of fiber variables forces the whole element to be
template <class K>
RingPtr fiber_leading_ring(const AffineAlgebra<K>& alg) {
    const RingPtr& amb = alg.ambient();
    const size_t nb = alg.n_base(), ny = alg.n_y();
    std::vector<std::string> names;
    for (size_t k = 0; k < ny; ++k) names.push_back(amb->vars[nb + k]);
    for (size_t i = 0; i < nb; ++i) names.push_back(amb->vars[i]);
    return Ring::make(names, Order::block(ny), ModConv::top);
}

inline bool fiber_free(const Monomial& m, size_t ny) { return m.deg(0, ny) == 0; }

}  // namespace detail

// A module over R[y]/I is finite over R exactly when, in a fiber-leading
// order, the relation basis shows a pure power of every fiber variable in
// every component.
template <class K>
bool is_module_finite(const PresentedModule<K>& M) {
    const AffineAlgebra<K>& alg = M.algebra();
    const size_t ny = alg.n_y();
    if (ny == 0 || M.ngens() == 0) return true;
    RingPtr rr = detail::fiber_leading_ring(alg);
    std::vector<Vec<K>> moved;
    for (auto& r : M.lifted()) moved.push_back(r.mapped(rr));
    std::vector<Vec<K>> gb = buchberger(moved);
    for (uint32_t j = 0; j < M.ngens(); ++j)
        for (size_t l = 0; l < ny; ++l) {
            bool found = false;
            for (auto& v : gb) {
                if (v.lt().comp != j) continue;
                const Monomial& m = v.lt().m;
                if (m.e[l] > 0 && m.deg() == m.e[l]) {
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
    return true;
}

// Presentation of a base-finite module as a module over the base ring alone:
// generators are the standard fiber monomials in each component, relations
// are the fiber-free syzygies among them.
template <class K>
PresentedModule<K> base_presentation(const PresentedModule<K>& M) {
    const AffineAlgebra<K>& alg = M.algebra();
    const FieldCtx<K>& cx = alg.ctx();
    AffineAlgebra<K> base = AffineAlgebra<K>::base_only(alg.tower());
    if (alg.is_base_witness()) return PresentedModule<K>(base, M.ngens(), M.relations());
    require(is_module_finite(M), errc::precondition, "module is not finite over the base");
    const RingPtr& amb = alg.ambient();
    const size_t nb = alg.n_base(), ny = alg.n_y();
    RingPtr rr = detail::fiber_leading_ring(alg);
    std::vector<Vec<K>> moved;
    for (auto& r : M.lifted()) moved.push_back(r.mapped(rr));
    std::vector<Vec<K>> gb = buchberger(moved);

    // per-component staircase of fiber monomials under the fiber-free leads
    std::vector<std::pair<uint32_t, Monomial>> box;  // (component, fiber part in rr indices)
    for (uint32_t j = 0; j < M.ngens(); ++j) {
        std::vector<Monomial> pure;
        std::vector<uint32_t> bound(ny, 0);
        for (auto& v : gb) {
            if (v.lt().comp != j) continue;
            const Monomial& m = v.lt().m;
            if (m.deg(ny, rr->nvars()) != 0) continue;
            pure.push_back(m);
            for (size_t l = 0; l < ny; ++l)
                if (m.e[l] > 0 && m.deg() == m.e[l] && (bound[l] == 0 || m.e[l] < bound[l]))
                    bound[l] = m.e[l];
        }
        std::vector<uint32_t> e(ny, 0);
        auto rec = [&](auto&& self, size_t l) -> void {
            if (l == ny) {
                Monomial m(rr->nvars());
                for (size_t k = 0; k < ny; ++k) m.e[k] = e[k];
                for (auto& q : pure)
                    if (q.divides(m)) return;
                box.push_back({j, m});
                return;
            }
            for (uint32_t d = 0; d < bound[l]; ++d) {
                e[l] = d;
                self(self, l + 1);
            }
            e[l] = 0;
        };
        rec(rec, 0);
    }

    // kernel of the evaluation map, computed over the original ambient ring
    std::vector<size_t> back(rr->nvars());
    for (size_t k = 0; k < ny; ++k) back[k] = nb + k;
    for (size_t i = 0; i < nb; ++i) back[ny + i] = i;
    std::vector<Vec<K>> cols;
    for (auto& [j, m] : box) {
        Monomial ma = map_monomial(m, back, amb->nvars());
        cols.push_back(Vec<K>::from_terms(amb, M.ngens(), {{j, ma, cx.one()}}));
    }
    Submodule<K> target(amb, M.ngens(), M.lifted());
    Submodule<K> ker = kernel_of_map(cx, cols, target);

    // keep the fiber-free part of a fiber-leading basis of the kernel
    std::vector<Vec<K>> kmoved;
    for (auto& v : ker.gens()) kmoved.push_back(v.mapped(rr));
    std::vector<Vec<K>> kgb = buchberger(kmoved);
    const RingPtr& bamb = base.ambient();
    std::vector<Vec<K>> rows;
    for (auto& v : kgb) {
        bool clean = true;
        for (auto& t : v.terms())
            if (!detail::fiber_free(t.m, ny)) {
                clean = false;
                break;
            }
        if (!clean) continue;
        std::vector<MTerm<K>> ts;
        for (auto& t : v.terms()) {
            Monomial m(bamb->nvars());
            for (size_t i = 0; i < nb; ++i) m.e[i] = t.m.e[ny + i];
            ts.push_back({t.comp, m, t.c});
        }
        rows.push_back(Vec<K>::from_terms(bamb, (uint32_t)box.size(), std::move(ts)));
    }
    return PresentedModule<K>(base, (uint32_t)box.size(), std::move(rows));
}

template <class K>
struct FittingVerdict {
    bool flat = false;
    long rank = -1;  // constant free rank when flat
    uint32_t base_gens = 0;
};

// Flat means locally free: some Fitting ideal is the whole ring while the
// previous one vanishes.
template <class K>
FittingVerdict<K> fitting_oracle(const PresentedModule<K>& M) {
    PresentedModule<K> P = base_presentation(M);
    FittingVerdict<K> out;
    out.base_gens = P.ngens();
    for (long r = 0; r <= (long)P.ngens(); ++r)
        if (fitting_ideal(P, r - 1).is_zero_ideal() && fitting_ideal(P, r).is_unit()) {
            out.flat = true;
            out.rank = r;
            break;
        }
    return out;
}

}  // namespace flatlab

#endif
