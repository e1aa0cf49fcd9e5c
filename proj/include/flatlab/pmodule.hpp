#ifndef FLATLAB_PMODULE_HPP
#define FLATLAB_PMODULE_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "tower.hpp"

namespace flatlab {

// Finitely presented module over an affine algebra: coker of a relation
// matrix A^p -> A^g, entries held as normal forms mod the defining ideal.
// The lifted relation set (module relations plus I times each unit vector)
// and its reduced GB are cached; single-task confinement as elsewhere.
template <class K>
class PresentedModule {
public:
    PresentedModule() : gens_(0) {}
    PresentedModule(AffineAlgebra<K> alg, uint32_t gens, std::vector<Vec<K>> rels)
        : alg_(std::move(alg)), gens_(gens), rel_(std::move(rels)),
          cache_(std::make_shared<Cache>()) {
        for (auto& r : rel_) {
            require(same_ring(r.ring(), alg_.ambient()), errc::mismatch,
                    "module relation over the wrong ring");
            require(r.rank() == gens_, errc::mismatch, "module relation of wrong rank");
        }
        normalize();
    }

    static PresentedModule free(AffineAlgebra<K> alg, uint32_t rank) {
        return PresentedModule(std::move(alg), rank, {});
    }
    // coker of a single column (a, b, ...) in A^g
    static PresentedModule of_columns(AffineAlgebra<K> alg, uint32_t gens,
                                      const std::vector<std::vector<std::string>>& cols) {
        std::vector<Vec<K>> rels;
        for (auto& col : cols) {
            std::vector<Poly<K>> ps;
            for (auto& s : col) ps.push_back(alg.parse(s));
            rels.push_back(Vec<K>::from_polys(alg.ambient(), ps));
        }
        return PresentedModule(std::move(alg), gens, std::move(rels));
    }
    // cyclic module A / (f_1, ..., f_r)
    static PresentedModule cyclic(AffineAlgebra<K> alg, const std::vector<std::string>& fs) {
        std::vector<Vec<K>> rels;
        for (auto& s : fs) rels.push_back(Vec<K>::single(alg.ambient(), 1, 0, alg.parse(s)));
        return PresentedModule(std::move(alg), 1, std::move(rels));
    }

    const AffineAlgebra<K>& algebra() const { return alg_; }
    uint32_t ngens() const { return gens_; }
    const std::vector<Vec<K>>& relations() const { return rel_; }

    // module relations together with I e_j for every generator
    const std::vector<Vec<K>>& lifted() const {
        if (!cache_->lifted) {
            std::vector<Vec<K>> L = rel_;
            for (auto& f : alg_.relations().gb())
                for (uint32_t j = 0; j < gens_; ++j)
                    L.push_back(Vec<K>::single(alg_.ambient(), gens_, j, f));
            cache_->lifted = std::move(L);
        }
        return *cache_->lifted;
    }
    const std::vector<Vec<K>>& gb() const {
        if (!cache_->gb) cache_->gb = buchberger(lifted());
        return *cache_->gb;
    }
    Submodule<K> relation_submodule() const {
        return Submodule<K>(alg_.ambient(), gens_, lifted());
    }

    Vec<K> nf(const Vec<K>& v) const { return normal_form(v, gb()); }

    bool is_zero() const {
        for (uint32_t j = 0; j < gens_; ++j)
            if (!nf(Vec<K>::unit(alg_.ambient(), gens_, j, alg_.ctx().one())).is_zero())
                return false;
        return true;
    }

private:
    void normalize() {
        const auto& igb = alg_.relations().gb();
        if (igb.empty()) {
            drop_zero();
            return;
        }
        std::vector<Vec<K>> lift;
        for (auto& f : igb)
            for (uint32_t j = 0; j < gens_; ++j)
                lift.push_back(Vec<K>::single(alg_.ambient(), gens_, j, f));
        for (auto& r : rel_) r = normal_form(r, lift);
        drop_zero();
    }
    void drop_zero() {
        std::vector<Vec<K>> keep;
        for (auto& r : rel_)
            if (!r.is_zero()) keep.push_back(std::move(r));
        rel_ = std::move(keep);
    }

    struct Cache {
        std::optional<std::vector<Vec<K>>> lifted;
        std::optional<std::vector<Vec<K>>> gb;
    };
    AffineAlgebra<K> alg_;
    uint32_t gens_;
    std::vector<Vec<K>> rel_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// identical algebra, same generator count, same canonical relation GB
template <class K>
bool canonically_equal(const PresentedModule<K>& M, const PresentedModule<K>& N) {
    return M.algebra() == N.algebra() && M.ngens() == N.ngens() && M.gb() == N.gb();
}

// Ann(M) = { a : a e_j lies in the relations for every j }, via the kernel of
// a -> (a e_j)_j into M^g.
template <class K>
Ideal<K> annihilator(const PresentedModule<K>& M) {
    const uint32_t g = M.ngens();
    const RingPtr& rg = M.algebra().ambient();
    if (g == 0) return Ideal<K>(rg, {Poly<K>::constant(rg, M.algebra().ctx().one())});
    std::vector<Vec<K>> target_gens;
    for (uint32_t copy = 0; copy < g; ++copy)
        for (auto& r : M.lifted())
            target_gens.push_back(
                r.retagged(g * g, [&](uint32_t c) { return copy * g + c; }));
    Submodule<K> target(rg, g * g, std::move(target_gens));
    std::vector<MTerm<K>> ts;
    for (uint32_t j = 0; j < g; ++j)
        ts.push_back({j * g + j, Monomial(rg->nvars()), M.algebra().ctx().one()});
    std::vector<Vec<K>> col{Vec<K>::from_terms(rg, g * g, std::move(ts))};
    Submodule<K> ker = kernel_of_map(M.algebra().ctx(), col, target);
    std::vector<Poly<K>> out;
    for (auto& v : ker.gb()) out.push_back(v.component(0));
    return Ideal<K>(rg, std::move(out));
}

namespace detail {

inline std::vector<std::vector<size_t>> subsets_of_size(size_t e, size_t i) {
    std::vector<std::vector<size_t>> out;
    std::vector<size_t> cur;
    // lex order by construction
    auto rec = [&](auto&& self, size_t start) -> void {
        if (cur.size() == i) {
            out.push_back(cur);
            return;
        }
        for (size_t v = start; v < e; ++v) {
            cur.push_back(v);
            self(self, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

// Laplace expansion along the first selected row; empty selection gives 1
template <class K>
Poly<K> minor_det(const FieldCtx<K>& cx, const RingPtr& rg,
                  const std::vector<std::vector<Poly<K>>>& m, const std::vector<size_t>& rows,
                  const std::vector<size_t>& cols) {
    if (rows.empty()) return Poly<K>::constant(rg, cx.one());
    Poly<K> acc = Poly<K>::zero(rg);
    std::vector<size_t> rrest(rows.begin() + 1, rows.end());
    for (size_t j = 0; j < cols.size(); ++j) {
        const Poly<K>& e = m[rows[0]][cols[j]];
        if (e.is_zero()) continue;
        std::vector<size_t> crest;
        for (size_t k = 0; k < cols.size(); ++k)
            if (k != j) crest.push_back(cols[k]);
        Poly<K> sub = minor_det(cx, rg, m, rrest, crest);
        acc = (j % 2) ? acc - e * sub : acc + e * sub;
    }
    return acc;
}

}  // namespace detail

// r-th Fitting ideal of the presentation: the (g - r)-minors of the relation
// matrix together with the defining ideal of the algebra; the whole ring once
// r >= g.
template <class K>
Ideal<K> fitting_ideal(const PresentedModule<K>& M, long r) {
    const AffineAlgebra<K>& alg = M.algebra();
    const RingPtr& amb = alg.ambient();
    const long g = (long)M.ngens();
    const long k = g - r;
    if (k <= 0) return Ideal<K>(amb, {Poly<K>::constant(amb, alg.ctx().one())});
    std::vector<Poly<K>> gens = alg.relations().gens();
    const auto& rels = M.relations();
    const long p = (long)rels.size();
    if (k <= p) {
        std::vector<std::vector<Poly<K>>> mat((size_t)g);
        for (long i = 0; i < g; ++i) mat[(size_t)i].resize((size_t)p, Poly<K>::zero(amb));
        for (long j = 0; j < p; ++j) {
            auto ps = rels[(size_t)j].to_polys();
            for (long i = 0; i < g; ++i) mat[(size_t)i][(size_t)j] = ps[(size_t)i];
        }
        auto rsel = detail::subsets_of_size((size_t)g, (size_t)k);
        auto csel = detail::subsets_of_size((size_t)p, (size_t)k);
        for (auto& rows : rsel)
            for (auto& cols : csel) {
                Poly<K> d = detail::minor_det(alg.ctx(), amb, mat, rows, cols);
                if (!d.is_zero()) gens.push_back(std::move(d));
            }
    }
    return Ideal<K>(amb, std::move(gens));
}

// supports meet iff Ann(M) + Ann(N) is proper
template <class K>
bool supports_intersect(const PresentedModule<K>& M, const PresentedModule<K>& N) {
    require(M.algebra() == N.algebra(), errc::mismatch,
            "support comparison needs a common algebra");
    Ideal<K> am = annihilator(M), an = annihilator(N);
    std::vector<Poly<K>> gens = am.gens();
    for (auto& g : an.gens()) gens.push_back(g);
    return !Ideal<K>(M.algebra().ambient(), std::move(gens)).is_unit();
}

// ---- tensor constructions ----

// M x_R N over C = A x_R B; generator (i, j) sits at slot i * gN + j.
template <class K>
PresentedModule<K> tensor_over_base(const PresentedModule<K>& M, const PresentedModule<K>& N) {
    ProductAlgebra<K> P = algebra_tensor_base(M.algebra(), N.algebra());
    const uint32_t gm = M.ngens(), gn = N.ngens();
    const RingPtr& amb = P.C.ambient();
    std::vector<Vec<K>> rels;
    for (auto& r : M.relations()) {
        Vec<K> moved = r.mapped(amb, P.from_left);
        for (uint32_t j = 0; j < gn; ++j)
            rels.push_back(moved.retagged(gm * gn, [&](uint32_t i) { return i * gn + j; }));
    }
    for (auto& s : N.relations()) {
        Vec<K> moved = s.mapped(amb, P.from_right);
        for (uint32_t i = 0; i < gm; ++i)
            rels.push_back(moved.retagged(gm * gn, [&](uint32_t j) { return i * gn + j; }));
    }
    return PresentedModule<K>(P.C, gm * gn, std::move(rels));
}

// d-fold tensor power over the base, left associated
template <class K>
PresentedModule<K> tensor_power(const PresentedModule<K>& M, int d) {
    require(d >= 1, errc::arity, "tensor power needs d >= 1");
    PresentedModule<K> acc = M;
    for (int k = 1; k < d; ++k) acc = tensor_over_base(acc, M);
    return acc;
}

// M x_k N over A x_k B (the right factor's base variables primed)
template <class K>
PresentedModule<K> tensor_over_field(const PresentedModule<K>& M, const PresentedModule<K>& N) {
    ProductAlgebra<K> P = algebra_tensor_field(M.algebra(), N.algebra());
    const uint32_t gm = M.ngens(), gn = N.ngens();
    const RingPtr& amb = P.C.ambient();
    std::vector<Vec<K>> rels;
    for (auto& r : M.relations()) {
        Vec<K> moved = r.mapped(amb, P.from_left);
        for (uint32_t j = 0; j < gn; ++j)
            rels.push_back(moved.retagged(gm * gn, [&](uint32_t i) { return i * gn + j; }));
    }
    for (auto& s : N.relations()) {
        Vec<K> moved = s.mapped(amb, P.from_right);
        for (uint32_t i = 0; i < gm; ++i)
            rels.push_back(moved.retagged(gm * gn, [&](uint32_t j) { return i * gn + j; }));
    }
    return PresentedModule<K>(P.C, gm * gn, std::move(rels));
}

// block direct sum over a common algebra
template <class K>
PresentedModule<K> direct_sum(const PresentedModule<K>& M, const PresentedModule<K>& N) {
    require(M.algebra() == N.algebra(), errc::mismatch, "direct sum needs a common algebra");
    const uint32_t gm = M.ngens(), gn = N.ngens();
    std::vector<Vec<K>> rels;
    for (auto& r : M.relations())
        rels.push_back(r.retagged(gm + gn, [](uint32_t c) { return c; }));
    for (auto& r : N.relations())
        rels.push_back(r.retagged(gm + gn, [&](uint32_t c) { return c + gm; }));
    return PresentedModule<K>(M.algebra(), gm + gn, std::move(rels));
}

// ---- prune: eliminate generators hit by constant-unit relation entries ----

template <class K>
struct PruneResult {
    PresentedModule<K> module;
    std::vector<uint32_t> kept;       // original index of each surviving generator
    std::vector<Vec<K>> gen_images;   // original generator -> element of the pruned module
};

template <class K>
PruneResult<K> prune(const PresentedModule<K>& M) {
    const AffineAlgebra<K>& alg = M.algebra();
    const RingPtr& amb = alg.ambient();
    uint32_t g = M.ngens();
    std::vector<Vec<K>> rels = M.relations();
    std::vector<uint32_t> kept(g);
    for (uint32_t j = 0; j < g; ++j) kept[j] = j;
    std::vector<Vec<K>> images;
    for (uint32_t j = 0; j < g; ++j)
        images.push_back(Vec<K>::unit(amb, g, j, alg.ctx().one()));

    // keep every relation entry a literal normal form mod I, so a constant
    // entry is literally constant and elimination zeroes its slot exactly
    auto nf_mod_ideal = [&](const Vec<K>& v, uint32_t rank) {
        const auto& igb = alg.relations().gb();
        if (igb.empty()) return v;
        std::vector<Vec<K>> lift;
        for (auto& f : igb)
            for (uint32_t j = 0; j < rank; ++j)
                lift.push_back(Vec<K>::single(amb, rank, j, f));
        return normal_form(v, lift);
    };

    for (;;) {
        size_t ri = 0;
        uint32_t cj = 0;
        K cval = alg.ctx().one();
        bool found = false;
        for (size_t r = 0; r < rels.size() && !found; ++r) {
            for (uint32_t j = 0; j < g && !found; ++j) {
                Poly<K> p = rels[r].component(j);
                if (p.is_zero() || !p.is_constant()) continue;
                ri = r;
                cj = j;
                cval = p.terms()[0].c;
                found = true;
            }
        }
        if (!found) break;

        // e_cj = -c^{-1} (rels[ri] - c e_cj); substitute everywhere, drop
        // the relation and the generator
        Vec<K> expr = (rels[ri] - Vec<K>::unit(amb, g, cj, cval)) * (-(cval.inv()));
        auto substitute = [&](const Vec<K>& v) {
            Poly<K> coef = v.component(cj);
            Vec<K> rest = v - Vec<K>::single(amb, g, cj, coef);
            return rest + expr.scaled(coef);
        };
        std::vector<Vec<K>> next;
        for (size_t r = 0; r < rels.size(); ++r) {
            if (r == ri) continue;
            next.push_back(substitute(rels[r]));
        }
        for (auto& im : images) im = substitute(im);
        // renumber components above cj down by one
        auto shrink = [&](const Vec<K>& v) {
            return v.retagged(g - 1, [&](uint32_t c) { return c > cj ? c - 1 : c; });
        };
        for (auto& r : next) r = nf_mod_ideal(shrink(r), g - 1);
        for (auto& im : images) im = shrink(im);
        kept.erase(kept.begin() + cj);
        rels = std::move(next);
        --g;
    }

    PresentedModule<K> pruned(alg, g, std::move(rels));
    // re-express images in the pruned module's normal form
    for (auto& im : images) im = pruned.nf(im);
    return {std::move(pruned), std::move(kept), std::move(images)};
}

// the prune map is an isomorphism: both directions well defined on relations
template <class K>
bool prune_is_iso(const PresentedModule<K>& M, const PruneResult<K>& P) {
    for (auto& r : M.relations()) {
        Vec<K> img = Vec<K>::zero(P.module.algebra().ambient(), P.module.ngens());
        auto cols = r.to_polys();
        for (uint32_t j = 0; j < M.ngens(); ++j) img += P.gen_images[j].scaled(cols[j]);
        if (!P.module.nf(img).is_zero()) return false;
    }
    for (auto& r : P.module.relations()) {
        Vec<K> back = Vec<K>::zero(M.algebra().ambient(), M.ngens());
        auto cols = r.to_polys();
        for (uint32_t j = 0; j < P.module.ngens(); ++j)
            back += Vec<K>::single(M.algebra().ambient(), M.ngens(), P.kept[j], cols[j]);
        if (!M.nf(back).is_zero()) return false;
    }
    return true;
}

}  // namespace flatlab

#endif
