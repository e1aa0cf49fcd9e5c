#ifndef FLATLAB_KOSZUL_HPP
#define FLATLAB_KOSZUL_HPP

#include <vector>

#include "pmodule.hpp"

namespace flatlab {

// Matrix over the ambient ring, stored by columns.
template <class K>
struct FreeMap {
    uint32_t src = 0, dst = 0;
    std::vector<Vec<K>> cols;  // size src, each of rank dst
};

template <class K>
Vec<K> apply_map(const FreeMap<K>& f, const RingPtr& rg, const Vec<K>& v) {
    Vec<K> acc = Vec<K>::zero(rg, f.dst);
    auto ps = v.to_polys();
    for (uint32_t i = 0; i < f.src; ++i) acc += f.cols[i].scaled(ps[i]);
    return acc;
}

namespace detail {

inline size_t subset_index(const std::vector<std::vector<size_t>>& list,
                           const std::vector<size_t>& s) {
    for (size_t k = 0; k < list.size(); ++k)
        if (list[k] == s) return k;
    fail(errc::domain, "subset not found");
}

}  // namespace detail

// Homology of  A^{r_{j+1}} --Dj1--> A^{r_j} --Dj--> A^{r_{j-1}}  with
// coefficients in N: generators are the kernel generators of Dj tensor N,
// relations come from N's relations on each copy plus the image of Dj1.
template <class K>
PresentedModule<K> subquotient_homology(const AffineAlgebra<K>& alg, const FreeMap<K>& Dj,
                                        const FreeMap<K>& Dj1, const PresentedModule<K>& N) {
    const RingPtr& amb = alg.ambient();
    const FieldCtx<K>& cx = alg.ctx();
    const uint32_t g = N.ngens();
    const uint32_t big = Dj.src * g;
    if (big == 0) return PresentedModule<K>::free(alg, 0);

    auto expand = [&](const FreeMap<K>& f) {
        // tensor with the identity of N's generators: copy c of source slot i
        // lands in copy c of each destination slot
        std::vector<Vec<K>> cols;
        cols.reserve((size_t)f.src * g);
        for (uint32_t i = 0; i < f.src; ++i)
            for (uint32_t c = 0; c < g; ++c)
                cols.push_back(f.cols[i].retagged(f.dst * g,
                                                  [&](uint32_t k) { return k * g + c; }));
        return cols;
    };
    auto coeff_rels = [&](uint32_t copies) {
        std::vector<Vec<K>> rels;
        for (uint32_t k = 0; k < copies; ++k)
            for (auto& r : N.lifted())
                rels.push_back(r.retagged(copies * g, [&](uint32_t c) { return k * g + c; }));
        return rels;
    };

    // kernel of Dj x 1_N inside (A^{r_j} x N)
    std::vector<Vec<K>> zgens;
    if (Dj.dst == 0) {
        for (uint32_t i = 0; i < big; ++i) zgens.push_back(Vec<K>::unit(amb, big, i, cx.one()));
    } else {
        Submodule<K> target(amb, Dj.dst * g, coeff_rels(Dj.dst));
        Submodule<K> ker = kernel_of_map(cx, expand(Dj), target);
        zgens = ker.gens();
    }
    if (zgens.empty()) return PresentedModule<K>::free(alg, 0);

    // relations: preimages of N-relations and boundary columns
    std::vector<Vec<K>> target_gens = coeff_rels(Dj.src);
    if (Dj1.src > 0)
        for (auto& c : expand(Dj1)) target_gens.push_back(c);
    Submodule<K> target(amb, big, std::move(target_gens));
    Submodule<K> rel = kernel_of_map(cx, zgens, target);
    return PresentedModule<K>(alg, (uint32_t)zgens.size(), rel.gens());
}

template <class K>
struct HomologyResult {
    int degree = 0;
    PresentedModule<K> module;  // pruned presentation
    bool is_zero = true;
};

// Koszul complex on a polynomial sequence with coefficients in M; the
// differentials satisfy d d = 0 by construction and this is asserted.
template <class K>
class KoszulComplex {
public:
    KoszulComplex(std::vector<Poly<K>> seq, PresentedModule<K> coeff)
        : seq_(std::move(seq)), coeff_(std::move(coeff)) {
        require(!seq_.empty(), errc::arity, "Koszul complex needs a nonempty sequence");
        const RingPtr& amb = coeff_.algebra().ambient();
        for (auto& f : seq_)
            require(same_ring(f.ring(), amb), errc::mismatch,
                    "Koszul sequence over the wrong ring");
        const size_t e = seq_.size();
        levels_.reserve(e + 1);
        for (size_t i = 0; i <= e; ++i) levels_.push_back(detail::subsets_of_size(e, i));
        for (size_t i = 1; i <= e; ++i) {
            FreeMap<K> d;
            d.src = (uint32_t)levels_[i].size();
            d.dst = (uint32_t)levels_[i - 1].size();
            for (auto& S : levels_[i]) {
                Vec<K> col = Vec<K>::zero(amb, d.dst);
                for (size_t l = 0; l < S.size(); ++l) {
                    std::vector<size_t> T = S;
                    T.erase(T.begin() + (long)l);
                    uint32_t idx = (uint32_t)detail::subset_index(levels_[i - 1], T);
                    Poly<K> entry = seq_[S[l]];
                    if (l % 2) entry = -entry;
                    col += Vec<K>::single(amb, d.dst, idx, entry);
                }
                d.cols.push_back(std::move(col));
            }
            diff_.push_back(std::move(d));
        }
        // boundary squared vanishes identically
        for (size_t i = 1; i + 1 <= e; ++i)
            for (auto& c : diff_[i].cols)
                require(apply_map(diff_[i - 1], amb, c).is_zero(), errc::domain,
                        "Koszul boundary fails d d = 0");
    }

    size_t length() const { return seq_.size(); }
    const FreeMap<K>& differential(size_t i) const { return diff_.at(i - 1); }

    HomologyResult<K> homology(int j) const {
        const AffineAlgebra<K>& alg = coeff_.algebra();
        const size_t e = seq_.size();
        HomologyResult<K> out;
        out.degree = j;
        if (j < 0 || j > (int)e) {
            out.module = PresentedModule<K>::free(alg, 0);
            out.is_zero = true;
            return out;
        }
        FreeMap<K> Dj, Dj1;
        if (j == 0) {
            Dj.src = 1;
            Dj.dst = 0;
        } else {
            Dj = diff_[(size_t)j - 1];
        }
        if (j == (int)e) {
            Dj1.src = 0;
            Dj1.dst = Dj.src;
        } else {
            Dj1 = diff_[(size_t)j];
        }
        PresentedModule<K> H = subquotient_homology(alg, Dj, Dj1, coeff_);
        PruneResult<K> P = prune(H);
        out.module = std::move(P.module);
        out.is_zero = out.module.is_zero();
        return out;
    }

private:
    std::vector<Poly<K>> seq_;
    PresentedModule<K> coeff_;
    std::vector<std::vector<std::vector<size_t>>> levels_;
    std::vector<FreeMap<K>> diff_;
};

template <class K>
HomologyResult<K> koszul_homology(const std::vector<Poly<K>>& seq, const PresentedModule<K>& M,
                                  int j) {
    return KoszulComplex<K>(seq, M).homology(j);
}

}  // namespace flatlab

#endif
