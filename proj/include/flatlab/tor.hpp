#ifndef FLATLAB_TOR_HPP
#define FLATLAB_TOR_HPP

#include <string>
#include <vector>

#include "koszul.hpp"

namespace flatlab {

template <class K>
struct TorResult {
    int degree = 0;
    PresentedModule<K> module;  // pruned presentation
    bool is_zero = true;
    std::string method;
};

// Tor via the Koszul complex of the diagonal: form the outer product over the
// coefficient field, take Koszul homology on the differences x_i - x_i', and
// contract the primed copy onto the unprimed one.
template <class K>
TorResult<K> tor_diagonal(const PresentedModule<K>& M, const PresentedModule<K>& N, int j) {
    const AffineAlgebra<K>& A = M.algebra();
    const AffineAlgebra<K>& B = N.algebra();
    require(A.tower() == B.tower(), errc::mismatch, "Tor arguments share a base");
    const size_t m = A.tower().dim();
    ProductAlgebra<K> prod = algebra_tensor_base(A, B);
    const AffineAlgebra<K>& D = prod.C;
    TorResult<K> out;
    out.degree = j;
    out.method = "diagonal";
    if (j < 0 || j > (int)m) {
        out.module = PresentedModule<K>::free(D, 0);
        return out;
    }
    PresentedModule<K> P = tensor_over_field(M, N);
    const AffineAlgebra<K>& C = P.algebra();
    const RingPtr& camb = C.ambient();
    const FieldCtx<K>& cx = C.ctx();
    std::vector<Poly<K>> diag;
    for (size_t i = 0; i < m; ++i)
        diag.push_back(Poly<K>::variable(camb, i, cx.one()) -
                       Poly<K>::variable(camb, m + i, cx.one()));
    HomologyResult<K> H = KoszulComplex<K>(diag, P).homology(j);
    // contraction x' -> x identifies the two base copies
    std::vector<size_t> vmap(camb->nvars());
    for (size_t i = 0; i < m; ++i) {
        vmap[i] = i;
        vmap[m + i] = i;
    }
    for (size_t k = 2 * m; k < camb->nvars(); ++k) vmap[k] = k - m;
    std::vector<Vec<K>> rels;
    for (auto& r : H.module.relations()) rels.push_back(r.mapped(D.ambient(), vmap));
    PresentedModule<K> T(D, H.module.ngens(), std::move(rels));
    PruneResult<K> pr = prune(T);
    out.module = std::move(pr.module);
    out.is_zero = out.module.is_zero();
    return out;
}

// Free resolution of a base module by iterated syzygies; every matrix is the
// reduced basis of the syzygies of the previous one, so the complex is exact
// by construction.
template <class K>
std::vector<FreeMap<K>> base_resolution(const PresentedModule<K>& M, size_t cap) {
    require(M.algebra().is_base_witness(), errc::precondition,
            "resolution requires a module presented over the base ring");
    std::vector<FreeMap<K>> mats;
    std::vector<Vec<K>> G = M.gb();
    uint32_t prev = M.ngens();
    while (!G.empty()) {
        require(mats.size() < cap, errc::resource, "resolution exceeded the length cap");
        FreeMap<K> d;
        d.src = (uint32_t)G.size();
        d.dst = prev;
        d.cols = G;
        mats.push_back(std::move(d));
        prev = (uint32_t)G.size();
        Submodule<K> syz = syzygies(G);
        if (syz.gens().empty()) break;
        G = buchberger(syz.gens());
    }
    return mats;
}

// Tor via a free resolution of the left argument over the base ring, tensored
// with the right argument.
template <class K>
TorResult<K> tor_resolution(const PresentedModule<K>& M, const PresentedModule<K>& N, int j) {
    const AffineAlgebra<K>& A = M.algebra();
    const AffineAlgebra<K>& B = N.algebra();
    require(A.tower() == B.tower(), errc::mismatch, "Tor arguments share a base");
    const size_t m = A.tower().dim();
    TorResult<K> out;
    out.degree = j;
    out.method = "resolution";
    std::vector<FreeMap<K>> mats = base_resolution(M, m + 4);
    const size_t len = mats.size();
    if (j < 0 || (size_t)j > len) {
        out.module = PresentedModule<K>::free(B, 0);
        return out;
    }
    const RingPtr& bamb = B.ambient();
    auto moved = [&](const FreeMap<K>& f) {
        FreeMap<K> g;
        g.src = f.src;
        g.dst = f.dst;
        for (auto& c : f.cols) g.cols.push_back(c.mapped(bamb));
        return g;
    };
    FreeMap<K> Dj, Dj1;
    if (j == 0) {
        Dj.src = M.ngens();
        Dj.dst = 0;
    } else {
        Dj = moved(mats[(size_t)j - 1]);
    }
    if ((size_t)j == len) {
        Dj1.src = 0;
        Dj1.dst = Dj.src;
    } else {
        Dj1 = moved(mats[(size_t)j]);
    }
    PresentedModule<K> H = subquotient_homology(B, Dj, Dj1, N);
    PruneResult<K> pr = prune(H);
    out.module = std::move(pr.module);
    out.is_zero = out.module.is_zero();
    return out;
}

// Presentation-independent comparison: literal canonical equality, or failing
// that, equality of every Fitting ideal.
template <class K>
bool modules_agree(const PresentedModule<K>& X, const PresentedModule<K>& Y) {
    if (!(X.algebra() == Y.algebra())) return false;
    if (X.is_zero() || Y.is_zero()) return X.is_zero() && Y.is_zero();
    if (X.ngens() == Y.ngens() && X.gb() == Y.gb()) return true;
    long gmax = (long)std::max(X.ngens(), Y.ngens());
    for (long r = 0; r <= gmax; ++r)
        if (!(fitting_ideal(X, r) == fitting_ideal(Y, r))) return false;
    return true;
}

}  // namespace flatlab

#endif
