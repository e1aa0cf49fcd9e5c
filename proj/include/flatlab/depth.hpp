#ifndef FLATLAB_DEPTH_HPP
#define FLATLAB_DEPTH_HPP

#include <string>

#include "koszul.hpp"

namespace flatlab {

// Integer extended by the two infinities; the only arithmetic needed is
// addition where a single infinity dominates.
struct ExtInt {
    enum class Kind { finite, plus_inf, minus_inf };
    Kind kind = Kind::finite;
    long v = 0;

    static ExtInt of(long x) { return {Kind::finite, x}; }
    static ExtInt pinf() { return {Kind::plus_inf, 0}; }
    static ExtInt minf() { return {Kind::minus_inf, 0}; }

    bool finite() const { return kind == Kind::finite; }
    bool operator==(const ExtInt& o) const {
        return kind == o.kind && (kind != Kind::finite || v == o.v);
    }
    ExtInt operator+(const ExtInt& o) const {
        if (kind == Kind::finite && o.kind == Kind::finite) return of(v + o.v);
        if (kind == Kind::finite) return o;
        if (o.kind == Kind::finite) return *this;
        require(kind == o.kind, errc::domain, "adding opposite infinities");
        return *this;
    }
    std::string str() const {
        if (kind == Kind::plus_inf) return "inf";
        if (kind == Kind::minus_inf) return "-inf";
        return std::to_string(v);
    }
};

namespace detail {

template <class K>
std::vector<Poly<K>> variable_sequence(const FieldCtx<K>& cx, const RingPtr& rg, size_t lo,
                                       size_t hi) {
    std::vector<Poly<K>> seq;
    for (size_t i = lo; i < hi; ++i) seq.push_back(Poly<K>::variable(rg, i, cx.one()));
    return seq;
}

// largest i with nonvanishing Koszul homology, or none
template <class K>
ExtInt top_nonvanishing(const std::vector<Poly<K>>& seq, const PresentedModule<K>& M) {
    KoszulComplex<K> kc(seq, M);
    for (int i = (int)seq.size(); i >= 0; --i)
        if (!kc.homology(i).is_zero) return ExtInt::of(i);
    return ExtInt::minf();
}

}  // namespace detail

// Depth measured on the variable sequence of the full ambient ring; the
// value is +inf exactly when every Koszul homology vanishes, which happens
// when the variables generate the unit ideal on the module (e.g. M = 0 or
// M supported away from the origin).
template <class K>
ExtInt depth_at_irrelevant(const PresentedModule<K>& M) {
    const RingPtr& amb = M.algebra().ambient();
    auto seq = detail::variable_sequence<K>(M.algebra().ctx(), amb, 0, amb->vars.size());
    ExtInt top = detail::top_nonvanishing(seq, M);
    if (!top.finite()) return ExtInt::pinf();
    return ExtInt::of((long)seq.size() - top.v);
}

// Largest degree with nonvanishing Koszul homology on the base variables
// alone; -inf when everything vanishes.
template <class K>
ExtInt codepth_over_base(const PresentedModule<K>& M) {
    const AffineAlgebra<K>& alg = M.algebra();
    auto seq = detail::variable_sequence<K>(alg.ctx(), alg.ambient(), 0, alg.n_base());
    return detail::top_nonvanishing(seq, M);
}

// Finite length over the ambient polynomial ring: saturating the relation
// module at the ideal of all variables must reach the whole free module.
template <class K>
bool is_finite_length(const PresentedModule<K>& M) {
    const AffineAlgebra<K>& alg = M.algebra();
    const RingPtr& amb = alg.ambient();
    if (M.ngens() == 0) return true;
    Ideal<K> irr(amb, detail::variable_sequence<K>(M.algebra().ctx(), amb, 0, amb->vars.size()));
    Saturation<K> sat = saturate_by_ideal(alg.ctx(), M.relation_submodule(), irr);
    return sat.module.is_full(alg.ctx());
}

}  // namespace flatlab

#endif
