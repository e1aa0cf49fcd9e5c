#ifndef FLATLAB_FLATNESS_HPP
#define FLATLAB_FLATNESS_HPP

#include <string>

#include "torsion.hpp"

namespace flatlab {

template <class K>
struct FlatnessReport {
    bool flat = false;
    std::string method;
    int d = 0;  // tensor power inspected
    std::string witness_element;      // surviving torsion class, when not flat
    std::string witness_annihilator;  // base element killing it
    std::string witness_h;            // certified clearing multiplier, when flat
    GbStats stats{};
};

namespace detail {

// decide from the torsion of a tensor power, revalidating the witness by
// direct normal forms
template <class K>
FlatnessReport<K> power_verdict(const PresentedModule<K>& T, int d, const std::string& method) {
    TorsionInfo<K> ti = torsion_submodule(T);
    FlatnessReport<K> rep;
    rep.method = method;
    rep.d = d;
    if (ti.torsion_free) {
        for (auto& g : ti.gens)
            require(T.nf(g).is_zero(), errc::domain, "clean verdict failed revalidation");
        rep.flat = true;
        rep.witness_h = ti.h.str();
    } else {
        Vec<K> w;
        for (auto& g : ti.gens) {
            Vec<K> r = T.nf(g);
            if (!r.is_zero()) {
                w = r;
                break;
            }
        }
        require(!w.is_zero(), errc::domain, "torsion verdict without a surviving class");
        Poly<K> u = ti.h;
        for (auto& f : ti.factors)
            if (T.nf(w.scaled(f)).is_zero()) {
                u = f;
                break;
            }
        require(T.nf(w.scaled(u)).is_zero(), errc::domain, "annihilator failed revalidation");
        rep.flat = false;
        rep.witness_element = w.str();
        rep.witness_annihilator = u.str();
    }
    rep.stats = gb_stats();
    return rep;
}

}  // namespace detail

// Flatness over the base through torsion in the d-th tensor power; d must be
// at least the base dimension for the verdict to be decisive.
template <class K>
FlatnessReport<K> main_criterion(const PresentedModule<K>& M, int d) {
    const size_t m = M.algebra().tower().dim();
    require(d >= (int)m, errc::precondition, "tensor power below the base dimension");
    gb_stats_reset();
    PresentedModule<K> T = tensor_power(M, (uint32_t)d);
    return detail::power_verdict(T, d, "tensor-torsion");
}

// Over a base of dimension at most two, the square alone decides.
template <class K>
FlatnessReport<K> dim2_criterion(const PresentedModule<K>& M) {
    const size_t m = M.algebra().tower().dim();
    require(m <= 2, errc::precondition, "pair criterion needs base dimension at most two");
    gb_stats_reset();
    PresentedModule<K> T = tensor_power(M, 2);
    return detail::power_verdict(T, 2, "pair-torsion");
}

}  // namespace flatlab

#endif
