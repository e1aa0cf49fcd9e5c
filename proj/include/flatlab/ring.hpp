#ifndef FLATLAB_RING_HPP
#define FLATLAB_RING_HPP

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "monomial.hpp"

namespace flatlab {

// Module term convention: with `pot` a lower component index dominates, so
// e_0 > e_1 > ...; ties fall back to the monomial order. `top` is the reverse
// nesting (monomial first, then component).
enum class ModConv { pot, top };

struct Ring;
using RingPtr = std::shared_ptr<const Ring>;

// Variable list plus term order. Immutable; shared by reference everywhere.
struct Ring {
    std::vector<std::string> vars;
    Order ord;
    ModConv conv = ModConv::pot;

    static RingPtr make(std::vector<std::string> vars, Order ord = Order::grevlex(),
                        ModConv conv = ModConv::pot) {
        for (size_t i = 0; i < vars.size(); ++i)
            for (size_t j = i + 1; j < vars.size(); ++j)
                require(vars[i] != vars[j], errc::domain, "duplicate variable " + vars[i]);
        auto r = std::make_shared<Ring>();
        r->vars = std::move(vars);
        r->ord = ord;
        r->conv = conv;
        return r;
    }

    size_t nvars() const { return vars.size(); }

    int var_index(const std::string& name) const {
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == name) return (int)i;
        return -1;
    }

    int cmp(const Monomial& a, const Monomial& b) const { return ord.cmp(a, b); }

    // order on module terms (component, monomial)
    int cmp_term(uint32_t ca, const Monomial& ma, uint32_t cb, const Monomial& mb) const {
        if (conv == ModConv::pot) {
            if (ca != cb) return ca < cb ? 1 : -1;
            return cmp(ma, mb);
        }
        if (int c = cmp(ma, mb)) return c;
        if (ca != cb) return ca < cb ? 1 : -1;
        return 0;
    }

    bool same(const Ring& o) const { return vars == o.vars && ord == o.ord && conv == o.conv; }
};

inline bool same_ring(const RingPtr& a, const RingPtr& b) {
    return a == b || (a && b && a->same(*b));
}

// Same variables under a different order (canonical-form comparisons across
// order choices go through this).
inline RingPtr with_order(const RingPtr& r, Order ord) {
    return Ring::make(r->vars, ord, r->conv);
}

// Map source variable indices into a target ring; every source variable must
// resolve. Used to transport exponents between rings.
inline std::vector<size_t> var_map(const Ring& src, const Ring& dst) {
    std::vector<size_t> m(src.nvars());
    for (size_t i = 0; i < src.nvars(); ++i) {
        int j = dst.var_index(src.vars[i]);
        require(j >= 0, errc::mismatch, "variable " + src.vars[i] + " missing in target ring");
        m[i] = (size_t)j;
    }
    return m;
}

inline Monomial map_monomial(const Monomial& m, const std::vector<size_t>& map, size_t dst_nvars) {
    Monomial r(dst_nvars);
    for (size_t i = 0; i < m.e.size(); ++i)
        if (m.e[i]) r.e[map[i]] += m.e[i];
    return r;
}

}  // namespace flatlab

#endif
