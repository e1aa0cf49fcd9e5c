#ifndef FLATLAB_TOWER_HPP
#define FLATLAB_TOWER_HPP

#include <string>
#include <vector>

#include "expr.hpp"
#include "modops.hpp"

namespace flatlab {

// Coefficient field + smooth polynomial base k[x_1..x_m]. The base ring
// carries the globally selected term order; every ambient ring derives from
// it.
template <class K>
struct BaseTower {
    FieldDesc field;
    FieldCtx<K> ctx;
    RingPtr base;

    size_t dim() const { return base->nvars(); }

    bool operator==(const BaseTower& o) const {
        return field == o.field && same_ring(base, o.base);
    }
};

template <class K>
BaseTower<K> make_tower(const FieldCtx<K>& cx, std::vector<std::string> vars,
                        Order ord = Order::grevlex()) {
    require(!vars.empty(), errc::arity, "polynomial base needs at least one variable");
    return BaseTower<K>{cx.desc(), cx, Ring::make(std::move(vars), ord)};
}

// Finitely presented algebra A = k[x, y] / I over the base. The defining
// ideal's GB is computed on construction; a base witness is the algebra with
// no extra variables and zero ideal.
template <class K>
class AffineAlgebra {
public:
    AffineAlgebra() = default;

    static AffineAlgebra base_only(BaseTower<K> tw) {
        AffineAlgebra a;
        a.tower_ = std::move(tw);
        a.ambient_ = a.tower_.base;
        a.rel_ = Ideal<K>::zero(a.ambient_);
        a.rel_.gb();
        return a;
    }

    static AffineAlgebra make(BaseTower<K> tw, const std::vector<std::string>& yvars,
                              std::vector<Poly<K>> rel_gens) {
        AffineAlgebra a;
        a.tower_ = std::move(tw);
        std::vector<std::string> names = a.tower_.base->vars;
        for (auto& y : yvars) names.push_back(y);
        a.ambient_ = Ring::make(std::move(names), a.tower_.base->ord);
        for (auto& g : rel_gens)
            require(same_ring(g.ring(), a.ambient_), errc::mismatch,
                    "defining relation over the wrong ring");
        a.rel_ = Ideal<K>(a.ambient_, std::move(rel_gens));
        a.rel_.gb();
        return a;
    }

    const BaseTower<K>& tower() const { return tower_; }
    const FieldCtx<K>& ctx() const { return tower_.ctx; }
    const RingPtr& ambient() const { return ambient_; }
    const Ideal<K>& relations() const { return rel_; }

    size_t n_base() const { return tower_.dim(); }
    size_t n_y() const { return ambient_->nvars() - n_base(); }
    std::vector<std::string> y_vars() const {
        return {ambient_->vars.begin() + (long)n_base(), ambient_->vars.end()};
    }

    bool is_base_witness() const { return n_y() == 0 && rel_.gb().empty(); }
    bool is_unit_free() const { return !rel_.is_unit(); }  // A != 0

    Poly<K> nf(const Poly<K>& f) const { return normal_form(f, rel_.gb()); }
    Poly<K> parse(const std::string& s) const { return parse_poly(ambient_, ctx(), s); }

    bool operator==(const AffineAlgebra& o) const {
        return tower_ == o.tower_ && same_ring(ambient_, o.ambient_) && rel_ == o.rel_;
    }

private:
    BaseTower<K> tower_;
    RingPtr ambient_;
    Ideal<K> rel_;
};

// A[1/u] presented as A[z] / (z u - 1) with a fresh variable name.
template <class K>
AffineAlgebra<K> localize_by_element(const AffineAlgebra<K>& A, const Poly<K>& u) {
    require(same_ring(u.ring(), A.ambient()), errc::mismatch, "localizing element over wrong ring");
    require(!A.nf(u).is_zero(), errc::domain, "localizing at an element that is zero in the algebra");
    std::string z = "z";
    for (int k = 2; A.ambient()->var_index(z) >= 0; ++k) z = "z" + std::to_string(k);
    std::vector<std::string> ys = A.y_vars();
    ys.push_back(z);
    std::vector<std::string> names = A.tower().base->vars;
    for (auto& y : ys) names.push_back(y);
    RingPtr amb = Ring::make(names, A.tower().base->ord);
    std::vector<Poly<K>> gens;
    for (auto& g : A.relations().gens()) gens.push_back(g.mapped(amb));
    Poly<K> zu = Poly<K>::variable(amb, amb->nvars() - 1, A.ctx().one()) * u.mapped(amb) -
                 Poly<K>::constant(amb, A.ctx().one());
    gens.push_back(std::move(zu));
    return AffineAlgebra<K>::make(A.tower(), ys, std::move(gens));
}

// ---- naming for product constructions ----

inline std::string strip_tag(const std::string& s) {
    auto p = s.find('@');
    return p == std::string::npos ? s : s.substr(0, p);
}

// Concatenate the (tag-stripped) names; if the combined list repeats a name,
// re-tag every slot positionally. The rule is associative and leaves a
// one-sided product with a base witness literally unchanged.
inline std::vector<std::string> product_names(const std::vector<std::string>& a,
                                              const std::vector<std::string>& b) {
    std::vector<std::string> s;
    for (auto& n : a) s.push_back(strip_tag(n));
    for (auto& n : b) s.push_back(strip_tag(n));
    bool dup = false;
    for (size_t i = 0; i < s.size() && !dup; ++i)
        for (size_t j = i + 1; j < s.size(); ++j)
            if (s[i] == s[j]) { dup = true; break; }
    if (dup)
        for (size_t i = 0; i < s.size(); ++i) s[i] = s[i] + "@" + std::to_string(i + 1);
    return s;
}

// A x_R B as an algebra over the shared base, with the variable transport
// maps for each factor's ambient ring.
template <class K>
struct ProductAlgebra {
    AffineAlgebra<K> C;
    std::vector<size_t> from_left;
    std::vector<size_t> from_right;
};

template <class K>
ProductAlgebra<K> algebra_tensor_base(const AffineAlgebra<K>& A, const AffineAlgebra<K>& B) {
    require(A.tower() == B.tower(), errc::mismatch, "tensor factors over different bases");
    const size_t m = A.n_base(), ya = A.n_y(), yb = B.n_y();
    std::vector<std::string> ys = product_names(A.y_vars(), B.y_vars());
    std::vector<std::string> names = A.tower().base->vars;
    for (auto& y : ys) names.push_back(y);
    RingPtr amb = Ring::make(names, A.tower().base->ord);

    std::vector<size_t> mapA(m + ya), mapB(m + yb);
    for (size_t i = 0; i < m; ++i) mapA[i] = mapB[i] = i;
    for (size_t k = 0; k < ya; ++k) mapA[m + k] = m + k;
    for (size_t k = 0; k < yb; ++k) mapB[m + k] = m + ya + k;

    std::vector<Poly<K>> gens;
    for (auto& g : A.relations().gens()) gens.push_back(g.mapped(amb, mapA));
    for (auto& g : B.relations().gens()) gens.push_back(g.mapped(amb, mapB));
    return {AffineAlgebra<K>::make(A.tower(), ys, std::move(gens)), std::move(mapA),
            std::move(mapB)};
}

// A x_k B: the base doubles, the right factor's base variables become primed
// copies. The y block reuses the same naming rule as the base tensor so the
// two layouts align position by position.
template <class K>
ProductAlgebra<K> algebra_tensor_field(const AffineAlgebra<K>& A, const AffineAlgebra<K>& B) {
    require(A.tower() == B.tower(), errc::mismatch, "tensor factors over different bases");
    const size_t m = A.n_base(), ya = A.n_y(), yb = B.n_y();
    std::vector<std::string> xs = A.tower().base->vars;
    std::vector<std::string> base_vars = xs;
    for (auto& x : xs) base_vars.push_back(x + "'");
    BaseTower<K> tw = make_tower(A.ctx(), base_vars, A.tower().base->ord);

    std::vector<std::string> ys = product_names(A.y_vars(), B.y_vars());
    std::vector<std::string> names = base_vars;
    for (auto& y : ys) names.push_back(y);
    RingPtr amb = Ring::make(names, tw.base->ord);

    std::vector<size_t> mapA(m + ya), mapB(m + yb);
    for (size_t i = 0; i < m; ++i) mapA[i] = i;
    for (size_t i = 0; i < m; ++i) mapB[i] = m + i;  // primed block
    for (size_t k = 0; k < ya; ++k) mapA[m + k] = 2 * m + k;
    for (size_t k = 0; k < yb; ++k) mapB[m + k] = 2 * m + ya + k;

    std::vector<Poly<K>> gens;
    for (auto& g : A.relations().gens()) gens.push_back(g.mapped(amb, mapA));
    for (auto& g : B.relations().gens()) gens.push_back(g.mapped(amb, mapB));
    return {AffineAlgebra<K>::make(tw, ys, std::move(gens)), std::move(mapA), std::move(mapB)};
}

}  // namespace flatlab

#endif
