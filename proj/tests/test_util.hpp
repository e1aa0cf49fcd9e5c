#ifndef FLATLAB_TEST_UTIL_HPP
#define FLATLAB_TEST_UTIL_HPP

#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "flatlab/expr.hpp"
#include "flatlab/modops.hpp"

namespace tu {

using namespace flatlab;

using Q = Rational;
using PQ = Poly<Q>;
using VQ = Vec<Q>;

inline FieldCtx<Q> qctx() { return FieldCtx<Q>{}; }

inline PQ qp(const RingPtr& rg, const std::string& s) { return parse_poly(rg, qctx(), s); }

inline VQ qv(const RingPtr& rg, const std::vector<std::string>& comps) {
    std::vector<PQ> ps;
    for (auto& s : comps) ps.push_back(qp(rg, s));
    return VQ::from_polys(rg, ps);
}

inline std::vector<PQ> qps(const RingPtr& rg, const std::vector<std::string>& ss) {
    std::vector<PQ> out;
    for (auto& s : ss) out.push_back(qp(rg, s));
    return out;
}

inline Ideal<Q> qideal(const RingPtr& rg, const std::vector<std::string>& ss) {
    return Ideal<Q>(rg, qps(rg, ss));
}

// ---- independent univariate arithmetic (oracle for the GB engine) ----

inline size_t the_var(const PQ& f) {
    size_t v = 0;
    bool found = false;
    for (auto& t : f.terms())
        for (size_t i = 0; i < t.m.e.size(); ++i)
            if (t.m.e[i]) {
                if (found && v != i) throw std::runtime_error("not univariate");
                v = i;
                found = true;
            }
    return v;
}

inline std::vector<Q> ucoeffs(const PQ& f, size_t var) {
    if (f.is_zero()) return {};
    std::vector<Q> c(f.deg() + 1);
    for (auto& t : f.terms()) c[t.m.e[var]] = t.c;
    while (!c.empty() && c.back().is_zero()) c.pop_back();
    return c;
}

inline PQ from_ucoeffs(const RingPtr& rg, size_t var, const std::vector<Q>& c) {
    std::vector<Term<Q>> ts;
    for (size_t i = 0; i < c.size(); ++i)
        if (!c[i].is_zero()) ts.push_back({Monomial::var(rg->nvars(), var, (uint32_t)i), c[i]});
    return PQ::from_terms(rg, std::move(ts));
}

// classic dense division f = q g + r, deg r < deg g
inline std::pair<PQ, PQ> udivmod(const PQ& f, const PQ& g, size_t var) {
    std::vector<Q> a = ucoeffs(f, var), b = ucoeffs(g, var);
    if (b.empty()) throw std::runtime_error("division by zero");
    std::vector<Q> q(a.size() > b.size() ? a.size() - b.size() + 1 : 1);
    while (a.size() >= b.size() && !a.empty()) {
        Q c = a.back() / b.back();
        size_t shift = a.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        while (!a.empty() && a.back().is_zero()) a.pop_back();
    }
    return {from_ucoeffs(f.ring(), var, q), from_ucoeffs(f.ring(), var, a)};
}

inline PQ ugcd(PQ f, PQ g, size_t var) {
    while (!g.is_zero()) {
        PQ r = udivmod(f, g, var).second;
        f = g;
        g = r;
    }
    if (!f.is_zero()) f = f * f.terms().front().c.inv();  // monic
    return f;
}

// ---- staircase counting (oracle for finite k-dimension) ----

// number of monomials in nvars variables outside the staircase of `leads`;
// -1 when the count exceeds the cap (not finite at this scale)
inline long staircase_count(const std::vector<Monomial>& leads, size_t nvars, long cap = 200000) {
    std::vector<Monomial> frontier{Monomial(nvars)};
    std::set<std::vector<uint32_t>> seen;
    long count = 0;
    auto divisible = [&](const Monomial& m) {
        for (auto& l : leads)
            if (l.divides(m)) return true;
        return false;
    };
    while (!frontier.empty()) {
        Monomial m = frontier.back();
        frontier.pop_back();
        if (!seen.insert(m.e).second || divisible(m)) continue;
        if (++count > cap) return -1;
        for (size_t i = 0; i < nvars; ++i) {
            Monomial n = m;
            n.e[i] += 1;
            frontier.push_back(n);
        }
    }
    return count;
}

// k-dimension of A^g / N from a module GB, counting standard monomials per
// component; -1 when not finite at the cap scale
template <class K>
inline long module_k_dim(const std::vector<Vec<K>>& gb, uint32_t rank, size_t nvars,
                         long cap = 200000) {
    long total = 0;
    for (uint32_t j = 0; j < rank; ++j) {
        std::vector<Monomial> leads;
        for (auto& v : gb)
            if (v.lt().comp == j) leads.push_back(v.lt().m);
        long c = staircase_count(leads, nvars, cap);
        if (c < 0) return -1;
        total += c;
    }
    return total;
}

// ---- seeded randomness ----

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(uint64_t seed) : eng(seed) {}
    long long i(long long lo, long long hi) {
        std::uniform_int_distribution<long long> d(lo, hi);
        return d(eng);
    }
};

inline PQ random_poly(Rng& r, const RingPtr& rg, int max_deg, int terms, int coef_bound) {
    std::vector<Term<Q>> ts;
    for (int k = 0; k < terms; ++k) {
        Monomial m(rg->nvars());
        int budget = (int)r.i(0, max_deg);
        for (int d = 0; d < budget; ++d) m.e[(size_t)r.i(0, (long long)rg->nvars() - 1)] += 1;
        long long c = r.i(-coef_bound, coef_bound);
        if (c == 0) c = 1;
        ts.push_back({m, Q(c)});
    }
    return PQ::from_terms(rg, std::move(ts));
}

}  // namespace tu

#endif
