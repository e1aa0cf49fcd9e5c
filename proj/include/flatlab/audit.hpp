#ifndef FLATLAB_AUDIT_HPP
#define FLATLAB_AUDIT_HPP

#include <string>
#include <vector>

#include "depth.hpp"
#include "flatness.hpp"
#include "oracle.hpp"
#include "tor.hpp"

namespace flatlab {

struct CheckLine {
    std::string label;
    bool ok = false;
};

// One audited statement on one instance: hypotheses gate the conclusions,
// and an instance that misses a hypothesis passes vacuously.
struct AuditReport {
    std::string tag;
    std::string instance;
    std::vector<CheckLine> hypotheses;
    std::vector<CheckLine> conclusions;
    bool applicable = false;
    bool pass = false;

    void finish() {
        applicable = true;
        for (auto& h : hypotheses)
            if (!h.ok) applicable = false;
        pass = true;
        if (applicable)
            for (auto& c : conclusions)
                if (!c.ok) pass = false;
    }
};

// Once some Tor vanishes in a positive degree, everything above it vanishes.
template <class K>
AuditReport audit_rigidity(const PresentedModule<K>& M, const PresentedModule<K>& N,
                           const std::string& instance) {
    AuditReport r;
    r.tag = "rigidity";
    r.instance = instance;
    const int m = (int)M.algebra().tower().dim();
    std::vector<bool> zero;
    for (int j = 1; j <= m + 1; ++j) zero.push_back(tor_diagonal(M, N, j).is_zero);
    int first = -1;
    for (int j = 1; j <= m; ++j)
        if (zero[(size_t)j - 1]) {
            first = j;
            break;
        }
    r.hypotheses.push_back(
        {"some Tor vanishes in positive degree at most " + std::to_string(m), first > 0});
    if (first > 0)
        for (int j = first + 1; j <= m + 1; ++j)
            r.conclusions.push_back(
                {"Tor_" + std::to_string(j) + " vanishes", zero[(size_t)j - 1]});
    r.finish();
    return r;
}

// Positive-degree Tor over a domain is torsion, and stripping torsion from
// the product is idempotent.
template <class K>
AuditReport audit_torsion_tor(const PresentedModule<K>& M, const PresentedModule<K>& N,
                              const std::string& instance) {
    AuditReport r;
    r.tag = "torsion-tor";
    r.instance = instance;
    const int m = (int)M.algebra().tower().dim();
    PresentedModule<K> P = tensor_over_base(M, N);
    bool tf = is_torsion_free(P);
    r.hypotheses.push_back({"the product is torsion-free", tf});
    if (tf) {
        for (int j = 1; j <= m; ++j)
            r.conclusions.push_back(
                {"Tor_" + std::to_string(j) + " vanishes", tor_diagonal(M, N, j).is_zero});
        PresentedModule<K> TM = presented_torsion(M);
        PresentedModule<K> TN = presented_torsion(N);
        for (int j = 0; j <= m; ++j) {
            r.conclusions.push_back({"Tor_" + std::to_string(j) +
                                         " against the left torsion part vanishes",
                                     tor_diagonal(TM, N, j).is_zero});
            r.conclusions.push_back({"Tor_" + std::to_string(j) +
                                         " against the right torsion part vanishes",
                                     tor_diagonal(M, TN, j).is_zero});
        }
        PresentedModule<K> Q = tensor_over_base(torsion_quotient(M), torsion_quotient(N));
        r.conclusions.push_back({"the product equals the product of the torsion quotients",
                                 P.relation_submodule() == Q.relation_submodule()});
    }
    r.finish();
    return r;
}

// A torsion-free d-th power forces torsion-free lower powers.
template <class K>
AuditReport audit_power_descent(const PresentedModule<K>& M, int d,
                                const std::string& instance) {
    require(d >= 1, errc::precondition, "descent needs a power of at least one");
    AuditReport r;
    r.tag = "descent";
    r.instance = instance;
    r.hypotheses.push_back({"power " + std::to_string(d) + " is torsion-free",
                            is_torsion_free(tensor_power(M, d))});
    if (r.hypotheses[0].ok)
        for (int n = d - 1; n >= 1; --n)
            r.conclusions.push_back({"power " + std::to_string(n) + " is torsion-free",
                                     is_torsion_free(tensor_power(M, n))});
    r.finish();
    return r;
}

// For a nonzero module finite over the base, codepth complements depth.
template <class K>
AuditReport audit_codepth_duality(const PresentedModule<K>& M, const std::string& instance) {
    AuditReport r;
    r.tag = "codepth";
    r.instance = instance;
    const long m = (long)M.algebra().tower().dim();
    bool base = M.algebra().is_base_witness();
    r.hypotheses.push_back({"the module is presented over the base ring", base});
    r.hypotheses.push_back({"the module is nonzero", !M.is_zero()});
    if (base && !M.is_zero()) {
        ExtInt cd = codepth_over_base(M);
        ExtInt dp = depth_at_irrelevant(M);
        r.hypotheses.push_back({"codepth is finite", cd.finite()});
        r.hypotheses.push_back({"depth at the irrelevant ideal is finite", dp.finite()});
        if (cd.finite() && dp.finite())
            r.conclusions.push_back(
                {"codepth + depth equals the base dimension", cd + dp == ExtInt::of(m)});
    }
    r.finish();
    return r;
}

// Codepth adds over a Tor-independent pair.
template <class K>
AuditReport audit_codepth_additivity(const PresentedModule<K>& M, const PresentedModule<K>& N,
                                     const std::string& instance) {
    AuditReport r;
    r.tag = "codepth";
    r.instance = instance;
    const int m = (int)M.algebra().tower().dim();
    bool indep = true;
    for (int j = 1; j <= m; ++j)
        if (!tor_diagonal(M, N, j).is_zero) indep = false;
    r.hypotheses.push_back({"the pair is Tor-independent", indep});
    r.hypotheses.push_back({"both modules are nonzero", !M.is_zero() && !N.is_zero()});
    if (indep) {
        ExtInt sum = codepth_over_base(M) + codepth_over_base(N);
        ExtInt prod = codepth_over_base(tensor_over_base(M, N));
        r.conclusions.push_back({"codepth of the product is the sum", prod == sum});
    }
    r.finish();
    return r;
}

// The pair route and the general route give the same verdict, and the
// Fitting oracle concurs where it applies.
template <class K>
AuditReport audit_dim2(const PresentedModule<K>& M, const std::string& instance) {
    AuditReport r;
    r.tag = "dim2";
    r.instance = instance;
    const int m = (int)M.algebra().tower().dim();
    r.hypotheses.push_back({"base dimension is at most two", m <= 2});
    if (m <= 2) {
        bool pair = dim2_criterion(M).flat;
        bool full = main_criterion(M, m < 2 ? 2 : m).flat;
        r.conclusions.push_back({"pair verdict matches the general verdict", pair == full});
        if (is_module_finite(M))
            r.conclusions.push_back(
                {"Fitting oracle concurs", fitting_oracle(M).flat == pair});
    }
    r.finish();
    return r;
}

// Nonvanishing degrees of two-element Koszul homology form an interval
// anchored at zero, and finite-length homology has depth zero.
template <class K>
AuditReport audit_koszul2(const PresentedModule<K>& M, const Poly<K>& f, const Poly<K>& g,
                          const std::string& instance) {
    AuditReport r;
    r.tag = "koszul2";
    r.instance = instance;
    KoszulComplex<K> kc({f, g}, M);
    auto h0 = kc.homology(0);
    auto h1 = kc.homology(1);
    auto h2 = kc.homology(2);
    r.hypotheses.push_back({"the pair acts properly (H_0 nonzero)", !h0.is_zero});
    if (!h0.is_zero) {
        r.conclusions.push_back(
            {"H_2 nonzero forces H_1 nonzero", h2.is_zero || !h1.is_zero});
        if (!h1.is_zero && is_finite_length(h1.module))
            r.conclusions.push_back({"finite-length H_1 has depth zero",
                                     depth_at_irrelevant(h1.module) == ExtInt::of(0)});
    }
    r.finish();
    return r;
}

// ---- associated-point style summary ----

// Over a polynomial domain the only associated point of the base is generic,
// so the support condition on T^d collapses to torsion-freeness.
struct AssPointsReport {
    int d = 0;
    bool holds = false;
    std::string note;
    std::string witness_annihilator;  // certified multiplier when the condition fails
};

template <class K>
AssPointsReport ass_points_report(const PresentedModule<K>& M, int d) {
    require(d >= 1, errc::precondition, "the power must be at least one");
    AssPointsReport r;
    r.d = d;
    r.note = "base is a domain: the associated-point condition equals torsion-freeness";
    TorsionInfo<K> ti = torsion_submodule(tensor_power(M, d));
    r.holds = ti.torsion_free;
    if (!ti.torsion_free) r.witness_annihilator = ti.h.str();
    return r;
}

}  // namespace flatlab

#endif
