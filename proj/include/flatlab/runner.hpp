#ifndef FLATLAB_RUNNER_HPP
#define FLATLAB_RUNNER_HPP

#include <chrono>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "audit.hpp"
#include "dsl.hpp"

namespace flatlab {

using njson = nlohmann::ordered_json;

struct RunOptions {
    Order ord = Order::grevlex();
    bool json = false;
    bool all_audits = false;
    bool timings = false;
};

struct TaskOutcome {
    std::string text;
    njson json;
    bool audit_failed = false;
};

struct RunResult {
    std::vector<TaskOutcome> outcomes;
    int exit_code = 0;
};

inline int exit_code_for(errc k) {
    switch (k) {
        case errc::parse:
        case errc::arity: return 2;
        case errc::resource: return 3;
        default: return 1;
    }
}

// Declarations materialized over a concrete coefficient field. A localize
// statement rebinds its algebra name; modules capture the binding in force
// at their declaration point.
template <class K>
struct Workspace {
    FieldCtx<K> cx;
    std::map<std::string, AffineAlgebra<K>> algebras;
    std::map<std::string, PresentedModule<K>> modules;
    std::map<std::string, bool> graded;
    std::vector<std::string> module_order;
};

template <class K>
Workspace<K> materialize(const ProblemFile& pf, const FieldCtx<K>& cx, const Order& ord) {
    Workspace<K> ws{cx, {}, {}, {}, {}};
    require(!pf.base.name.empty(), errc::parse, "problem file declares no base ring");
    BaseTower<K> tw = make_tower(cx, pf.base.vars, ord);
    ws.algebras.emplace(pf.base.name, AffineAlgebra<K>::base_only(tw));
    for (auto& ref : pf.order) {
        if (ref.kind == DeclRef::Kind::algebra) {
            const AlgebraDecl& d = pf.algebras[ref.index];
            std::vector<std::string> names = pf.base.vars;
            for (auto& y : d.yvars) names.push_back(y);
            RingPtr amb = Ring::make(names, ord);
            std::vector<Poly<K>> rels;
            for (auto& r : d.rels) rels.push_back(parse_poly(amb, cx, r));
            ws.algebras.insert_or_assign(d.name,
                                         AffineAlgebra<K>::make(tw, d.yvars, std::move(rels)));
        } else if (ref.kind == DeclRef::Kind::localize) {
            const LocalizeDecl& d = pf.localizations[ref.index];
            AffineAlgebra<K>& a = ws.algebras.at(d.algebra);
            ws.algebras.insert_or_assign(d.algebra,
                                         localize_by_element(a, a.parse(d.element)));
        } else {
            const ModuleDecl& d = pf.modules[ref.index];
            const AffineAlgebra<K>& a = ws.algebras.at(d.algebra);
            std::vector<Vec<K>> cols;
            for (auto& col : d.rels) {
                std::vector<Poly<K>> entries;
                for (auto& e : col) entries.push_back(parse_poly(a.ambient(), cx, e));
                cols.push_back(Vec<K>::from_polys(a.ambient(), entries));
            }
            ws.modules.insert_or_assign(d.name, PresentedModule<K>(a, d.gens, std::move(cols)));
            ws.graded[d.name] = d.graded;
            ws.module_order.push_back(d.name);
        }
    }
    return ws;
}

namespace detail {

inline njson base_json(const BaseDecl& base, const FieldDecl& field) {
    njson b;
    b["field"] = field.rational ? "Q" : "F " + std::to_string(field.p);
    b["vars"] = base.vars;
    return b;
}

inline njson stats_json(const GbStats& st, long long wall_ms) {
    njson s;
    s["gb_pairs"] = st.pairs;
    s["max_poly_terms"] = st.max_terms;
    s["wall_ms"] = wall_ms;
    return s;
}

template <class K>
njson certificate_json(const ProblemFile& pf, const FlatnessReport<K>& rep,
                       const std::string& verdict, const std::string& method,
                       const std::string& instance, long long wall_ms) {
    njson c;
    c["verdict"] = verdict;
    c["method"] = method;
    c["d"] = rep.d;
    c["base"] = base_json(pf.base, pf.field);
    njson w = njson::object();
    if (!rep.witness_element.empty()) w["element"] = rep.witness_element;
    if (!rep.witness_annihilator.empty()) w["annihilator"] = rep.witness_annihilator;
    if (!rep.witness_h.empty()) w["h"] = rep.witness_h;
    c["witness"] = w;
    c["stats"] = stats_json(rep.stats, wall_ms);
    c["instance"] = instance;
    return c;
}

inline njson audit_json(const AuditReport& a, const std::string& instance) {
    njson j;
    j["audit"] = a.tag;
    j["instance"] = instance;
    j["applicable"] = a.applicable;
    j["pass"] = a.pass;
    auto lines = [](const std::vector<CheckLine>& ls) {
        njson arr = njson::array();
        for (auto& l : ls) {
            njson e;
            e["check"] = l.label;
            e["ok"] = l.ok;
            arr.push_back(e);
        }
        return arr;
    };
    j["hypotheses"] = lines(a.hypotheses);
    j["conclusions"] = lines(a.conclusions);
    return j;
}

inline std::string audit_text(const AuditReport& a, const std::string& instance) {
    std::string s = instance + ": ";
    if (!a.applicable) return s + "not applicable";
    if (a.pass) return s + "pass";
    for (auto& c : a.conclusions)
        if (!c.ok) return s + "FAIL: " + c.label;
    return s + "FAIL";
}

class StopWatch {
public:
    explicit StopWatch(bool armed) : armed_(armed), t0_(std::chrono::steady_clock::now()) {}
    long long ms() const {
        if (!armed_) return 0;
        auto dt = std::chrono::steady_clock::now() - t0_;
        return std::chrono::duration_cast<std::chrono::milliseconds>(dt).count();
    }

private:
    bool armed_;
    std::chrono::steady_clock::time_point t0_;
};

}  // namespace detail

// Execute one task against a materialized workspace.
template <class K>
TaskOutcome run_task(const ProblemFile& pf, Workspace<K>& ws, const TaskDecl& t,
                     const RunOptions& opts) {
    TaskOutcome out;
    const long m = (long)pf.base.vars.size();
    auto mod = [&](size_t i) -> const PresentedModule<K>& { return ws.modules.at(t.names.at(i)); };
    auto param = [&](const std::string& key, int dflt) {
        auto it = t.params.find(key);
        return it == t.params.end() ? dflt : it->second;
    };
    detail::StopWatch sw(opts.timings);

    if (t.kind == "flat" || t.kind == "dim2") {
        FlatnessReport<K> rep = t.kind == "flat"
                                    ? main_criterion(mod(0), param("d", (int)m))
                                    : dim2_criterion(mod(0));
        std::string verdict = rep.flat ? "Flat" : "NotFlat";
        std::string method = t.kind == "flat" ? "main-criterion" : "dim2";
        out.text = t.text + ": " + verdict;
        if (rep.flat)
            out.text += "  h = " + rep.witness_h;
        else
            out.text += "  witness " + rep.witness_element + " annihilated by " +
                        rep.witness_annihilator;
        out.json = detail::certificate_json(pf, rep, verdict, method, t.text, sw.ms());
    } else if (t.kind == "oracle") {
        FlatnessReport<K> rep;
        rep.method = t.sub;
        gb_stats_reset();
        std::string extra;
        if (t.sub == "smith") {
            SmithResult<K> sr = smith_oracle(mod(0));
            rep.flat = sr.flat;
            extra = "  invariants (";
            for (size_t i = 0; i < sr.invariants.size(); ++i)
                extra += (i ? ", " : "") + sr.invariants[i].str();
            extra += ")  free rank " + std::to_string(sr.free_rank);
        } else {
            FittingVerdict<K> fv = fitting_oracle(mod(0));
            rep.flat = fv.flat;
            extra = fv.flat ? "  rank " + std::to_string(fv.rank)
                            : "  no admissible rank";
        }
        rep.stats = gb_stats();
        std::string verdict = rep.flat ? "OracleOnly-Flat" : "OracleOnly-NotFlat";
        out.text = t.text + ": " + verdict + extra;
        out.json = detail::certificate_json(pf, rep, verdict, t.sub, t.text, sw.ms());
    } else if (t.kind == "tor") {
        const PresentedModule<K>& M = mod(0);
        const PresentedModule<K>& N = mod(1);
        bool resolvable = M.algebra().is_base_witness();
        njson degrees = njson::array();
        std::string desc;
        bool agree = true;
        for (int j = 0; j <= (int)m; ++j) {
            TorResult<K> td = tor_diagonal(M, N, j);
            njson dj;
            dj["j"] = j;
            dj["zero"] = td.is_zero;
            if (resolvable) {
                TorResult<K> tr = tor_resolution(M, N, j);
                bool ok = modules_agree(td.module, tr.module);
                agree = agree && ok;
                dj["agree"] = ok;
            }
            degrees.push_back(dj);
            desc += (j ? ", " : "") + ("Tor_" + std::to_string(j)) +
                    (td.is_zero ? " zero" : " nonzero");
        }
        out.text = t.text + ": " + desc;
        if (resolvable) out.text += agree ? "; methods agree" : "; METHODS DISAGREE";
        out.audit_failed = resolvable && !agree;
        out.json["task"] = "tor";
        out.json["instance"] = t.text;
        out.json["degrees"] = degrees;
        if (resolvable) out.json["methods_agree"] = agree;
    } else if (t.kind == "torsion") {
        TorsionInfo<K> ti = torsion_submodule(mod(0));
        if (ti.torsion_free)
            out.text = t.text + ": torsion-free  h = " + ti.h.str();
        else
            out.text = t.text + ": torsion found  h = " + ti.h.str();
        out.json["task"] = "torsion";
        out.json["instance"] = t.text;
        out.json["torsion_free"] = ti.torsion_free;
        out.json["h"] = ti.h.str();
        out.json["sat_steps"] = ti.sat_steps;
        njson fs = njson::array();
        for (auto& f : ti.factors) fs.push_back(f.str());
        out.json["factors"] = fs;
    } else if (t.kind == "depth" || t.kind == "codepth") {
        ExtInt v = t.kind == "depth" ? depth_at_irrelevant(mod(0)) : codepth_over_base(mod(0));
        out.text = t.text + ": " + v.str();
        out.json["task"] = t.kind;
        out.json["instance"] = t.text;
        out.json["value"] = v.str();
    } else if (t.kind == "ass-points") {
        AssPointsReport r = ass_points_report(mod(0), param("d", (int)m));
        out.text = t.text + (r.holds ? ": condition holds" : ": condition fails");
        if (!r.holds) out.text += "  witness annihilator " + r.witness_annihilator;
        out.json["task"] = "ass-points";
        out.json["instance"] = t.text;
        out.json["d"] = r.d;
        out.json["holds"] = r.holds;
        out.json["note"] = r.note;
        if (!r.holds) out.json["witness_annihilator"] = r.witness_annihilator;
    } else if (t.kind == "audit") {
        AuditReport a;
        if (t.sub == "rigidity") a = audit_rigidity(mod(0), mod(1), t.text);
        else if (t.sub == "torsion-tor") a = audit_torsion_tor(mod(0), mod(1), t.text);
        else if (t.sub == "descent") a = audit_power_descent(mod(0), param("d", 3), t.text);
        else if (t.sub == "codepth" && t.names.size() == 2)
            a = audit_codepth_additivity(mod(0), mod(1), t.text);
        else if (t.sub == "codepth") a = audit_codepth_duality(mod(0), t.text);
        else if (t.sub == "dim2") a = audit_dim2(mod(0), t.text);
        else {
            const AffineAlgebra<K>& alg = mod(0).algebra();
            a = audit_koszul2(mod(0), alg.parse(t.polys.at(0)), alg.parse(t.polys.at(1)),
                              t.text);
        }
        out.text = detail::audit_text(a, t.text);
        out.json = detail::audit_json(a, t.text);
        out.audit_failed = !a.pass;
    } else if (t.kind == "bench") {
        const PresentedModule<K>& M = mod(0);
        int dmax = param("dmax", 3);
        require(dmax >= 1 && dmax <= 6, errc::precondition, "bench power out of range");
        njson rows = njson::array();
        std::string csv = "d,gens,rels,gb_pairs,wall_ms\n";
        for (int d = 1; d <= dmax; ++d) {
            detail::StopWatch rsw(opts.timings);
            PresentedModule<K> T = tensor_power(M, d);
            gb_stats_reset();
            T.gb();
            GbStats st = gb_stats();
            njson row;
            row["d"] = d;
            row["gens"] = T.ngens();
            row["rels"] = T.relations().size();
            row["gb_pairs"] = st.pairs;
            row["wall_ms"] = rsw.ms();
            rows.push_back(row);
            csv += std::to_string(d) + "," + std::to_string(T.ngens()) + "," +
                   std::to_string(T.relations().size()) + "," + std::to_string(st.pairs) +
                   "," + std::to_string(rsw.ms()) + "\n";
        }
        out.text = t.text + ":\n" + csv;
        out.json["task"] = "bench";
        out.json["instance"] = t.text;
        out.json["rows"] = rows;
    } else
        fail(errc::unsupported, "task kind '" + t.kind + "' has no runner");
    return out;
}

// The standing audit battery: single-module checks for every declared module
// (duality only where the file flags the module graded), pair checks for
// every declared pair over the file order.
inline std::vector<TaskDecl> audit_battery(const ProblemFile& pf,
                                           const std::vector<std::string>& order) {
    std::vector<TaskDecl> ts;
    auto push = [&](std::string kind, std::string sub, std::vector<std::string> names,
                    std::map<std::string, int> params) {
        TaskDecl t;
        t.kind = std::move(kind);
        t.sub = std::move(sub);
        t.names = std::move(names);
        t.params = std::move(params);
        t.text = t.kind;
        if (!t.sub.empty()) t.text += " " + t.sub;
        for (auto& n : t.names) t.text += " " + n;
        for (auto& [k, v] : t.params) t.text += " " + k + "=" + std::to_string(v);
        ts.push_back(std::move(t));
    };
    std::map<std::string, const ModuleDecl*> decls;
    for (auto& d : pf.modules) decls[d.name] = &d;
    for (auto& n : order) {
        if (pf.base.vars.size() <= 2) push("audit", "dim2", {n}, {});
        if (decls.at(n)->graded) push("audit", "codepth", {n}, {});
        push("audit", "descent", {n}, {{"d", 2}});
    }
    for (size_t i = 0; i < order.size(); ++i)
        for (size_t j = i + 1; j < order.size(); ++j) {
            push("audit", "rigidity", {order[i], order[j]}, {});
            push("audit", "torsion-tor", {order[i], order[j]}, {});
            push("audit", "codepth", {order[i], order[j]}, {});
        }
    return ts;
}

template <class K>
RunResult run_problem(const ProblemFile& pf, const FieldCtx<K>& cx, const RunOptions& opts) {
    RunResult res;
    std::vector<TaskDecl> tasks;
    Workspace<K> ws;
    try {
        ws = materialize(pf, cx, opts.ord);
        tasks = pf.tasks;
        if (opts.all_audits)
            for (auto& t : audit_battery(pf, ws.module_order)) tasks.push_back(std::move(t));
    } catch (const error& e) {
        TaskOutcome out;
        out.text = std::string("error (") + errc_name(e.kind()) + "): " + e.what();
        out.json["error"]["kind"] = errc_name(e.kind());
        out.json["error"]["message"] = e.what();
        res.outcomes.push_back(std::move(out));
        res.exit_code = exit_code_for(e.kind());
        return res;
    }
    bool audit_failed = false;
    for (auto& t : tasks) {
        try {
            TaskOutcome out = run_task(pf, ws, t, opts);
            audit_failed = audit_failed || out.audit_failed;
            res.outcomes.push_back(std::move(out));
        } catch (const error& e) {
            TaskOutcome out;
            out.text = t.text + ": error (" + errc_name(e.kind()) + "): " + e.what();
            out.json["error"]["kind"] = errc_name(e.kind());
            out.json["error"]["message"] = e.what();
            out.json["error"]["instance"] = t.text;
            res.outcomes.push_back(std::move(out));
            res.exit_code = exit_code_for(e.kind());
            return res;
        }
    }
    res.exit_code = audit_failed ? 1 : 0;
    return res;
}

// Re-validate a stored certificate against its problem file: a NotFlat
// witness must fail membership bare and pass it after scaling by the
// annihilator: exactly two normal-form checks.
template <class K>
std::pair<int, std::string> check_certificate(const njson& cert, const ProblemFile& pf,
                                              const FieldCtx<K>& cx, const RunOptions& opts) {
    std::string verdict = cert.value("verdict", "");
    if (verdict != "NotFlat") return {0, "verdict '" + verdict + "': no witness to re-check"};
    std::string instance = cert.value("instance", "");
    Lexer lx(instance);
    if (lx.peek().kind != Tok::Kind::ident)
        fail(errc::parse, "certificate instance is not a task");
    lx.take();
    if (lx.peek().kind != Tok::Kind::ident)
        fail(errc::parse, "certificate instance names no module");
    std::string mname = lx.take().text;
    int d = cert.value("d", 0);
    require(d >= 1, errc::parse, "certificate carries no usable power");
    if (!cert.contains("witness") || !cert["witness"].contains("element") ||
        !cert["witness"].contains("annihilator"))
        fail(errc::parse, "NotFlat certificate without a witness");

    Workspace<K> ws = materialize(pf, cx, opts.ord);
    auto it = ws.modules.find(mname);
    if (it == ws.modules.end())
        fail(errc::parse, "certificate module '" + mname + "' not in the problem file");
    PresentedModule<K> T = tensor_power(it->second, d);

    detail::LineParser wp(cert["witness"]["element"].get<std::string>(), 1);
    std::vector<std::string> comps = wp.expr_tuple();
    require(comps.size() == T.ngens(), errc::mismatch,
            "witness arity does not match the tensor power");
    std::vector<Poly<K>> entries;
    for (auto& c : comps) entries.push_back(parse_poly(T.algebra().ambient(), cx, c));
    Vec<K> w = Vec<K>::from_polys(T.algebra().ambient(), entries);
    Poly<K> u = parse_poly(T.algebra().ambient(), cx,
                           cert["witness"]["annihilator"].get<std::string>());

    if (T.nf(w).is_zero()) return {1, "witness element lies in the relations"};
    if (!u.is_zero() && T.nf(w.scaled(u)).is_zero())
        return {0, "witness checks out: nonmember element, annihilated multiple"};
    return {1, "annihilator does not clear the witness"};
}

}  // namespace flatlab

#endif
