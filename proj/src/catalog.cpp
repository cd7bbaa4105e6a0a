#include "superjet/catalog.hpp"

#include "superjet/determine.hpp"
#include "superjet/printer.hpp"

#include <algorithm>
#include <functional>
#include <future>

namespace superjet {

const CatalogEntry* find_entry(const std::string& id) {
    for (const auto& e : catalog())
        if (e.id == id) return &e;
    return nullptr;
}

SourceDocument load_entry(const std::string& id) {
    const CatalogEntry* e = find_entry(id);
    if (!e) throw Error("unknown catalog entry '" + id + "'");
    return parse_document(e->source);
}

WeightSystem document_weights(const SourceDocument& doc) {
    WeightSystem ws = doc.weights;
    std::vector<const Symbol*> vars = doc.fields;
    for (const auto& n : doc.nonlocal) vars.push_back(n.symbol);
    for (const Symbol* v : vars)
        if (ws.get(v)) ws.set(phantom_of(v), *ws.get(v));
    return ws;
}

Covering complete_covering(const SourceDocument& doc) {
    Covering cov = doc.covering();
    for (const auto& n : doc.nonlocal)
        if (!n.def(Direction::Dt)) return derive_time_definitions(cov, document_weights(doc));
    return cov;
}

std::optional<Rational> proportionality(const Flow& a, const Flow& b) {
    if (a.parity != b.parity) return std::nullopt;
    std::optional<Rational> c;
    for (const auto& [u, p] : b.components) {
        if (p.is_zero()) continue;
        const auto& [m, coeff] = *p.terms().begin();
        auto it = a.components.find(u);
        Rational mine = it == a.components.end() ? Rational(0) : it->second.coefficient(m);
        c = mine / coeff;
        break;
    }
    if (!c) return a.is_zero() ? std::optional<Rational>(Rational(0)) : std::nullopt;
    Flow diff = a + Rational(-*c) * b;
    if (!diff.is_zero()) return std::nullopt;
    return c;
}

namespace {

std::string abbreviate(std::string s, size_t limit = 240) {
    if (s.size() > limit) s = s.substr(0, limit) + " ...";
    return s;
}

std::string residual_text(const Flow& r) { return "residual " + abbreviate(to_string(r.components)); }

struct Pending {
    CheckResult header;
    std::function<void(CheckResult&)> body;
};

void add(std::vector<Pending>& out, std::string kind, std::string name, bool expect_failure,
         std::function<void(CheckResult&)> body) {
    CheckResult c;
    c.kind = std::move(kind);
    c.name = std::move(name);
    c.expect_failure = expect_failure;
    out.push_back({std::move(c), std::move(body)});
}

// Shared read-only state; every check builds only local objects from it.
struct Context {
    const SourceDocument& doc;
    Covering cov;
    PhantomSystem ps;
    WeightSystem ws;
};

void add_checks(const Context& cx, std::vector<Pending>& out) {
    const SourceDocument& doc = cx.doc;
    if (!doc.nonlocal.empty())
        add(out, "covering", "nonlocal variables", false, [&cx](CheckResult& c) {
            auto rep = check_covering(cx.cov);
            c.holds = rep.consistent;
            for (const auto& e : rep.errors) c.detail += e + "; ";
            for (const auto& chk : rep.checks)
                if (!chk.residual.is_zero())
                    c.detail += std::string(to_string(chk.first)) + "/" + std::string(to_string(chk.second)) + " of " +
                                chk.var->name + ": " + abbreviate(to_string(chk.residual)) + "; ";
        });
    for (const auto& f : doc.flows) {
        if (f.standalone) continue;
        add(out, "symmetry", f.name, f.expect_failure, [&cx, &f](CheckResult& c) {
            Flow r = check_symmetry(cx.cov, f.flow);
            c.holds = r.is_zero();
            if (!c.holds) c.detail = residual_text(r);
        });
    }
    for (const auto& s : doc.shadows)
        add(out, "shadow", s.name, s.expect_failure, [&cx, &s](CheckResult& c) {
            Flow r = verify_shadow(cx.ps, s.shadow);
            c.holds = r.is_zero();
            if (!c.holds) c.detail = residual_text(r);
        });
    for (const auto& d : doc.densities) {
        if (!d.image) continue;
        add(out, "conserved", d.name, d.expect_failure, [&cx, &d](CheckResult& c) {
            auto res = is_conserved(cx.cov, d.density, *d.image, cx.ws);
            c.holds = res.conserved;
            c.detail = c.holds ? "flux " + abbreviate(to_string(res.flux))
                               : "time derivative " + abbreviate(to_string(res.time_derivative));
        });
    }
    for (const auto& cl : doc.claims)
        add(out, "claim", cl.claim.name, cl.expect_failure, [&cx, &cl](CheckResult& c) {
            auto r = derived_equation_check(cx.cov, {cl.claim});
            c.holds = r.at(0).is_zero();
            if (!c.holds) c.detail = "residual " + abbreviate(to_string(r[0]));
        });
    for (const auto& m : doc.maps)
        add(out, "maps", m.shadow + ": " + m.seed + " -> " + m.target, m.expect_failure, [&cx, &m](CheckResult& c) {
            auto app = apply_shadow(cx.ps, cx.doc.shadow(m.shadow)->shadow, cx.doc.flow(m.seed)->flow, cx.ws,
                                    IntegrateOptions{{}, &cx.cov});
            if (!app.local) {
                c.detail = "image is nonlocal: " + app.failure;
                return;
            }
            auto k = proportionality(app.flow, cx.doc.flow(m.target)->flow);
            c.holds = k && *k != 0;
            c.detail = c.holds ? "scale " + k->get_str() : "image " + abbreviate(to_string(app.flow));
        });
    for (const auto& n : doc.nilpotency)
        add(out, "nilpotent", n.shadow + " order " + std::to_string(n.order), n.expect_failure, [&cx, &n](CheckResult& c) {
            auto k = nilpotency_order(cx.ps, cx.doc.shadow(n.shadow)->shadow, n.order);
            c.holds = k == n.order;
            c.detail = k ? "least power vanishing: " + std::to_string(*k)
                         : "no power up to " + std::to_string(n.order) + " vanishes";
        });
    for (const auto& cm : doc.commutes)
        add(out, "commute", cm.first + " " + cm.second, cm.expect_failure, [&cx, &cm](CheckResult& c) {
            Flow r = commutator(cx.doc.flow(cm.first)->flow, cx.doc.flow(cm.second)->flow, cx.cov);
            c.holds = r.is_zero();
            if (!c.holds) c.detail = "commutator " + abbreviate(to_string(r.components));
        });
    for (const auto& g : doc.generates)
        add(out, "generates", g.density + " -> " + g.flow, g.expect_failure, [&cx, &g](CheckResult& c) {
            Flow h = hamiltonian_flow(*cx.doc.hamiltonian_operator, cx.doc.density(g.density)->density,
                                      cx.doc.system.fields);
            const Flow& target = cx.doc.flow(g.flow)->flow;
            auto k = proportionality(h, target);
            c.holds = k && (*k != 0 || target.is_zero());
            c.detail = c.holds ? "scale " + k->get_str() : "Hamiltonian flow " + abbreviate(to_string(h.components));
        });
    if (doc.miura && !doc.extended.fields.empty())
        add(out, "miura", "deformation", false, [&cx](CheckResult& c) {
            auto r = verify_deformation(cx.doc.system, cx.doc.extended, *cx.doc.miura);
            c.holds = true;
            for (const auto& x : r)
                if (!x.is_zero()) {
                    c.holds = false;
                    c.detail += abbreviate(to_string(x)) + "; ";
                }
        });
    for (const auto& e : doc.expansions)
        add(out, "expansion", e.base->name, e.expect_failure, [&cx, &e](CheckResult& c) {
            const auto& m = *cx.doc.miura;
            size_t i = std::find(m.base.begin(), m.base.end(), e.base) - m.base.begin();
            auto d = density_recurrence(m, int(e.terms.size()) - 1);
            c.holds = d.at(i) == e.terms;
            if (!c.holds)
                for (size_t k = 0; k < e.terms.size(); ++k)
                    if (d[i][k] != e.terms[k]) {
                        c.detail = "term " + std::to_string(k) + " is " + abbreviate(to_string(d[i][k]));
                        break;
                    }
        });
}

}  // namespace

std::vector<CheckResult> verify_document(const SourceDocument& doc, const VerifyOptions& opts) {
    Context cx{doc, complete_covering(doc), {}, {}};
    cx.ps = linearize(cx.cov);
    cx.ws = phantom_weights(cx.ps, covering_weights(cx.cov, doc.weights));
    std::vector<Pending> checks;
    add_checks(cx, checks);

    auto run = [](const Pending& p) {
        CheckResult c = p.header;
        try {
            p.body(c);
        } catch (const Error& e) {
            c.holds = false;
            c.detail = std::string("error: ") + e.what();
        }
        return c;
    };
    std::vector<CheckResult> out(checks.size());
    unsigned jobs = std::max(1u, opts.jobs);
    for (size_t start = 0; start < checks.size(); start += jobs) {
        std::vector<std::future<CheckResult>> batch;
        size_t end = std::min(checks.size(), start + jobs);
        for (size_t i = start; i < end; ++i)
            batch.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, run, std::cref(checks[i])));
        for (size_t i = start; i < end; ++i) out[i] = batch[i - start].get();
    }
    return out;
}

}  // namespace superjet
