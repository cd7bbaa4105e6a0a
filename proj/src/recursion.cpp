#include "superjet/recursion.hpp"

#include "superjet/printer.hpp"

namespace superjet {

Shadow identity_shadow(const PhantomSystem& ps) {
    Shadow r;
    for (auto u : ps.base.system().fields) r.components[u] = SuperPoly::from_atom(Atom::jet(ps.phantom_for(u)));
    return r;
}

namespace {

const SuperPoly& component(const Flow& phi, const Symbol* u) {
    static const SuperPoly zero;
    auto it = phi.components.find(u);
    return it == phi.components.end() ? zero : it->second;
}

bool mentions_nonlocal(const Covering& c, const SuperPoly& p) {
    for (const Atom& a : atoms_of(p))
        if (a.is_jet() && c.is_nonlocal(a.sym)) return true;
    return false;
}

}  // namespace

Flow verify_shadow(const PhantomSystem& ps, const Shadow& r) {
    Flow lin;
    for (auto u : ps.base.system().fields) lin.components[ps.phantom_for(u)] = component(r, u);
    Flow res;
    for (auto u : ps.base.system().fields) {
        const Symbol* U = ps.phantom_for(u);
        SuperPoly lhs = ps.covering.dt(component(r, u));
        SuperPoly rhs = evolutionary_apply(lin, ps.covering.system().rhs.at(U), ps.covering);
        res.components[u] = lhs - rhs;
    }
    return res;
}

SuperPoly substitute_phantoms(const PhantomSystem& ps, const SuperPoly& expr,
                              const std::map<const Symbol*, SuperPoly, SymbolLess>& images, const Covering& ctx) {
    SuperPoly out;
    for (const auto& [m, c] : expr.terms()) {
        int at = -1;
        for (size_t i = 0; i < m.factors.size(); ++i) {
            const Atom& a = m.factors[i].atom;
            if (!a.is_jet() || !ps.is_phantom(a.sym)) continue;
            if (at >= 0 || m.factors[i].exp != 1) throw NonlinearSystem("term is not linear in phantoms: " + to_string(m));
            at = static_cast<int>(i);
        }
        if (at < 0) throw NonlinearSystem("term without a phantom: " + to_string(m));
        const Atom p = m.factors[at].atom;
        int sign = 1;
        if (is_odd(p.parity())) {
            unsigned odd_after = 0;
            for (size_t j = at + 1; j < m.factors.size(); ++j)
                if (is_odd(m.factors[j].atom.parity())) odd_after += m.factors[j].exp;
            if (odd_after % 2) sign = -1;
        }
        auto it = images.find(p.sym);
        if (it == images.end()) throw MissingDefinition("no image for phantom " + p.sym->name);
        Monomial rest = m;
        rest.factors.erase(rest.factors.begin() + at);
        out += SuperPoly::from_term(rest, c * sign) * ctx.apply_operator(it->second, p.d1, p.d2, p.m);
    }
    return out;
}

Application apply_shadow(const PhantomSystem& ps, const Shadow& r, const Flow& phi, const WeightSystem& ws,
                         const IntegrateOptions& opts) {
    Application app;
    std::map<const Symbol*, SuperPoly, SymbolLess> images;
    for (auto u : ps.base.system().fields) images[ps.phantom_for(u)] = component(phi, u);
    IntegrateOptions io = opts;
    io.ctx = &ps.base;
    for (auto W : ps.nonlocal_phantoms) {
        const Nonlocality* nl = ps.covering.nonlocality(W);
        std::optional<Direction> dir;
        for (Direction d : {Direction::D1, Direction::D2, Direction::Dx})
            if (!dir && nl->def(d)) dir = d;
        if (!dir) {
            // Only a time derivative is known; such phantoms may not occur in r.
            continue;
        }
        SuperPoly e = substitute_phantoms(ps, *nl->def(*dir), images, ps.base);
        auto res = d_integrate(e, *dir, ws, io);
        if (!res.exact) {
            app.failure = "no local primitive for " + W->name + " along " + std::string(to_string(*dir)) + ": " +
                          to_string(e) + (res.reason.empty() ? "" : " (" + res.reason + ")");
            return app;
        }
        images[W] = res.primitive;
        app.nonlocal_images[W] = res.primitive;
    }
    app.flow.parity = phi.parity + r.parity;
    app.local = true;
    for (auto u : ps.base.system().fields) {
        SuperPoly c = substitute_phantoms(ps, component(r, u), images, ps.base);
        if (mentions_nonlocal(ps.base, c)) app.local = false;
        app.flow.components[u] = std::move(c);
    }
    if (!app.local) app.failure = "result depends on nonlocal variables";
    return app;
}

unsigned differential_order(const Flow& phi) {
    unsigned order = 0;
    for (const auto& [u, c] : phi.components)
        for (const Atom& a : atoms_of(c))
            if (a.is_jet()) order = std::max(order, a.m + a.d1 + a.d2);
    return order;
}

SymmetrySequence iterate(const PhantomSystem& ps, const Shadow& r, const Flow& seed, int n, const WeightSystem& ws,
                         const IntegrateOptions& opts) {
    SymmetrySequence seq;
    auto record = [&](const Flow& phi) {
        seq.terms.push_back({phi, check_symmetry(ps.base, phi).is_zero(), differential_order(phi)});
    };
    record(seed);
    for (int i = 0; i < n; ++i) {
        auto app = apply_shadow(ps, r, seq.terms.back().flow, ws, opts);
        if (!app.local) {
            seq.complete = false;
            seq.failure = app.failure;
            break;
        }
        record(app.flow);
    }
    return seq;
}

Shadow compose(const PhantomSystem& ps, const Shadow& r1, const Shadow& r2) {
    for (const Shadow* r : {&r1, &r2})
        for (const auto& [u, c] : r->components)
            for (const Atom& a : atoms_of(c))
                if (a.is_jet() && ps.covering.is_nonlocal(a.sym) && ps.is_phantom(a.sym))
                    throw Error("cannot compose shadows with nonlocal phantom " + a.sym->name);
    std::map<const Symbol*, SuperPoly, SymbolLess> images;
    for (auto u : ps.base.system().fields) images[ps.phantom_for(u)] = component(r2, u);
    Shadow out;
    out.parity = r1.parity + r2.parity;
    for (auto u : ps.base.system().fields)
        out.components[u] = substitute_phantoms(ps, component(r1, u), images, ps.covering);
    return out;
}

std::optional<int> nilpotency_order(const PhantomSystem& ps, const Shadow& r, int max) {
    Shadow power = r;
    for (int k = 1; k <= max; ++k) {
        if (power.is_zero()) return k;
        if (k < max) power = compose(ps, r, power);
    }
    return std::nullopt;
}

}  // namespace superjet
