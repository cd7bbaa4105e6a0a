#include "superjet/covering.hpp"

#include "superjet/printer.hpp"

namespace superjet {

namespace {
Parity def_parity(const Symbol* w, Direction d) {
    return (d == Direction::D1 || d == Direction::D2) ? w->parity + Parity::odd : w->parity;
}
}  // namespace

CoveringReport check_covering(const Covering& c) {
    CoveringReport rep;
    for (const Nonlocality& nl : c.nonlocalities()) {
        const Symbol* w = nl.symbol;
        for (const auto& [d, e] : nl.defs) {
            auto par = parity_of(e);
            if (!e.is_zero() && par.parity != def_parity(w, d)) {
                rep.consistent = false;
                rep.errors.push_back("definition of " + w->name + " along " + std::string(to_string(d)) +
                                     " has the wrong parity");
            }
        }
        auto add = [&](Direction a, Direction b, SuperPoly lhs, SuperPoly rhs) {
            CompatibilityCheck chk{w, a, b, lhs, rhs, rhs - lhs};
            if (!chk.residual.is_zero()) rep.consistent = false;
            rep.checks.push_back(std::move(chk));
        };
        auto derive = [&](const SuperPoly& p, Direction d) { return d == Direction::Dt ? c.dt(p) : c.derive(p, d); };
        const SuperPoly* t = nl.def(Direction::Dt);
        for (Direction d : {Direction::D1, Direction::D2, Direction::Dx}) {
            const SuperPoly* e = nl.def(d);
            if (e && t) add(d, Direction::Dt, derive(*e, Direction::Dt), derive(*t, d));
        }
        const SuperPoly* d1 = nl.def(Direction::D1);
        const SuperPoly* d2 = nl.def(Direction::D2);
        const SuperPoly* dx = nl.def(Direction::Dx);
        if (d1 && dx) add(Direction::D1, Direction::Dx, derive(*d1, Direction::D1), c.reduce(*dx));
        if (d2 && dx) add(Direction::D2, Direction::Dx, derive(*d2, Direction::D2), c.reduce(*dx));
        if (d1 && d2) {
            // D2(D1 w) = -D1(D2 w) and D1(D1 w) = D2(D2 w)
            add(Direction::D1, Direction::D2, derive(*d1, Direction::D2), -derive(*d2, Direction::D1));
            if (!dx) add(Direction::D1, Direction::D2, derive(*d1, Direction::D1), derive(*d2, Direction::D2));
        }
    }
    return rep;
}

const Symbol* PhantomSystem::phantom_for(const Symbol* var) const {
    auto it = phantom.find(var);
    if (it == phantom.end()) throw UndeclaredSymbol("no phantom for " + var->name);
    return it->second;
}

bool PhantomSystem::is_phantom(const Symbol* s) const {
    for (const auto& [v, p] : phantom)
        if (p == s) return true;
    return false;
}

SuperPoly PhantomSystem::linearization(const SuperPoly& p) const {
    Flow lin;
    for (const auto& [v, ph] : phantom) lin.components[v] = SuperPoly::from_atom(Atom::jet(ph));
    return evolutionary_apply(lin, base.reduce(p));
}

PhantomSystem linearize(const Covering& c) {
    PhantomSystem ps;
    ps.base = c;
    for (auto u : c.system().fields) {
        const Symbol* U = phantom_of(u);
        if (U == u || c.system().has_field(U) || c.is_nonlocal(U))
            throw Error("phantom name " + U->name + " clashes with an existing variable");
        ps.phantom[u] = U;
        ps.local_phantoms.push_back(U);
    }
    for (const auto& nl : c.nonlocalities()) {
        const Symbol* W = phantom_of(nl.symbol);
        if (W == nl.symbol || c.system().has_field(W) || c.is_nonlocal(W))
            throw Error("phantom name " + W->name + " clashes with an existing variable");
        ps.phantom[nl.symbol] = W;
        ps.nonlocal_phantoms.push_back(W);
    }
    EvolutionSystem sys = c.system();
    for (auto u : c.system().fields) {
        const Symbol* U = ps.phantom[u];
        sys.fields.push_back(U);
        sys.rhs[U] = ps.linearization(c.system().rhs.at(u));
    }
    std::vector<Nonlocality> nls = c.nonlocalities();
    for (const auto& nl : c.nonlocalities()) {
        Nonlocality ph{ps.phantom[nl.symbol], nl.weight, {}};
        for (const auto& [d, e] : nl.defs) ph.defs[d] = ps.linearization(e);
        nls.push_back(std::move(ph));
    }
    ps.covering = Covering(std::move(sys), std::move(nls));
    return ps;
}

std::vector<SuperPoly> derived_equation_check(const Covering& c, const std::vector<Claim>& claims) {
    std::vector<SuperPoly> out;
    for (const Claim& cl : claims) {
        SuperPoly v = SuperPoly::from_atom(Atom::jet(cl.var));
        SuperPoly lhs = cl.dir == Direction::Dt ? c.dt(v) : c.derive(v, cl.dir);
        out.push_back(lhs - c.reduce(cl.rhs));
    }
    return out;
}

}  // namespace superjet
