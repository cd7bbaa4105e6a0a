#include "superjet/jetspace.hpp"

#include <set>

namespace superjet {

std::string_view to_string(Direction d) {
    switch (d) {
        case Direction::D1: return "D1";
        case Direction::D2: return "D2";
        case Direction::Dx: return "Dx";
        case Direction::Dt: return "Dt";
    }
    return "?";
}

bool EvolutionSystem::has_field(const Symbol* s) const {
    for (auto f : fields)
        if (f == s) return true;
    return false;
}

void EvolutionSystem::validate() const {
    for (auto f : fields) {
        auto it = rhs.find(f);
        if (it == rhs.end()) throw MissingDefinition("no evolution equation for " + f->name);
        auto rep = parity_of(it->second);
        if (!rep.parity || (!it->second.is_zero() && *rep.parity != f->parity))
            throw ParityMismatch("evolution of " + f->name + " does not have the parity of the field");
    }
}

int EvolutionSystem::n_susy() const {
    int n = 0;
    for (auto f : fields) n = std::max(n, f->n_susy);
    return n;
}

bool Flow::is_zero() const {
    for (const auto& [u, p] : components)
        if (!p.is_zero()) return false;
    return true;
}

Flow flow_from(const EvolutionSystem& sys) { return Flow{sys.rhs, Parity::even}; }

Flow operator+(const Flow& a, const Flow& b) {
    if (a.parity != b.parity) throw ParityMismatch("adding flows of different parity");
    Flow r = a;
    for (const auto& [u, p] : b.components) r.components[u] += p;
    return r;
}

Flow operator*(const Rational& c, const Flow& a) {
    Flow r = a;
    for (auto& [u, p] : r.components) p *= c;
    return r;
}

Flow scale(const Flow& a, const SuperPoly& c) {
    Flow r = a;
    for (auto& [u, p] : r.components) p = c * p;
    return r;
}

const SuperPoly* Nonlocality::def(Direction d) const {
    auto it = defs.find(d);
    return it == defs.end() ? nullptr : &it->second;
}

std::pair<int, Atom> derive_jet(const Atom& a, Direction d) {
    const Symbol* u = a.sym;
    Atom r = a;
    switch (d) {
        case Direction::D1:
            if (u->n_susy < 1) throw DirectionError("D1 exceeds the supersymmetry of " + u->name);
            if (a.d1 == 0) {
                r.d1 = 1;
            } else {
                r.d1 = 0;
                r.m += 1;
            }
            return {1, r};
        case Direction::D2:
            if (u->n_susy < 2) throw DirectionError("D2 exceeds the supersymmetry of " + u->name);
            if (a.d1 == 0) {
                if (a.d2 == 0) r.d2 = 1;
                else r.d2 = 0, r.m += 1;
                return {1, r};
            }
            if (a.d2 == 0) {
                r.d2 = 1;
            } else {
                r.d2 = 0;
                r.m += 1;
            }
            return {-1, r};
        case Direction::Dx:
            r.m += 1;
            return {1, r};
        case Direction::Dt: break;
    }
    throw Error("derive_jet: time derivative needs an evolution system");
}

namespace {
Parity direction_parity(Direction d) { return (d == Direction::D1 || d == Direction::D2) ? Parity::odd : Parity::even; }

SuperPoly chain_rule(const Atom& a, const SuperPoly& arg_image) {
    if (arg_image.is_zero()) return {};
    Atom next = a;
    next.m += 1;
    return SuperPoly::from_atom(next) * arg_image;
}
}  // namespace

SuperPoly super_derive(const SuperPoly& p, Direction d) {
    static const Covering bare;
    if (d == Direction::Dt) throw Error("super_derive: use dt_apply for the time derivative");
    return bare.derive(p, d);
}

Covering::Covering(EvolutionSystem sys, std::vector<Nonlocality> nonlocal)
    : sys_(std::move(sys)), nonlocal_(std::move(nonlocal)) {
    for (size_t i = 0; i < nonlocal_.size(); ++i) {
        const Symbol* s = nonlocal_[i].symbol;
        if (sys_.has_field(s)) throw Error("nonlocal variable " + s->name + " clashes with a field");
        index_[s] = i;
    }
}

const Nonlocality* Covering::nonlocality(const Symbol* s) const {
    auto it = index_.find(s);
    return it == index_.end() ? nullptr : &nonlocal_[it->second];
}

SuperPoly Covering::jet(const Atom& a) const {
    const Nonlocality* nl = a.is_jet() ? nonlocality(a.sym) : nullptr;
    if (!nl) return SuperPoly::from_atom(a);
    const SuperPoly* dx = nl->def(Direction::Dx);
    const SuperPoly* d1 = nl->def(Direction::D1);
    const SuperPoly* d2 = nl->def(Direction::D2);
    if (a.m >= 1) {
        if (dx) return apply_operator(*dx, a.d1, a.d2, a.m - 1);
        if (d1) return apply_operator(derive(*d1, Direction::D1), a.d1, a.d2, a.m - 1);
        if (d2) return apply_operator(derive(*d2, Direction::D2), a.d1, a.d2, a.m - 1);
    }
    if (a.d1 && d1) {
        // D1 D2^k Dx^m w = (-1)^k D2^k Dx^m D1 w
        SuperPoly r = apply_operator(*d1, 0, a.d2, a.m);
        return a.d2 ? -r : r;
    }
    if (a.d2 && d2) return apply_operator(*d2, a.d1, 0, a.m);
    return SuperPoly::from_atom(a);
}

SuperPoly Covering::reduce(const SuperPoly& p) const {
    if (nonlocal_.empty()) return p;
    std::map<Atom, SuperPoly> images;
    for (const Atom& a : atoms_of(p)) {
        SuperPoly j = jet(a);
        if (!(j == SuperPoly::from_atom(a))) images.emplace(a, std::move(j));
    }
    if (images.empty()) return p;
    SuperPoly r;
    for (const auto& [m, c] : p.terms()) {
        SuperPoly acc = SuperPoly::from_term(Monomial{{}, m.params}, c);
        for (const auto& f : m.factors) {
            auto it = images.find(f.atom);
            acc = acc * (it == images.end() ? SuperPoly::from_term(Monomial{{f}, {}}, 1) : pow(it->second, f.exp));
        }
        r += acc;
    }
    return r;
}

SuperPoly Covering::atom_derivative(const Atom& a, Direction d) const {
    switch (a.kind()) {
        case SymbolKind::field: {
            if (d != Direction::Dt) {
                auto [s, next] = derive_jet(a, d);
                SuperPoly r = jet(next);
                return s < 0 ? -r : r;
            }
            if (auto it = sys_.rhs.find(a.sym); it != sys_.rhs.end())
                return apply_operator(it->second, a.d1, a.d2, a.m);
            if (const Nonlocality* nl = nonlocality(a.sym)) {
                SuperPoly j = jet(a);
                if (!(j == SuperPoly::from_atom(a))) return dt(j);
                const SuperPoly* t = nl->def(Direction::Dt);
                if (!t) throw MissingDefinition("no time derivative declared for " + a.sym->name);
                return apply_operator(*t, a.d1, a.d2, a.m);
            }
            throw UndeclaredSymbol("no evolution equation for " + a.sym->name);
        }
        case SymbolKind::function: return chain_rule(a, atom_derivative(Atom::jet(a.arg), d));
        default: return {};
    }
}

SuperPoly Covering::derive(const SuperPoly& p, Direction d) const {
    return apply_derivation(p, direction_parity(d), [&](const Atom& a) { return atom_derivative(a, d); });
}

SuperPoly Covering::apply_operator(const SuperPoly& p, int d1, int d2, unsigned m) const {
    SuperPoly r = p;
    for (unsigned i = 0; i < m; ++i) r = derive(r, Direction::Dx);
    if (d2) r = derive(r, Direction::D2);
    if (d1) r = derive(r, Direction::D1);
    return r;
}

SuperPoly Covering::dt(const SuperPoly& p) const { return derive(p, Direction::Dt); }

SuperPoly dt_apply(const EvolutionSystem& sys, const SuperPoly& p) { return Covering(sys).dt(p); }
SuperPoly dt_apply(const Covering& c, const SuperPoly& p) { return c.dt(p); }

SuperPoly evolutionary_apply(const Flow& phi, const SuperPoly& p, const Covering& ctx) {
    // Odd flows act from the right and commute with D. They are evaluated as the left
    // derivation L with L(a) = -(-1)^|a| D^k(phi_u) on a jet a = D^k u, which satisfies
    // R(g) = (-1)^(|g|+1) L(g).
    bool odd = is_odd(phi.parity);
    std::function<SuperPoly(const Atom&)> image = [&](const Atom& a) -> SuperPoly {
        if (a.kind() == SymbolKind::function) return chain_rule(a, image(Atom::jet(a.arg)));
        if (a.kind() != SymbolKind::field) return {};
        auto it = phi.components.find(a.sym);
        if (it == phi.components.end()) return {};
        SuperPoly r = ctx.apply_operator(it->second, a.d1, a.d2, a.m);
        if (odd && !is_odd(a.parity())) r = -r;
        return r;
    };
    if (!odd) return apply_derivation(p, phi.parity, image);
    SuperPoly even_part, odd_part;
    for (const auto& [m, c] : p.terms()) (is_odd(m.parity()) ? odd_part : even_part).add_term(m, c);
    return apply_derivation(odd_part, phi.parity, image) - apply_derivation(even_part, phi.parity, image);
}

SuperPoly evolutionary_apply(const Flow& phi, const SuperPoly& p) { return evolutionary_apply(phi, p, Covering{}); }

Flow commutator(const Flow& phi, const Flow& psi, const Covering& ctx) {
    Flow r;
    r.parity = phi.parity + psi.parity;
    bool both_odd = is_odd(phi.parity) && is_odd(psi.parity);
    std::set<const Symbol*, SymbolLess> keys;
    for (const auto& [u, p] : phi.components) keys.insert(u);
    for (const auto& [u, p] : psi.components) keys.insert(u);
    for (auto u : keys) {
        SuperPoly a, b;
        if (auto it = psi.components.find(u); it != psi.components.end()) a = evolutionary_apply(phi, it->second, ctx);
        if (auto it = phi.components.find(u); it != phi.components.end()) b = evolutionary_apply(psi, it->second, ctx);
        r.components[u] = both_odd ? a + b : a - b;
    }
    return r;
}

Flow commutator(const Flow& phi, const Flow& psi) { return commutator(phi, psi, Covering{}); }

Flow check_symmetry(const Covering& c, const Flow& phi) {
    Flow r;
    r.parity = phi.parity;
    for (auto u : c.system().fields) {
        auto it = phi.components.find(u);
        SuperPoly lhs = it == phi.components.end() ? SuperPoly{} : c.dt(it->second);
        r.components[u] = lhs - evolutionary_apply(phi, c.system().rhs.at(u), c);
    }
    return r;
}

Flow check_symmetry(const EvolutionSystem& sys, const Flow& phi) { return check_symmetry(Covering(sys), phi); }

SuperPoly substitute(const SuperPoly& p, const FieldMap& images) {
    for (const auto& [u, img] : images)
        if (!img.is_zero() && parity_of(img).parity != u->parity)
            throw ParityMismatch("substitution image for " + u->name + " has the wrong parity");
    static const Covering bare;
    std::map<Atom, SuperPoly> atoms;
    for (const Atom& a : atoms_of(p)) {
        if (a.kind() == SymbolKind::function && images.count(a.arg))
            throw Error("cannot substitute into the argument of " + a.sym->name);
        if (!a.is_jet()) continue;
        auto it = images.find(a.sym);
        if (it == images.end()) continue;
        atoms.emplace(a, bare.apply_operator(it->second, a.d1, a.d2, a.m));
    }
    return substitute_atoms(p, atoms);
}

SuperPoly theta_derive(const SuperPoly& p, int i) {
    const Symbol* th = make_theta(i);
    SuperPoly partial = apply_derivation(p, Parity::odd, [&](const Atom& a) {
        return a.sym == th ? SuperPoly(1) : SuperPoly{};
    });
    return partial + SuperPoly::from_atom(Atom::of(th)) * super_derive(p, Direction::Dx);
}

SuperPoly theta_expansion(const Symbol* field, const std::vector<const Symbol*>& comps) {
    SuperPoly t1 = SuperPoly::from_atom(Atom::of(make_theta(1)));
    SuperPoly r = SuperPoly::from_atom(Atom::jet(comps.at(0)));
    if (field->n_susy >= 1) r += t1 * SuperPoly::from_atom(Atom::jet(comps.at(1)));
    if (field->n_susy >= 2) {
        SuperPoly t2 = SuperPoly::from_atom(Atom::of(make_theta(2)));
        r += t2 * SuperPoly::from_atom(Atom::jet(comps.at(2)));
        r += t1 * t2 * SuperPoly::from_atom(Atom::jet(comps.at(3)));
    }
    return r;
}

namespace {
std::vector<const Symbol*> component_symbols(const Symbol* u, const ComponentNames& names) {
    static const char* suffix[] = {"0", "1", "2", "12"};
    size_t n = size_t{1} << u->n_susy;
    std::vector<std::string> nm;
    if (auto it = names.names.find(u); it != names.names.end()) nm = it->second;
    if (nm.empty())
        for (size_t i = 0; i < n; ++i) nm.push_back(u->name + suffix[i]);
    if (nm.size() != n) throw Error("wrong number of component names for " + u->name);
    // theta-degree of slot i: 0, 1, 1, 2
    static const int degree[] = {0, 1, 1, 2};
    std::vector<const Symbol*> out;
    for (size_t i = 0; i < n; ++i) out.push_back(make_field(nm[i], u->parity + parity_from(degree[i]), 0));
    return out;
}

int theta_slot(const Monomial& m, Monomial& rest) {
    bool t1 = false, t2 = false;
    rest.params = m.params;
    rest.factors.clear();
    for (const auto& f : m.factors) {
        if (f.atom.kind() == SymbolKind::theta) {
            if (f.atom.sym->name == "th1") t1 = true;
            else t2 = true;
        } else {
            rest.factors.push_back(f);
        }
    }
    return (t1 ? 1 : 0) + (t2 ? 2 : 0);
}
}  // namespace

EvolutionSystem component_expand(const EvolutionSystem& sys, const ComponentNames& names) {
    std::map<const Symbol*, std::vector<const Symbol*>, SymbolLess> comps;
    std::map<Atom, SuperPoly> jets;
    EvolutionSystem out;
    for (auto u : sys.fields) {
        comps[u] = component_symbols(u, names);
        for (auto c : comps[u]) out.fields.push_back(c);
    }
    for (auto u : sys.fields) {
        std::map<Atom, SuperPoly> images;
        for (const Atom& a : atoms_of(sys.rhs.at(u))) {
            if (a.kind() == SymbolKind::function) throw Error("component expansion of function symbols is unsupported");
            if (!a.is_jet()) continue;
            auto it = comps.find(a.sym);
            if (it == comps.end()) throw UndeclaredSymbol(a.sym->name + " is not a field of the system");
            SuperPoly e = theta_expansion(a.sym, it->second);
            for (unsigned k = 0; k < a.m; ++k) e = super_derive(e, Direction::Dx);
            if (a.d2) e = theta_derive(e, 2);
            if (a.d1) e = theta_derive(e, 1);
            images.emplace(a, std::move(e));
        }
        SuperPoly expanded = substitute_atoms(sys.rhs.at(u), images);
        std::vector<SuperPoly> parts(size_t{1} << u->n_susy);
        Monomial rest;
        for (const auto& [m, c] : expanded.terms()) {
            int slot = theta_slot(m, rest);
            // slot index 1 -> th1, 2 -> th2, 3 -> th1 th2; components are stored in the order 0, 1, 2, 12
            parts.at(static_cast<size_t>(slot)).add_term(rest, c);
        }
        const auto& cs = comps[u];
        for (size_t i = 0; i < cs.size(); ++i) out.rhs[cs[i]] = parts[i];
    }
    return out;
}

EvolutionSystem clifford_expand(const EvolutionSystem& sys, const Symbol* u, const Symbol* aux, const Symbol* b,
                                const Symbol* f) {
    if (aux->kind != SymbolKind::clifford) throw Error(aux->name + " is not a Clifford generator");
    if (is_odd(u->parity) || is_odd(b->parity) || !is_odd(f->parity))
        throw ParityMismatch("expected an even field split into even and odd parts");
    SuperPoly th = SuperPoly::from_atom(Atom::of(aux));
    std::map<Atom, SuperPoly> images;
    for (const Atom& a : atoms_of(sys.rhs.at(u))) {
        if (!a.is_jet()) continue;
        if (a.sym != u || a.d1 || a.d2) throw Error("clifford expansion supports x-jets of a single field only");
        images.emplace(a, SuperPoly::from_atom(Atom::jet(b, a.m)) + th * SuperPoly::from_atom(Atom::jet(f, a.m)));
    }
    SuperPoly e = substitute_atoms(sys.rhs.at(u), images);
    EvolutionSystem out;
    out.fields = {b, f};
    out.rhs[b] = {};
    out.rhs[f] = {};
    for (const auto& [m, c] : e.terms()) {
        Monomial rest{{}, m.params};
        bool has_aux = false;
        for (const auto& fa : m.factors) {
            if (fa.atom.sym == aux) has_aux = true;
            else rest.factors.push_back(fa);
        }
        out.rhs[has_aux ? f : b].add_term(rest, c);
    }
    return out;
}

}  // namespace superjet
