#include "superjet/varcalc.hpp"

#include "superjet/linsolve.hpp"
#include "superjet/printer.hpp"

#include <set>
#include <tuple>

namespace superjet {

namespace {

const Covering& bare() {
    static const Covering c;
    return c;
}

Monomial strip_params(const Monomial& m) {
    Monomial out = m;
    out.params = {};
    return out;
}

SuperPoly param_factor(const ParamMonomial& pm) {
    Monomial m;
    m.params = pm;
    return SuperPoly::from_term(m, 1);
}

}  // namespace

SuperPoly graded_partial(const SuperPoly& p, const Atom& v) {
    const bool chain = v.is_jet() && v.m == 0 && v.d1 == 0 && v.d2 == 0 && !is_odd(v.parity());
    return apply_derivation(p, v.parity(), [&](const Atom& a) {
        if (a == v) return SuperPoly(1);
        if (chain && a.kind() == SymbolKind::function && a.arg == v.sym)
            return SuperPoly::from_atom(Atom::function(a.sym, a.arg, a.m + 1));
        return SuperPoly();
    });
}

SuperPoly euler(const SuperPoly& h, const Symbol* u) {
    const bool odd_u = is_odd(u->parity);
    SuperPoly out;
    for (const Atom& a : atoms_of(h)) {
        if (!a.is_jet() || a.sym != u) continue;
        // Integration by parts: D(A) B ~ -(-1)^|A| A D(B) and Dx(A) B ~ -A Dx(B).
        SuperPoly g = graded_partial(h, a);
        if (a.d1) {
            g = bare().derive(g, Direction::D1);
            if ((odd_u + a.d2) % 2 == 0) g = -g;
        }
        if (a.d2) {
            g = bare().derive(g, Direction::D2);
            if (!odd_u) g = -g;
        }
        for (unsigned k = 0; k < a.m; ++k) g = -bare().derive(g, Direction::Dx);
        out += g;
    }
    return out;
}

std::vector<SuperPoly> euler_gradient(const SuperPoly& h, const std::vector<const Symbol*>& fields) {
    std::vector<SuperPoly> out;
    for (auto u : fields) out.push_back(euler(h, u));
    return out;
}

bool same_functional(const SuperPoly& h1, const SuperPoly& h2, const std::vector<const Symbol*>& fields) {
    for (const auto& g : euler_gradient(h1 - h2, fields))
        if (!g.is_zero()) return false;
    return true;
}

SuperPoly euler_x(const SuperPoly& h, const Symbol* u, int d1, int d2) {
    SuperPoly out;
    for (const Atom& a : atoms_of(h)) {
        if (!a.is_jet() || a.sym != u || a.d1 != d1 || a.d2 != d2) continue;
        SuperPoly g = graded_partial(h, a);
        for (unsigned k = 0; k < a.m; ++k) g = -bare().derive(g, Direction::Dx);
        out += g;
    }
    return out;
}

SuperPoly apply_operator(const ScalarOperator& op, const SuperPoly& p) {
    SuperPoly out;
    for (const auto& t : op) out += t.coeff * bare().apply_operator(p, t.d1, t.d2, t.m);
    return out;
}

Flow hamiltonian_flow(const HamiltonianOperator& A, const SuperPoly& h, const std::vector<const Symbol*>& fields) {
    if (A.entries.size() != fields.size()) throw Error("Hamiltonian operator shape does not match the fields");
    for (const auto& row : A.entries)
        if (row.size() != fields.size()) throw Error("Hamiltonian operator shape does not match the fields");
    auto grad = euler_gradient(h, fields);
    if (A.gradient == Gradient::right && !h.is_zero() && homogeneous_parity(h) == Parity::even)
        for (size_t j = 0; j < fields.size(); ++j)
            if (fields[j]->parity == Parity::odd) grad[j] = -grad[j];
    Flow phi;
    std::optional<Parity> par;
    for (size_t i = 0; i < fields.size(); ++i) {
        SuperPoly c;
        for (size_t j = 0; j < fields.size(); ++j) c += apply_operator(A.entries[i][j], grad[j]);
        if (!c.is_zero()) {
            Parity q = homogeneous_parity(c) + fields[i]->parity;
            if (par && *par != q) throw ParityMismatch("Hamiltonian flow has components of mixed parity");
            par = q;
        }
        phi.components[fields[i]] = std::move(c);
    }
    phi.parity = par.value_or(Parity::even);
    return phi;
}

IntegrationResult d_integrate(const SuperPoly& e, Direction dir, const WeightSystem& ws, const IntegrateOptions& opts) {
    if (dir == Direction::Dt) throw DirectionError("cannot integrate along t");
    const Covering& ctx = opts.ctx ? *opts.ctx : bare();
    IntegrationResult res;
    res.exact = true;
    SuperPoly er = ctx.reduce(e);
    if (er.is_zero()) return res;

    std::set<const Symbol*, SymbolLess> var_set(ctx.system().fields.begin(), ctx.system().fields.end());
    std::vector<Atom> extra;
    for (const Atom& a : atoms_of(er)) {
        switch (a.kind()) {
            case SymbolKind::field: var_set.insert(a.sym); break;
            case SymbolKind::clifford: extra.push_back(a); break;
            default: throw Error("cannot integrate expressions containing " + to_string(a));
        }
    }
    std::vector<const Symbol*> vars(var_set.begin(), var_set.end());

    using Key = std::tuple<ParamMonomial, Rational, Parity>;
    std::map<Key, SuperPoly> pieces;
    for (const auto& [m, c] : er.terms()) {
        Monomial bm = strip_params(m);
        pieces[Key{m.params, ws.of(bm), bm.parity()}].add_term(bm, c);
    }
    const Rational step = dir == Direction::Dx ? Rational(1) : frac(1, 2);
    for (const auto& [key, piece] : pieces) {
        const auto& [pm, w, par] = key;
        Rational target = w - step;
        Parity ppar = dir == Direction::Dx ? par : par + Parity::odd;
        std::vector<Atom> cands = jet_atoms(vars, ws, target, &ctx);
        cands.insert(cands.end(), extra.begin(), extra.end());
        std::vector<Monomial> monos;
        if (target >= 0) monos = enumerate_monomials(ws, target, ppar, cands, opts.enumerate);
        std::vector<SuperPoly> images;
        for (const auto& m : monos) images.push_back(ctx.derive(SuperPoly::from_term(m, 1), dir));
        std::map<Monomial, LinearEquation> rows;
        for (size_t i = 0; i < images.size(); ++i)
            for (const auto& [m, c] : images[i].terms()) rows[m].coeffs[static_cast<int>(i)] = SuperPoly(c);
        for (const auto& [m, c] : piece.terms()) rows[m].rhs = SuperPoly(c);
        LinearSystem ls;
        ls.num_unknowns = static_cast<int>(monos.size());
        for (auto& [m, eq] : rows) ls.equations.push_back(std::move(eq));
        auto br = solve_linear(ls, SolveOptions{{}, true, 0}).front();
        if (!br.consistent) {
            res.exact = false;
            res.reason = "no primitive of weight " + to_string(target) + " for " + to_string(param_factor(pm) * piece);
            break;
        }
        Rational den = *br.denominator.as_constant();
        SuperPoly prim;
        for (size_t i = 0; i < monos.size(); ++i) {
            Rational c = *br.particular[i].as_constant() / den;
            if (c != 0) prim.add_term(monos[i], c);
        }
        res.primitive += param_factor(pm) * prim;
    }
    if (!res.exact) {
        res.primitive = SuperPoly();
        for (auto u : vars) {
            if (dir == Direction::Dx) {
                for (int d2 = 0; d2 <= (u->n_susy >= 2 ? 1 : 0); ++d2)
                    for (int d1 = 0; d1 <= (u->n_susy >= 1 ? 1 : 0); ++d1) res.obstruction.push_back(euler_x(er, u, d1, d2));
            } else {
                res.obstruction.push_back(euler(er, u));
            }
        }
    }
    return res;
}

Conservation is_conserved(const Covering& c, const SuperPoly& rho, Direction image, const WeightSystem& ws,
                          const IntegrateOptions& opts) {
    Conservation out;
    out.time_derivative = c.dt(rho);
    IntegrateOptions o = opts;
    if (!o.ctx) o.ctx = &c;
    auto r = d_integrate(out.time_derivative, image, ws, o);
    out.conserved = r.exact;
    out.flux = r.primitive;
    out.obstruction = r.obstruction;
    return out;
}

Covering derive_time_definitions(const Covering& c, const WeightSystem& ws0, const IntegrateOptions& opts) {
    WeightSystem ws = ws0;
    for (const auto& nl : c.nonlocalities())
        if (nl.weight && !ws.get(nl.symbol)) ws.set(nl.symbol, *nl.weight);
    std::vector<Nonlocality> done;
    for (Nonlocality nl : c.nonlocalities()) {
        if (!nl.def(Direction::Dt)) {
            Covering ctx(c.system(), done);
            std::optional<Direction> dir;
            for (Direction d : {Direction::D1, Direction::D2, Direction::Dx})
                if (!dir && nl.def(d)) dir = d;
            if (!dir) throw MissingDefinition(nl.symbol->name + " has no spatial definition");
            IntegrateOptions o = opts;
            o.ctx = &ctx;
            auto r = d_integrate(ctx.dt(*nl.def(*dir)), *dir, ws, o);
            if (!r.exact) throw MissingDefinition("time derivative of " + nl.symbol->name + " is nonlocal: " + r.reason);
            nl.defs[Direction::Dt] = r.primitive;
        }
        done.push_back(std::move(nl));
    }
    return Covering(c.system(), std::move(done));
}

}  // namespace superjet
