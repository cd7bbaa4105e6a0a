#include "superjet/determine.hpp"

#include "superjet/printer.hpp"

namespace superjet {

WeightSystem covering_weights(const Covering& c, const WeightSystem& ws) {
    WeightSystem out = ws;
    for (const auto& nl : c.nonlocalities())
        if (!out.get(nl.symbol) && nl.weight) out.set(nl.symbol, *nl.weight);
    return out;
}

WeightSystem phantom_weights(const PhantomSystem& ps, const WeightSystem& ws) {
    WeightSystem out = covering_weights(ps.base, ws);
    for (const auto& [v, p] : ps.phantom)
        if (auto w = out.get(v)) out.set(p, *w);
    return out;
}

namespace {

struct Ansatz {
    std::vector<const Symbol*> fields;
    std::vector<std::vector<SuperPoly>> terms;  // per field
    int size = 0;

    Flow flow(Parity parity) const {
        Flow phi;
        phi.parity = parity;
        int k = 0;
        for (size_t i = 0; i < fields.size(); ++i) {
            SuperPoly c;
            for (const auto& t : terms[i]) c += unknown_atom(k++) * t;
            phi.components[fields[i]] = std::move(c);
        }
        return phi;
    }
    Flow flow(Parity parity, const std::vector<ParamPoly>& values) const {
        Flow phi;
        phi.parity = parity;
        int k = 0;
        for (size_t i = 0; i < fields.size(); ++i) {
            SuperPoly c;
            for (const auto& t : terms[i]) c += values[k++] * t;
            phi.components[fields[i]] = std::move(c);
        }
        return phi;
    }
};

SearchResult solve_ansatz(const Ansatz& a, const Flow& residual, Parity parity, const SearchOptions& opts) {
    SearchResult res;
    res.ansatz_size = static_cast<size_t>(a.size);
    LinearSystem ls;
    ls.num_unknowns = a.size;
    for (const auto& [u, r] : residual.components) append_equations(ls, r);
    res.equations = ls.equations.size();
    for (const auto& br : solve_linear(ls, opts.solve)) {
        FlowBranch fb;
        fb.conditions = br.conditions;
        fb.consistent = br.consistent;
        fb.split_limit_reached = br.split_limit_reached;
        if (br.consistent)
            for (const auto& v : br.basis) fb.basis.push_back(a.flow(parity, v));
        res.branches.push_back(std::move(fb));
    }
    return res;
}

std::vector<const Symbol*> coefficient_vars(const Covering& c, bool nonlocal) {
    std::vector<const Symbol*> vars = c.system().fields;
    if (nonlocal)
        for (const auto& nl : c.nonlocalities()) vars.push_back(nl.symbol);
    return vars;
}

}  // namespace

SearchResult find_symmetries(const Covering& c, const WeightSystem& ws0, const Rational& weight, Parity parity,
                             const SearchOptions& opts) {
    WeightSystem ws = covering_weights(c, ws0);
    auto vars = coefficient_vars(c, opts.nonlocal_coefficients);
    Ansatz a;
    for (auto u : c.system().fields) {
        Rational target = ws.of(u) - weight;
        std::vector<SuperPoly> terms;
        if (target >= 0) {
            auto atoms = jet_atoms(vars, ws, target, &c);
            for (const auto& m : enumerate_monomials(ws, target, u->parity + parity, atoms, opts.enumerate))
                terms.push_back(SuperPoly::from_term(m, 1));
        }
        a.size += static_cast<int>(terms.size());
        a.fields.push_back(u);
        a.terms.push_back(std::move(terms));
    }
    return solve_ansatz(a, check_symmetry(c, a.flow(parity)), parity, opts);
}

SearchResult find_shadows(const PhantomSystem& ps, const WeightSystem& ws0, const Rational& weight,
                          const SearchOptions& opts) {
    WeightSystem ws = phantom_weights(ps, ws0);
    auto vars = coefficient_vars(ps.base, opts.nonlocal_coefficients);
    std::vector<const Symbol*> phantoms = ps.local_phantoms;
    phantoms.insert(phantoms.end(), ps.nonlocal_phantoms.begin(), ps.nonlocal_phantoms.end());
    Ansatz a;
    for (auto u : ps.base.system().fields) {
        Rational target = ws.of(u) - weight;
        std::vector<SuperPoly> terms;
        if (target >= 0) {
            auto coeff_atoms = jet_atoms(vars, ws, target, &ps.base);
            for (const Atom& p : jet_atoms(phantoms, ws, target, &ps.covering)) {
                Rational rest = target - ws.of(p);
                SuperPoly pj = SuperPoly::from_atom(p);
                for (const auto& m : enumerate_monomials(ws, rest, u->parity + p.parity(), coeff_atoms, opts.enumerate))
                    terms.push_back(SuperPoly::from_term(m, 1) * pj);
            }
        }
        a.size += static_cast<int>(terms.size());
        a.fields.push_back(u);
        a.terms.push_back(std::move(terms));
    }
    return solve_ansatz(a, verify_shadow(ps, a.flow(Parity::even)), Parity::even, opts);
}

bool in_span(const Flow& phi, const std::vector<Flow>& basis) {
    const int n = static_cast<int>(basis.size());
    std::map<std::pair<const Symbol*, Monomial>, LinearEquation> rows;
    auto key_of = [](const Symbol* u, const Monomial& m) { return std::make_pair(u, m); };
    for (int j = 0; j < n; ++j)
        for (const auto& [u, c] : basis[j].components)
            for (auto& [m, coeff] : split_params(c)) rows[key_of(u, m)].coeffs[j] += coeff;
    for (const auto& [u, c] : phi.components)
        for (auto& [m, coeff] : split_params(c)) rows[key_of(u, m)].rhs += coeff;
    LinearSystem ls;
    ls.num_unknowns = n;
    for (auto& [k, eq] : rows) ls.equations.push_back(std::move(eq));
    auto branches = solve_linear(ls, SolveOptions{{}, true, 0});
    return branches.front().consistent;
}

}  // namespace superjet
