#include "superjet/gardner.hpp"

#include "superjet/printer.hpp"

#include <functional>

namespace superjet {

SuperPoly eps_coefficient(const SuperPoly& p, const Symbol* eps, int k) {
    SuperPoly out;
    for (const auto& [m, c] : p.terms()) {
        if (m.params.exponent_of(eps) != k) continue;
        Monomial r = m;
        r.params = m.params * ParamMonomial::power(eps, -k);
        out.add_term(r, c);
    }
    return out;
}

int eps_degree(const SuperPoly& p, const Symbol* eps) {
    int d = 0;
    for (const auto& [m, c] : p.terms()) d = std::max(d, m.params.exponent_of(eps));
    return d;
}

void MiuraMap::validate() const {
    if (base.size() != source.size() || base.size() != images.size())
        throw Error("Miura map needs one image per base field");
    for (size_t i = 0; i < base.size(); ++i) {
        if (base[i]->parity != source[i]->parity) throw ParityMismatch("source " + source[i]->name + " has the wrong parity");
        if (!(eps_coefficient(images[i], eps, 0) == SuperPoly::from_atom(Atom::jet(source[i]))))
            throw Error("eps^0 part of the image of " + base[i]->name + " is not " + source[i]->name);
    }
}

EvolutionSystem hamiltonian_system(const HamiltonianOperator& A, const SuperPoly& h,
                                   const std::vector<const Symbol*>& fields) {
    EvolutionSystem s;
    s.fields = fields;
    s.rhs = hamiltonian_flow(A, h, fields).components;
    return s;
}

namespace {

std::map<const Symbol*, SuperPoly, SymbolLess> field_images(const std::vector<const Symbol*>& from,
                                                             const std::vector<SuperPoly>& to) {
    std::map<const Symbol*, SuperPoly, SymbolLess> out;
    for (size_t i = 0; i < from.size(); ++i) out[from[i]] = to[i];
    return out;
}

std::vector<SuperPoly> residual(const EvolutionSystem& base, const EvolutionSystem& extended,
                                const std::vector<const Symbol*>& base_fields, const std::vector<SuperPoly>& images) {
    Covering ext(extended);
    auto subs = field_images(base_fields, images);
    std::vector<SuperPoly> out;
    for (size_t i = 0; i < base_fields.size(); ++i)
        out.push_back(ext.dt(images[i]) - substitute(base.rhs.at(base_fields[i]), subs));
    return out;
}

SuperPoly eps_power(const Symbol* eps, int k) { return SuperPoly::from_param(eps, k); }

}  // namespace

std::vector<SuperPoly> verify_deformation(const EvolutionSystem& base, const EvolutionSystem& extended,
                                          const MiuraMap& m) {
    m.validate();
    return residual(base, extended, m.base, m.images);
}

std::vector<std::vector<SuperPoly>> density_recurrence(const MiuraMap& m, int n) {
    m.validate();
    std::vector<std::vector<SuperPoly>> dens(m.base.size());
    for (size_t i = 0; i < m.base.size(); ++i) dens[i].push_back(SuperPoly::from_atom(Atom::jet(m.base[i])));
    for (int k = 1; k <= n; ++k) {
        // Truncated expansions of the sources; the eps^k part of images - source only
        // involves orders below k.
        std::vector<SuperPoly> partial;
        for (const auto& d : dens) {
            SuperPoly s;
            for (int l = 0; l < k; ++l) s += eps_power(m.eps, l) * d[l];
            partial.push_back(std::move(s));
        }
        auto subs = field_images(m.source, partial);
        std::vector<SuperPoly> next;
        for (size_t i = 0; i < m.base.size(); ++i) {
            SuperPoly shift = m.images[i] - SuperPoly::from_atom(Atom::jet(m.source[i]));
            next.push_back(-eps_coefficient(substitute(shift, subs), m.eps, k));
        }
        for (size_t i = 0; i < m.base.size(); ++i) dens[i].push_back(std::move(next[i]));
    }
    return dens;
}

SuperPoly superfield_density_lift(const SuperPoly& density,
                                  const std::map<const Symbol*, SuperPoly, SymbolLess>& images) {
    return substitute(density, images);
}

bool Deformation::exact() const { return remainder.empty(); }

namespace {

struct Stage {
    std::vector<SuperPoly> images;
    SuperPoly hamiltonian;
    std::vector<Condition> conditions;
    std::vector<const Symbol*> free;
};

struct AnsatzTerm {
    int component;  // -1: Hamiltonian
    SuperPoly term;
};

}  // namespace

DeformationSearch search_deformation(const DeformationProblem& p, int max_order, const SolveOptions& solve) {
    if (p.base.size() != p.source.size()) throw Error("deformation needs one source per base field");
    WeightSystem ws = p.ws;
    for (size_t i = 0; i < p.base.size(); ++i) ws.set(p.source[i], ws.of(p.base[i]));
    const Rational eps_w = ws.of(p.eps);
    const Rational h_w = homogeneous_weight(p.hamiltonian, ws);
    const Parity h_par = homogeneous_parity(p.hamiltonian);
    const EvolutionSystem base = hamiltonian_system(p.op, p.hamiltonian, p.base);

    std::vector<SuperPoly> identity;
    for (auto w : p.source) identity.push_back(SuperPoly::from_atom(Atom::jet(w)));
    Stage start{identity, substitute(p.hamiltonian, field_images(p.base, identity)), {}, {}};

    auto monomials = [&](const Rational& target, Parity par) {
        std::vector<Atom> atoms;
        for (const Atom& a : jet_atoms(p.source, ws, target))
            if (!p.max_jet_order || a.m <= *p.max_jet_order) atoms.push_back(a);
        return enumerate_monomials(ws, target, par, atoms, p.enumerate);
    };

    DeformationSearch out;
    int deepest_failure = 0;
    std::function<void(int, const Stage&)> step = [&](int k, const Stage& st) {
        if (k > max_order) {
            Deformation d;
            d.map = MiuraMap{p.eps, p.base, p.source, st.images};
            d.hamiltonian = st.hamiltonian;
            d.conditions = st.conditions;
            d.free = st.free;
            auto res = residual(base, hamiltonian_system(p.op, st.hamiltonian, p.source), p.base, st.images);
            bool zero = true;
            for (const auto& r : res) zero = zero && r.is_zero();
            if (!zero) d.remainder = std::move(res);
            out.solutions.push_back(std::move(d));
            return;
        }
        std::vector<AnsatzTerm> terms;
        for (size_t i = 0; i < p.base.size(); ++i)
            for (const auto& m : monomials(ws.of(p.base[i]) - eps_w * k, p.base[i]->parity))
                terms.push_back({static_cast<int>(i), SuperPoly::from_term(m, 1)});
        for (const auto& m : monomials(h_w - eps_w * k, h_par)) terms.push_back({-1, SuperPoly::from_term(m, 1)});

        std::vector<SuperPoly> images = st.images;
        SuperPoly h = st.hamiltonian;
        const SuperPoly ek = eps_power(p.eps, k);
        for (size_t j = 0; j < terms.size(); ++j) {
            SuperPoly t = ek * (unknown_atom(static_cast<int>(j)) * terms[j].term);
            if (terms[j].component < 0) h += t;
            else images[terms[j].component] += t;
        }
        LinearSystem ls;
        ls.num_unknowns = static_cast<int>(terms.size());
        for (const auto& r : residual(base, hamiltonian_system(p.op, h, p.source), p.base, images))
            append_equations(ls, eps_coefficient(r, p.eps, k));
        for (const auto& pin : p.pins) {
            if (pin.order != k) continue;
            LinearEquation eq;
            eq.rhs = SuperPoly(pin.value);
            for (size_t j = 0; j < terms.size(); ++j)
                if (terms[j].component == pin.component && terms[j].term == pin.monomial) eq.coeffs[static_cast<int>(j)] = SuperPoly(1);
            ls.equations.push_back(std::move(eq));
        }
        bool any = false;
        for (const auto& br : solve_linear(ls, solve)) {
            if (!br.consistent) continue;
            if (!is_monomial(br.denominator))
                throw Error("order " + std::to_string(k) + " needs division by " + to_string(br.denominator));
            any = true;
            Stage next = st;
            next.conditions.insert(next.conditions.end(), br.conditions.begin(), br.conditions.end());
            ParamPoly inv = monomial_inverse(br.denominator);
            std::vector<ParamPoly> values;
            for (const auto& x : br.particular) values.push_back(x * inv);
            for (size_t b = 0; b < br.basis.size(); ++b) {
                const Symbol* t = make_param("k" + std::to_string(k) + "_" + std::to_string(b));
                next.free.push_back(t);
                for (size_t j = 0; j < values.size(); ++j) values[j] += SuperPoly::from_param(t) * br.basis[b][j];
            }
            next.images.clear();
            for (const auto& im : images) next.images.push_back(assign_unknowns(im, values));
            next.hamiltonian = assign_unknowns(h, values);
            step(k + 1, next);
        }
        if (!any) deepest_failure = std::max(deepest_failure, k);
    };
    step(1, start);
    if (out.solutions.empty()) {
        out.inconsistent_order = deepest_failure;
        out.report = "no deformation: the equations at order " + std::to_string(deepest_failure) + " are inconsistent";
    } else {
        out.report = std::to_string(out.solutions.size()) + " branch(es) up to order " + std::to_string(max_order);
    }
    return out;
}

}  // namespace superjet
