#include "superjet/weights.hpp"

#include "superjet/linsolve.hpp"
#include "superjet/printer.hpp"

#include <algorithm>
#include <set>

namespace superjet {

std::optional<Rational> WeightSystem::get(const Symbol* s) const {
    auto it = values.find(s);
    if (it == values.end()) return std::nullopt;
    return it->second;
}

Rational WeightSystem::of(const Symbol* s) const {
    if (s->kind == SymbolKind::unknown) return 0;
    if (s->kind == SymbolKind::theta) return frac(-1, 2);
    auto w = get(s);
    if (!w) throw UnweightedSymbol("no weight for " + s->name);
    return *w;
}

Rational WeightSystem::of(const Atom& a) const {
    switch (a.kind()) {
        case SymbolKind::field: return of(a.sym) + a.m + frac(a.d1 + a.d2, 2);
        case SymbolKind::function: return of(a.sym);
        default: return of(a.sym);
    }
}

Rational WeightSystem::of(const Monomial& m) const {
    Rational w = 0;
    for (const auto& f : m.factors) w += of(f.atom) * f.exp;
    for (const auto& p : m.params.powers()) w += of(p.param) * p.exponent;
    return w;
}

void WeightSystem::add_phantoms(const std::vector<const Symbol*>& fields) {
    for (auto u : fields)
        if (auto w = get(u)) set(phantom_of(u), *w);
}

WeightReport weight_of(const SuperPoly& p, const WeightSystem& ws) {
    WeightReport rep;
    bool homogeneous = true;
    for (const auto& [m, c] : p.terms()) {
        Rational w = ws.of(m);
        if (!rep.term_weights.empty() && rep.term_weights.front().second != w) homogeneous = false;
        rep.term_weights.emplace_back(m, w);
    }
    if (homogeneous && !rep.term_weights.empty()) rep.weight = rep.term_weights.front().second;
    return rep;
}

Rational homogeneous_weight(const SuperPoly& p, const WeightSystem& ws) {
    auto rep = weight_of(p, ws);
    if (!rep.weight) throw Error(p.is_zero() ? "zero polynomial has no weight" : "inhomogeneous polynomial: " + to_string(p));
    return *rep.weight;
}

WeightSystem WeightFamily::particular_system() const {
    WeightSystem ws;
    for (size_t i = 0; i < symbols.size(); ++i) ws.set(symbols[i], particular[i]);
    ws.time = particular.back();
    return ws;
}

WeightFamily infer_weights(const EvolutionSystem& sys, const WeightConstraints& cons) {
    std::vector<const Symbol*> syms = sys.fields;
    std::set<const Symbol*, SymbolLess> extra;
    for (auto u : sys.fields)
        for (const auto& [m, c] : sys.rhs.at(u).terms()) {
            for (const auto& pw : m.params.powers())
                if (cons.weighted_params || cons.fixed.count(pw.param)) extra.insert(pw.param);
            for (const auto& f : m.factors) {
                if (f.atom.kind() == SymbolKind::function) throw Error("cannot infer weights through function symbols");
                if (f.atom.kind() == SymbolKind::clifford) extra.insert(f.atom.sym);
                if (f.atom.is_jet() && !sys.has_field(f.atom.sym))
                    throw UndeclaredSymbol(f.atom.sym->name + " is not a field of the system");
            }
        }
    syms.insert(syms.end(), extra.begin(), extra.end());
    auto index = [&](const Symbol* s) -> int {
        for (size_t i = 0; i < syms.size(); ++i)
            if (syms[i] == s) return static_cast<int>(i);
        return -1;
    };
    const int n = static_cast<int>(syms.size()) + 1;
    const int t = n - 1;
    LinearSystem ls;
    ls.num_unknowns = n;
    for (auto u : sys.fields)
        for (const auto& [m, c] : sys.rhs.at(u).terms()) {
            // sum of atom weights - [u] + [t] = 0
            std::map<int, Rational> row;
            Rational constant = 0;
            for (const auto& f : m.factors) {
                if (f.atom.is_jet()) {
                    row[index(f.atom.sym)] += f.exp;
                    constant += Rational(f.exp) * (Rational(f.atom.m) + frac(f.atom.d1 + f.atom.d2, 2));
                } else if (f.atom.kind() == SymbolKind::clifford) {
                    row[index(f.atom.sym)] += f.exp;
                } else if (f.atom.kind() == SymbolKind::theta) {
                    constant += frac(-1, 2) * f.exp;
                }
            }
            for (const auto& pw : m.params.powers()) {
                int k = index(pw.param);
                if (k >= 0) row[k] += pw.exponent;
            }
            row[index(u)] -= 1;
            row[t] += 1;
            LinearEquation eq;
            for (auto& [k, v] : row)
                if (v != 0) eq.coeffs[k] = SuperPoly(v);
            eq.rhs = SuperPoly(-constant);
            ls.equations.push_back(std::move(eq));
        }
    for (const auto& [s, v] : cons.fixed) {
        int k = index(s);
        if (k < 0) continue;
        LinearEquation eq;
        eq.coeffs[k] = SuperPoly(1);
        eq.rhs = SuperPoly(v);
        ls.equations.push_back(std::move(eq));
    }
    if (cons.time) {
        LinearEquation eq;
        eq.coeffs[t] = SuperPoly(1);
        eq.rhs = SuperPoly(*cons.time);
        ls.equations.push_back(std::move(eq));
    }
    auto branches = solve_linear(ls, SolveOptions{{}, true, 0});
    const SolutionBranch& br = branches.front();
    if (!br.consistent) throw Error("no homogeneous weight assignment exists");
    auto num = [](const ParamPoly& p) { return *p.as_constant(); };
    WeightFamily fam;
    fam.symbols = syms;
    Rational den = num(br.denominator);
    for (const auto& p : br.particular) fam.particular.push_back(num(p) / den);
    for (const auto& v : br.basis) {
        std::vector<Rational> row;
        for (const auto& p : v) row.push_back(num(p));
        fam.basis.push_back(std::move(row));
    }
    return fam;
}

std::vector<Atom> jet_atoms(const std::vector<const Symbol*>& vars, const WeightSystem& ws, const Rational& max_weight,
                            const Covering* ctx) {
    std::vector<Atom> out;
    for (auto u : vars) {
        Rational base = ws.of(u);
        for (unsigned m = 0;; ++m) {
            bool any = false;
            for (int d2 = 0; d2 <= (u->n_susy >= 2 ? 1 : 0); ++d2)
                for (int d1 = 0; d1 <= (u->n_susy >= 1 ? 1 : 0); ++d1) {
                    Atom a = Atom::jet(u, m, d1, d2);
                    if (ws.of(a) > max_weight) continue;
                    any = true;
                    if (ctx && !(ctx->jet(a) == SuperPoly::from_atom(a))) continue;
                    out.push_back(a);
                }
            if (!any && base + m > max_weight) break;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Monomial> enumerate_monomials(const WeightSystem& ws, const Rational& target, Parity parity,
                                          const std::vector<Atom>& candidates, const EnumerateOptions& opts) {
    std::vector<Atom> atoms = candidates;
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    std::vector<Rational> w;
    std::vector<int> cap;
    for (const Atom& a : atoms) {
        Rational x = ws.of(a);
        if (x < 0) throw EnumerationError("negative weight atom " + to_string(a) + " makes the ansatz unbounded");
        int c = -1;  // -1: bounded by weight
        if (a.is_nilpotent()) c = 1;
        if (auto it = opts.caps.find(a.sym); it != opts.caps.end()) c = c < 0 ? it->second : std::min(c, it->second);
        else if (x == 0 && !is_odd(a.parity())) {
            if (!opts.zero_weight_cap) throw EnumerationError("zero-weight atom " + to_string(a) + " needs a degree cap");
            c = *opts.zero_weight_cap;
        }
        w.push_back(x);
        cap.push_back(c);
    }
    std::vector<Monomial> out;
    Monomial cur;
    unsigned degree = 0;
    std::function<void(size_t, Rational, int)> rec = [&](size_t i, Rational rem, int odd) {
        if (i == atoms.size()) {
            if (rem == 0 && parity_from(odd) == parity) out.push_back(cur);
            return;
        }
        rec(i + 1, rem, odd);
        int limit = cap[i];
        for (int e = 1;; ++e) {
            if (limit >= 0 && e > limit) break;
            if (w[i] > 0 && w[i] * e > rem) break;
            if (w[i] == 0 && limit < 0) break;
            if (opts.max_degree && degree + e > *opts.max_degree) break;
            cur.factors.push_back({atoms[i], static_cast<unsigned>(e)});
            degree += e;
            rec(i + 1, rem - w[i] * e, odd + (is_odd(atoms[i].parity()) ? e : 0));
            degree -= e;
            cur.factors.pop_back();
        }
    };
    if (target >= 0) rec(0, target, 0);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Monomial> enumerate_monomials(const WeightSystem& ws, const Rational& target, Parity parity,
                                          const std::vector<const Symbol*>& vars, const EnumerateOptions& opts) {
    return enumerate_monomials(ws, target, parity, jet_atoms(vars, ws, target), opts);
}

}  // namespace superjet
