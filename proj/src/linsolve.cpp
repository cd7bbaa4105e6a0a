#include "superjet/linsolve.hpp"

#include "superjet/printer.hpp"

#include <algorithm>

namespace superjet {

bool is_param_poly(const SuperPoly& p) {
    for (const auto& [m, c] : p.terms())
        if (!m.factors.empty()) return false;
    return true;
}

bool is_monomial(const ParamPoly& p) { return p.size() == 1 && p.terms().begin()->first.factors.empty(); }

ParamPoly monomial_inverse(const ParamPoly& p) {
    if (!is_monomial(p)) throw Error("not an invertible monomial: " + to_string(p));
    const auto& [m, c] = *p.terms().begin();
    return SuperPoly::from_term(Monomial{{}, m.params.inverse()}, 1 / c);
}

ParamPoly set_param_zero(const ParamPoly& p, const Symbol* param) {
    ParamPoly r;
    for (const auto& [m, c] : p.terms()) {
        int e = m.params.exponent_of(param);
        if (e < 0) throw Error("cannot set " + param->name + " to zero in a negative power");
        if (e == 0) r.add_term(m, c);
    }
    return r;
}

std::string to_string(const Condition& c) { return to_string(c.expr) + (c.nonzero ? " != 0" : " = 0"); }

namespace {

using Row = std::map<int, ParamPoly>;

struct State {
    std::vector<Row> rows;
    std::vector<ParamPoly> rhs;
    std::vector<int> pivot_col;  // -1 while the row is active
    std::set<const Symbol*, SymbolLess> nonzero;
    std::vector<Condition> conditions;
    int depth = 0;
    bool limit_reached = false;
};

// Parameters of a monomial that are not known to be nonzero.
std::vector<const Symbol*> unknown_sign_params(const ParamPoly& p, const State& st, bool generic) {
    std::vector<const Symbol*> out;
    if (generic) return out;
    for (const auto& pw : p.terms().begin()->first.params.powers())
        if (!st.nonzero.count(pw.param)) out.push_back(pw.param);
    return out;
}

int score(const ParamPoly& p, const State& st, bool generic) {
    if (!is_monomial(p)) return 3;
    if (p.terms().begin()->first.params.empty()) return 0;
    return unknown_sign_params(p, st, generic).empty() ? 1 : 2;
}

void substitute_zero(State& st, const Symbol* param) {
    for (size_t r = 0; r < st.rows.size(); ++r) {
        Row next;
        for (auto& [c, v] : st.rows[r]) {
            ParamPoly z = set_param_zero(v, param);
            if (!z.is_zero()) next.emplace(c, std::move(z));
        }
        st.rows[r] = std::move(next);
        st.rhs[r] = set_param_zero(st.rhs[r], param);
        if (st.pivot_col[r] >= 0 && !st.rows[r].count(st.pivot_col[r])) st.pivot_col[r] = -1;
    }
}

void eliminate(State& st, size_t pr, int col, bool unit) {
    if (unit) {
        ParamPoly inv = monomial_inverse(st.rows[pr].at(col));
        for (auto& [c, v] : st.rows[pr]) v = inv * v;
        st.rhs[pr] = inv * st.rhs[pr];
    }
    const ParamPoly p = st.rows[pr].at(col);
    for (size_t r = 0; r < st.rows.size(); ++r) {
        if (r == pr) continue;
        auto it = st.rows[r].find(col);
        if (it == st.rows[r].end()) continue;
        ParamPoly a = it->second;
        Row& row = st.rows[r];
        if (!unit) {
            for (auto& [c, v] : row) v = p * v;
            st.rhs[r] = p * st.rhs[r];
        }
        for (const auto& [c, v] : st.rows[pr]) {
            ParamPoly& dst = row[c];
            dst -= a * v;
            if (dst.is_zero()) row.erase(c);
        }
        st.rhs[r] -= a * st.rhs[pr];
        if (st.pivot_col[r] >= 0 && !row.count(st.pivot_col[r])) st.pivot_col[r] = -1;
    }
    st.pivot_col[pr] = col;
}

SolutionBranch extract(const State& st, int n, bool generic) {
    SolutionBranch br;
    br.conditions = st.conditions;
    br.split_limit_reached = st.limit_reached;
    std::vector<int> row_of(static_cast<size_t>(n), -1);
    for (size_t r = 0; r < st.rows.size(); ++r)
        if (st.pivot_col[r] >= 0) row_of[static_cast<size_t>(st.pivot_col[r])] = static_cast<int>(r);
    auto is_unit = [&](const ParamPoly& p) { return is_monomial(p) && (generic || true); };
    // common denominator from non-unit pivots
    ParamPoly L(1);
    for (size_t r = 0; r < st.rows.size(); ++r)
        if (st.pivot_col[r] >= 0 && !is_unit(st.rows[r].at(st.pivot_col[r]))) L = L * st.rows[r].at(st.pivot_col[r]);
    br.denominator = L;
    br.particular.assign(static_cast<size_t>(n), ParamPoly{});
    for (int c = 0; c < n; ++c) {
        int r = row_of[static_cast<size_t>(c)];
        if (r < 0) continue;
        const ParamPoly& P = st.rows[static_cast<size_t>(r)].at(c);
        const ParamPoly& rhs = st.rhs[static_cast<size_t>(r)];
        if (rhs.is_zero()) continue;
        if (is_unit(P)) {
            br.particular[static_cast<size_t>(c)] = L * monomial_inverse(P) * rhs;
        } else {
            ParamPoly others(1);
            for (size_t r2 = 0; r2 < st.rows.size(); ++r2)
                if (st.pivot_col[r2] >= 0 && static_cast<int>(r2) != r && !is_unit(st.rows[r2].at(st.pivot_col[r2])))
                    others = others * st.rows[r2].at(st.pivot_col[r2]);
            br.particular[static_cast<size_t>(c)] = others * rhs;
        }
    }
    for (int k = 0; k < n; ++k) {
        if (row_of[static_cast<size_t>(k)] >= 0) continue;
        br.free_unknowns.push_back(k);
        ParamPoly Lk(1);
        for (size_t r = 0; r < st.rows.size(); ++r)
            if (st.pivot_col[r] >= 0 && st.rows[r].count(k) && !is_unit(st.rows[r].at(st.pivot_col[r])))
                Lk = Lk * st.rows[r].at(st.pivot_col[r]);
        std::vector<ParamPoly> v(static_cast<size_t>(n));
        v[static_cast<size_t>(k)] = Lk;
        for (size_t r = 0; r < st.rows.size(); ++r) {
            if (st.pivot_col[r] < 0) continue;
            auto it = st.rows[r].find(k);
            if (it == st.rows[r].end()) continue;
            const ParamPoly& P = st.rows[r].at(st.pivot_col[r]);
            ParamPoly val = -(it->second * Lk);
            if (is_unit(P)) {
                val = monomial_inverse(P) * val;
            } else {
                // exact division by P: Lk contains P as a factor
                ParamPoly q(1);
                for (size_t r2 = 0; r2 < st.rows.size(); ++r2)
                    if (r2 != r && st.pivot_col[r2] >= 0 && st.rows[r2].count(k) &&
                        !is_unit(st.rows[r2].at(st.pivot_col[r2])))
                        q = q * st.rows[r2].at(st.pivot_col[r2]);
                val = -(it->second * q);
            }
            v[static_cast<size_t>(st.pivot_col[r])] = val;
        }
        normalize_vector(v);
        br.basis.push_back(std::move(v));
    }
    return br;
}

void solve_rec(State st, int n, const SolveOptions& opts, std::vector<SolutionBranch>& out) {
    for (;;) {
        // pick a pivot among active rows
        int best_score = 4;
        size_t best_row = 0, best_len = 0;
        int best_col = -1;
        for (size_t r = 0; r < st.rows.size(); ++r) {
            if (st.pivot_col[r] >= 0 || st.rows[r].empty()) continue;
            for (const auto& [c, v] : st.rows[r]) {
                int s = score(v, st, opts.generic);
                size_t len = st.rows[r].size();
                if (s < best_score || (s == best_score && len < best_len)) {
                    best_score = s, best_row = r, best_col = c, best_len = len;
                }
            }
            if (best_score == 0 && best_len == 1) break;
        }
        if (best_col < 0) break;
        const ParamPoly pivot = st.rows[best_row].at(best_col);
        if (best_score == 2) {
            auto params = unknown_sign_params(pivot, st, opts.generic);
            if (st.depth < opts.max_split_depth) {
                const Symbol* pi = params.front();
                State zero = st;
                zero.depth += 1;
                zero.conditions.push_back({SuperPoly::from_param(pi), false});
                substitute_zero(zero, pi);
                solve_rec(std::move(zero), n, opts, out);
                st.depth += 1;
                st.conditions.push_back({SuperPoly::from_param(pi), true});
                st.nonzero.insert(pi);
                continue;
            }
            st.limit_reached = true;
            for (auto pi : params) {
                st.nonzero.insert(pi);
                st.conditions.push_back({SuperPoly::from_param(pi), true});
            }
        }
        bool unit = best_score <= 2;
        if (!unit) st.conditions.push_back({pivot, true});
        eliminate(st, best_row, best_col, unit);
    }
    // leftover rows with no coefficients
    for (size_t r = 0; r < st.rows.size(); ++r) {
        if (st.pivot_col[r] >= 0 || st.rhs[r].is_zero()) continue;
        const ParamPoly& b = st.rhs[r];
        if (is_monomial(b)) {
            auto params = unknown_sign_params(b, st, opts.generic);
            if (!params.empty() && st.depth < opts.max_split_depth) {
                const Symbol* pi = params.front();
                State zero = st;
                zero.depth += 1;
                zero.conditions.push_back({SuperPoly::from_param(pi), false});
                substitute_zero(zero, pi);
                solve_rec(std::move(zero), n, opts, out);
                st.conditions.push_back({SuperPoly::from_param(pi), true});
            }
        }
        SolutionBranch br;
        br.conditions = st.conditions;
        br.consistent = false;
        br.obstruction = b;
        br.split_limit_reached = st.limit_reached;
        out.push_back(std::move(br));
        return;
    }
    out.push_back(extract(st, n, opts.generic));
}

}  // namespace

std::vector<SolutionBranch> solve_linear(const LinearSystem& sys, const SolveOptions& opts) {
    State st;
    st.nonzero = opts.nonzero;
    for (const auto& eq : sys.equations) {
        Row row;
        for (const auto& [c, v] : eq.coeffs) {
            if (c < 0 || c >= sys.num_unknowns) throw Error("unknown index out of range");
            if (!is_param_poly(v) || !is_param_poly(eq.rhs)) throw Error("coefficients must be parameter polynomials");
            if (!v.is_zero()) row.emplace(c, v);
        }
        if (row.empty() && eq.rhs.is_zero()) continue;
        st.rows.push_back(std::move(row));
        st.rhs.push_back(eq.rhs);
        st.pivot_col.push_back(-1);
    }
    std::vector<SolutionBranch> out;
    solve_rec(std::move(st), sys.num_unknowns, opts, out);
    return out;
}

SuperPoly unknown_atom(int index) { return SuperPoly::from_atom(Atom::of(make_unknown(index))); }

void append_equations(LinearSystem& sys, const SuperPoly& residual) {
    std::map<Monomial, LinearEquation> eqs;
    for (const auto& [m, c] : residual.terms()) {
        Monomial key;
        int unknown = -1;
        for (const auto& f : m.factors) {
            if (f.atom.kind() == SymbolKind::unknown) {
                if (unknown >= 0 || f.exp > 1) throw NonlinearSystem("residual is not linear in the unknowns");
                unknown = unknown_index(f.atom.sym);
            } else {
                key.factors.push_back(f);
            }
        }
        ParamPoly coeff = SuperPoly::from_term(Monomial{{}, m.params}, c);
        LinearEquation& eq = eqs[key];
        if (unknown < 0) {
            eq.rhs -= coeff;
        } else {
            if (unknown >= sys.num_unknowns) throw Error("unknown index exceeds the declared count");
            eq.coeffs[unknown] += coeff;
        }
    }
    for (auto& [k, eq] : eqs) {
        for (auto it = eq.coeffs.begin(); it != eq.coeffs.end();)
            it = it->second.is_zero() ? eq.coeffs.erase(it) : std::next(it);
        if (!eq.coeffs.empty() || !eq.rhs.is_zero()) sys.equations.push_back(std::move(eq));
    }
}

LinearSystem extract_linear_system(const SuperPoly& residual, int num_unknowns) {
    LinearSystem sys;
    sys.num_unknowns = num_unknowns;
    append_equations(sys, residual);
    return sys;
}

SuperPoly assign_unknowns(const SuperPoly& p, const std::vector<ParamPoly>& values) {
    std::map<Atom, SuperPoly> images;
    for (size_t i = 0; i < values.size(); ++i) images.emplace(Atom::of(make_unknown(static_cast<int>(i))), values[i]);
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

void normalize_vector(std::vector<ParamPoly>& v) {
    for (auto& e : v) {
        if (e.is_zero()) continue;
        if (!is_monomial(e)) {
            // scale by the rational leading coefficient only
            Rational c = e.terms().begin()->second;
            for (auto& x : v) x *= 1 / c;
            return;
        }
        ParamPoly inv = monomial_inverse(e);
        for (auto& x : v) x = inv * x;
        return;
    }
}

}  // namespace superjet
