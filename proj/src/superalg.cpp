#include "superjet/superalg.hpp"

#include <algorithm>
#include <set>

namespace superjet {

Atom Atom::jet(const Symbol* field, unsigned m, int d1, int d2) {
    if (field->kind != SymbolKind::field) throw Error(field->name + " is not a field");
    if (d1 < 0 || d1 > 1 || d2 < 0 || d2 > 1) throw Error("jet index out of range");
    if ((d1 && field->n_susy < 1) || (d2 && field->n_susy < 2))
        throw DirectionError("direction exceeds the supersymmetry of " + field->name);
    return Atom{field, nullptr, m, static_cast<unsigned char>(d1), static_cast<unsigned char>(d2)};
}

Atom Atom::function(const Symbol* fn, const Symbol* arg, unsigned order) {
    if (fn->kind != SymbolKind::function) throw Error(fn->name + " is not a function symbol");
    if (arg->kind != SymbolKind::field || is_odd(arg->parity))
        throw ParityMismatch("function arguments must be even fields");
    return Atom{fn, arg, order, 0, 0};
}

Parity Atom::parity() const {
    switch (sym->kind) {
        case SymbolKind::field: return sym->parity + parity_from(d1 + d2);
        case SymbolKind::theta:
        case SymbolKind::clifford: return Parity::odd;
        default: return Parity::even;
    }
}

int compare(const Atom& a, const Atom& b) {
    if (int c = compare(a.sym, b.sym)) return c;
    if (a.sym->kind == SymbolKind::function) {
        if (a.m != b.m) return a.m < b.m ? -1 : 1;
        return compare(a.arg, b.arg);
    }
    if (a.half_order() != b.half_order()) return a.half_order() < b.half_order() ? -1 : 1;
    if (a.d2 != b.d2) return a.d2 < b.d2 ? -1 : 1;
    if (a.d1 != b.d1) return a.d1 < b.d1 ? -1 : 1;
    return 0;
}

Parity Monomial::parity() const {
    int n = 0;
    for (const auto& f : factors)
        if (is_odd(f.atom.parity())) n += static_cast<int>(f.exp);
    return parity_from(n);
}

unsigned Monomial::degree() const {
    unsigned d = 0;
    for (const auto& f : factors) d += f.exp;
    return d;
}

bool Monomial::contains(const Atom& a) const { return exponent_of(a) > 0; }

unsigned Monomial::exponent_of(const Atom& a) const {
    for (const auto& f : factors)
        if (f.atom == a) return f.exp;
    return 0;
}

int compare(const Monomial& a, const Monomial& b) {
    size_t n = std::min(a.factors.size(), b.factors.size());
    for (size_t i = 0; i < n; ++i) {
        if (int c = compare(a.factors[i].atom, b.factors[i].atom)) return c;
        if (a.factors[i].exp != b.factors[i].exp) return a.factors[i].exp < b.factors[i].exp ? -1 : 1;
    }
    if (a.factors.size() != b.factors.size()) return a.factors.size() < b.factors.size() ? -1 : 1;
    return compare(a.params, b.params);
}

int multiply(const Monomial& a, const Monomial& b, Monomial& out) {
    out.factors.clear();
    out.factors.reserve(a.factors.size() + b.factors.size());
    out.params = a.params * b.params;
    int odd_left = 0;  // odd factors of a not yet emitted
    for (const auto& f : a.factors)
        if (is_odd(f.atom.parity())) ++odd_left;
    int sign = 1;
    size_t i = 0, j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
        int c = i == a.factors.size() ? 1 : j == b.factors.size() ? -1 : compare(a.factors[i].atom, b.factors[j].atom);
        if (c < 0) {
            const Factor& f = a.factors[i++];
            if (is_odd(f.atom.parity())) --odd_left;
            out.factors.push_back(f);
        } else if (c > 0) {
            const Factor& f = b.factors[j++];
            if (is_odd(f.atom.parity()) && (odd_left & 1)) sign = -sign;
            out.factors.push_back(f);
        } else {
            const Factor& fa = a.factors[i++];
            const Factor& fb = b.factors[j++];
            if (!is_odd(fa.atom.parity())) {
                out.factors.push_back({fa.atom, fa.exp + fb.exp});
                continue;
            }
            if (fa.atom.is_nilpotent()) return 0;
            --odd_left;
            if (odd_left & 1) sign = -sign;
            const Symbol* s = fa.atom.sym;
            if (s->square_zero) return 0;
            out.params = out.params * s->square;
        }
    }
    return sign;
}

SuperPoly::SuperPoly(const Rational& c) {
    if (c != 0) terms_.emplace(Monomial{}, c);
}

SuperPoly SuperPoly::from_atom(const Atom& a, const Rational& c) {
    SuperPoly p;
    if (c != 0) p.terms_.emplace(Monomial{{Factor{a, 1}}, {}}, c);
    return p;
}

SuperPoly SuperPoly::from_param(const Symbol* param, int exponent) {
    SuperPoly p;
    p.terms_.emplace(Monomial{{}, ParamMonomial::power(param, exponent)}, Rational(1));
    return p;
}

SuperPoly SuperPoly::from_term(const Monomial& m, const Rational& c) {
    SuperPoly p;
    p.add_term(m, c);
    return p;
}

Rational SuperPoly::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<Rational> SuperPoly::as_constant() const {
    if (terms_.empty()) return Rational(0);
    if (terms_.size() == 1 && terms_.begin()->first.factors.empty() && terms_.begin()->first.params.empty())
        return terms_.begin()->second;
    return std::nullopt;
}

void SuperPoly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

SuperPoly& SuperPoly::operator+=(const SuperPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

SuperPoly& SuperPoly::operator-=(const SuperPoly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

SuperPoly& SuperPoly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_) v *= c;
    return *this;
}

SuperPoly SuperPoly::operator-() const {
    SuperPoly r = *this;
    for (auto& [m, v] : r.terms_) v = -v;
    return r;
}

SuperPoly operator*(const SuperPoly& a, const SuperPoly& b) {
    SuperPoly r;
    Monomial prod;
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            int s = multiply(ma, mb, prod);
            if (s == 0) continue;
            Rational c = ca * cb;
            if (s < 0) c = -c;
            r.add_term(prod, c);
        }
    return r;
}

SuperPoly mul(const SuperPoly& a, const SuperPoly& b) { return a * b; }

SuperPoly pow(const SuperPoly& a, unsigned n) {
    SuperPoly r(1);
    for (unsigned i = 0; i < n; ++i) r = r * a;
    return r;
}

SuperPoly monomial_times(const Monomial& left, const SuperPoly& p, const Monomial& right) {
    SuperPoly r;
    Monomial t1, t2;
    for (const auto& [m, c] : p.terms()) {
        int s1 = multiply(left, m, t1);
        if (s1 == 0) continue;
        int s2 = multiply(t1, right, t2);
        if (s2 == 0) continue;
        r.add_term(t2, s1 * s2 > 0 ? c : Rational(-c));
    }
    return r;
}

SuperPoly normalize(const std::vector<RawTerm>& terms) {
    SuperPoly r;
    for (const auto& t : terms) {
        Monomial acc{{}, t.params};
        int sign = 1;
        Monomial next;
        for (const Atom& a : t.atoms) {
            int s = multiply(acc, Monomial{{Factor{a, 1}}, {}}, next);
            if (s == 0) {
                sign = 0;
                break;
            }
            sign *= s;
            std::swap(acc, next);
        }
        if (sign != 0) r.add_term(acc, sign > 0 ? t.coeff : Rational(-t.coeff));
    }
    return r;
}

ParityReport parity_of(const SuperPoly& p) {
    ParityReport rep;
    for (const auto& [m, c] : p.terms()) (is_odd(m.parity()) ? rep.odd_terms : rep.even_terms).push_back(m);
    if (rep.odd_terms.empty()) rep.parity = Parity::even;
    else if (rep.even_terms.empty()) rep.parity = Parity::odd;
    return rep;
}

Parity homogeneous_parity(const SuperPoly& p) {
    auto rep = parity_of(p);
    if (!rep.parity) throw ParityMismatch("expression has mixed parity");
    return *rep.parity;
}

namespace {
SuperPoly substitute_impl(const SuperPoly& p, const std::function<const SuperPoly*(const Atom&)>& lookup) {
    SuperPoly r;
    for (const auto& [m, c] : p.terms()) {
        SuperPoly acc = SuperPoly::from_term(Monomial{{}, m.params}, c);
        for (const auto& f : m.factors) {
            const SuperPoly* img = lookup(f.atom);
            SuperPoly piece = img ? pow(*img, f.exp) : SuperPoly::from_term(Monomial{{f}, {}}, 1);
            acc = acc * piece;
            if (acc.is_zero()) break;
        }
        r += acc;
    }
    return r;
}
}  // namespace

SuperPoly substitute_atoms(const SuperPoly& p, const std::map<Atom, SuperPoly>& images) {
    for (const auto& [a, img] : images) {
        auto rep = parity_of(img);
        if (!img.is_zero() && rep.parity != a.parity())
            throw ParityMismatch("substitution image has the wrong parity");
    }
    return substitute_impl(p, [&](const Atom& a) -> const SuperPoly* {
        auto it = images.find(a);
        return it == images.end() ? nullptr : &it->second;
    });
}

SuperPoly apply_derivation(const SuperPoly& p, Parity q, const std::function<SuperPoly(const Atom&)>& image) {
    SuperPoly r;
    std::map<Atom, SuperPoly> cache;
    for (const auto& [m, c] : p.terms()) {
        int odd_before = 0;
        for (size_t i = 0; i < m.factors.size(); ++i) {
            const Factor& f = m.factors[i];
            bool odd_atom = is_odd(f.atom.parity());
            auto it = cache.find(f.atom);
            if (it == cache.end()) it = cache.emplace(f.atom, image(f.atom)).first;
            const SuperPoly& img = it->second;
            if (!img.is_zero()) {
                Monomial pre{{m.factors.begin(), m.factors.begin() + static_cast<long>(i)}, m.params};
                if (f.exp > 1) pre.factors.push_back({f.atom, f.exp - 1});
                Monomial post{{m.factors.begin() + static_cast<long>(i) + 1, m.factors.end()}, {}};
                Rational k = c * f.exp;
                if (is_odd(q) && (odd_before & 1)) k = -k;
                SuperPoly piece = monomial_times(pre, img, post);
                piece *= k;
                r += piece;
            }
            if (odd_atom) odd_before += static_cast<int>(f.exp);
        }
    }
    return r;
}

std::vector<Atom> atoms_of(const SuperPoly& p) {
    std::set<Atom> s;
    for (const auto& [m, c] : p.terms())
        for (const auto& f : m.factors) s.insert(f.atom);
    return {s.begin(), s.end()};
}

std::vector<const Symbol*> params_of(const SuperPoly& p) {
    std::set<const Symbol*, SymbolLess> s;
    for (const auto& [m, c] : p.terms())
        for (const auto& pw : m.params.powers()) s.insert(pw.param);
    return {s.begin(), s.end()};
}

bool has_kind(const SuperPoly& p, SymbolKind kind) {
    for (const auto& [m, c] : p.terms())
        for (const auto& f : m.factors)
            if (f.atom.sym->kind == kind) return true;
    return false;
}

std::map<Monomial, SuperPoly> split_params(const SuperPoly& p) {
    std::map<Monomial, SuperPoly> out;
    for (const auto& [m, c] : p.terms()) {
        Monomial key{m.factors, {}};
        out[key].add_term(Monomial{{}, m.params}, c);
    }
    return out;
}

}  // namespace superjet
