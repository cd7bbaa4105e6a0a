#include "superjet/printer.hpp"

namespace superjet {

std::string to_string(const Atom& a) {
    switch (a.kind()) {
        case SymbolKind::field: {
            std::string s;
            if (a.sym->n_susy >= 2) {
                if (a.d1) s += "D1";
                if (a.d2) s += "D2";
            } else if (a.d1) {
                s += "D";
            }
            s += a.sym->name;
            if (a.m > 0) s += "_" + std::string(a.m, 'x');
            return s;
        }
        case SymbolKind::function: return a.sym->name + std::string(a.m, '\'') + "(" + a.arg->name + ")";
        default: return a.sym->name;
    }
}

std::string to_string(const ParamMonomial& m) {
    std::string s;
    for (const auto& p : m.powers()) {
        if (!s.empty()) s += "*";
        s += p.param->name;
        if (p.exponent != 1) s += "^" + std::to_string(p.exponent);
    }
    return s;
}

std::string to_string(const Monomial& m) {
    std::string s = to_string(m.params);
    for (const auto& f : m.factors) {
        if (!s.empty()) s += "*";
        s += to_string(f.atom);
        if (f.exp != 1) s += "^" + std::to_string(f.exp);
    }
    return s;
}

std::string to_string(const SuperPoly& p) {
    if (p.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : p.terms()) {
        bool neg = c < 0;
        Rational a = neg ? Rational(-c) : c;
        std::string body = to_string(m);
        std::string term;
        if (body.empty()) term = to_string(a);
        else if (a == 1) term = body;
        else term = to_string(a) + "*" + body;
        if (first) s += (neg ? "-" : "") + term;
        else s += (neg ? " - " : " + ") + term;
        first = false;
    }
    return s;
}

std::string to_string(const FieldMap& components, std::string_view sep) {
    std::string s;
    for (const auto& [u, p] : components) {
        if (!s.empty()) s += sep;
        s += u->name + ": " + to_string(p);
    }
    return s;
}

std::string to_string(const Flow& f) { return "(" + to_string(f.components) + ")"; }

std::string to_string(const EvolutionSystem& sys, std::string_view sep) {
    std::string s;
    for (auto u : sys.fields) {
        if (!s.empty()) s += sep;
        s += u->name + "_t = " + to_string(sys.rhs.at(u));
    }
    return s;
}

}  // namespace superjet
