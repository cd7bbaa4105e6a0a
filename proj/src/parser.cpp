#include "superjet/parser.hpp"

#include "superjet/printer.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace superjet {

SyntaxError::SyntaxError(const std::string& what, int line_, int column_)
    : Error(std::to_string(line_) + ":" + std::to_string(column_) + ": " + what), line(line_), column(column_) {}

const Symbol* SourceDocument::lookup(const std::string& name) const {
    for (auto list : {&fields, &params, &functions, &auxiliaries})
        for (auto s : *list)
            if (s->name == name) return s;
    for (const auto& nl : nonlocal)
        if (nl.symbol->name == name) return nl.symbol;
    return nullptr;
}

Covering SourceDocument::covering() const { return Covering(system, nonlocal); }

const NamedFlow* SourceDocument::flow(const std::string& name) const {
    for (const auto& f : flows)
        if (f.name == name) return &f;
    return nullptr;
}

const NamedShadow* SourceDocument::shadow(const std::string& name) const {
    for (const auto& s : shadows)
        if (s.name == name) return &s;
    return nullptr;
}

const NamedDensity* SourceDocument::density(const std::string& name) const {
    for (const auto& d : densities)
        if (d.name == name) return &d;
    return nullptr;
}

std::vector<SuperPoly> SourceDocument::expressions() const {
    std::vector<SuperPoly> out;
    for (const auto& sys : {&system, &extended})
        for (const auto& [u, p] : sys->rhs) out.push_back(p);
    for (const auto& nl : nonlocal)
        for (const auto& [d, p] : nl.defs) out.push_back(p);
    if (miura)
        for (const auto& p : miura->images) out.push_back(p);
    for (const auto& f : flows)
        for (const auto& [u, p] : f.flow.components) out.push_back(p);
    for (const auto& s : shadows)
        for (const auto& [u, p] : s.shadow.components) out.push_back(p);
    for (const auto& d : densities) out.push_back(d.density);
    for (const auto& c : claims) out.push_back(c.claim.rhs);
    for (const auto& e : expansions) out.insert(out.end(), e.terms.begin(), e.terms.end());
    for (const auto& p : pins) out.push_back(p.monomial);
    return out;
}

namespace {

enum class Tok { ident, integer, punct, end };

struct Token {
    Tok kind = Tok::end;
    std::string text;
    int line = 1, column = 1;
};

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto advance = [&](size_t n) {
        for (size_t k = 0; k < n; ++k, ++i) {
            if (s[i] == '\n') ++line, col = 1;
            else ++col;
        }
    };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < s.size() && s[i] != '\n') advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.column = col;
        size_t j = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            t.kind = Tok::ident;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            t.kind = Tok::integer;
        } else if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
            j = i + 2;
            t.kind = Tok::punct;
        } else if (std::string_view("+-*/^(),;:='").find(c) != std::string_view::npos) {
            j = i + 1;
            t.kind = Tok::punct;
        } else {
            throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
        }
        t.text = std::string(s.substr(i, j - i));
        advance(j - i);
        out.push_back(std::move(t));
    }
    Token e;
    e.line = line;
    e.column = col;
    out.push_back(e);
    return out;
}

bool is_derivative_word(const std::string& w) { return w == "D" || w == "D1" || w == "D2" || w == "Dx"; }

Direction direction_of(const std::string& w) {
    if (w == "D" || w == "D1") return Direction::D1;
    if (w == "D2") return Direction::D2;
    return Direction::Dx;
}

class Parser {
public:
    Parser(std::string_view text, SourceDocument& doc) : toks_(lex(text)), doc_(doc) {}

    void document() {
        while (!at_end()) statement();
    }

    SuperPoly whole_expression() {
        Token at = peek();
        SuperPoly p = expr();
        if (!at_end()) fail("unexpected '" + peek().text + "'");
        if (!parity_of(p).parity) fail_at(at, "parity violation: the expression mixes even and odd terms");
        return p;
    }

    Flow whole_flow(Parity parity) {
        Flow phi;
        phi.parity = parity;
        components(phi.components, parity, "flow");
        if (!at_end()) fail("unexpected '" + peek().text + "'");
        return phi;
    }

private:
    // ---- token helpers
    const Token& peek(size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    bool at_end() const { return peek().kind == Tok::end; }
    Token next() {
        Token t = peek();
        if (!at_end()) ++pos_;
        return t;
    }
    [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, peek().line, peek().column); }
    [[noreturn]] void fail_at(const Token& t, const std::string& what) const { throw SyntaxError(what, t.line, t.column); }
    bool accept(const std::string& text) {
        if (peek().kind != Tok::end && peek().text == text) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(const std::string& text) {
        if (!accept(text)) fail("expected '" + text + "' but found '" + (at_end() ? "end of input" : peek().text) + "'");
    }
    std::string name() {
        if (peek().kind != Tok::ident) fail("expected a name");
        return next().text;
    }
    long integer() {
        bool neg = accept("-");
        if (peek().kind != Tok::integer) fail("expected an integer");
        long v = std::stol(next().text);
        return neg ? -v : v;
    }
    Rational rational() {
        bool neg = accept("-");
        if (peek().kind != Tok::integer) fail("expected a number");
        std::string t = next().text;
        if (accept("/")) {
            if (peek().kind != Tok::integer) fail("expected a denominator");
            t += "/" + next().text;
        }
        Rational q = parse_rational(t);
        return neg ? Rational(-q) : q;
    }

    // ---- symbols
    void declare(const std::string& n, const Token& at) {
        if (is_derivative_word(n) || keywords().count(n)) fail_at(at, "reserved name '" + n + "'");
        if (doc_.lookup(n)) fail_at(at, "'" + n + "' is already declared");
    }
    static const std::set<std::string>& keywords() {
        static const std::set<std::string> k{"field", "param", "aux", "fn", "time", "nonlocal", "operator",
                                             "extended", "miura", "pin", "refuted", "flow", "shadow", "density",
                                             "claim", "maps", "nilpotent", "commute", "generates", "expansion"};
        return k;
    }
    // Declared fields and nonlocal variables, and their phantoms.
    const Symbol* jet_symbol(const std::string& n) const {
        if (const Symbol* s = doc_.lookup(n); s && s->kind == SymbolKind::field) return s;
        auto is_phantom_of = [&](const Symbol* u) { return phantom_of(u)->name == n && !doc_.lookup(n); };
        for (auto u : doc_.fields)
            if (is_phantom_of(u)) return phantom_of(u);
        for (const auto& nl : doc_.nonlocal)
            if (is_phantom_of(nl.symbol)) return phantom_of(nl.symbol);
        return nullptr;
    }
    // Identifier as a jet: optional D, D1, D2 prefixes, a variable, optional _x...x.
    std::optional<SuperPoly> jet_word(const std::string& word) const {
        std::string base = word;
        unsigned m = 0;
        if (auto us = word.rfind('_'); us != std::string::npos && us + 1 < word.size() &&
                                       word.find_first_not_of('x', us + 1) == std::string::npos && !jet_symbol(word)) {
            m = static_cast<unsigned>(word.size() - us - 1);
            base = word.substr(0, us);
        }
        std::vector<Direction> prefix;
        while (!jet_symbol(base) && base.size() > 1 && base[0] == 'D') {
            if (base.size() > 2 && (base[1] == '1' || base[1] == '2') && base[2] != '_') {
                prefix.push_back(base[1] == '1' ? Direction::D1 : Direction::D2);
                base = base.substr(2);
            } else {
                prefix.push_back(Direction::D1);
                base = base.substr(1);
            }
        }
        const Symbol* s = jet_symbol(base);
        if (!s) return std::nullopt;
        SuperPoly p = SuperPoly::from_atom(Atom::jet(s, m));
        for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) p = super_derive(p, *it);
        return p;
    }

    // ---- expressions
    SuperPoly expr() {
        SuperPoly acc;
        bool neg = false;
        if (accept("-")) neg = true;
        else accept("+");
        SuperPoly t = term();
        acc = neg ? -t : t;
        while (true) {
            if (accept("+")) acc += term();
            else if (accept("-")) acc -= term();
            else break;
        }
        return acc;
    }

    SuperPoly term() {
        SuperPoly acc = power();
        while (true) {
            if (accept("*")) {
                acc = acc * power();
            } else if (peek().text == "/" && peek().kind == Tok::punct) {
                Token at = next();
                auto c = power().as_constant();
                if (!c || *c == 0) fail_at(at, "division by a non-constant or zero");
                acc *= Rational(1 / *c);
            } else {
                break;
            }
        }
        return acc;
    }

    SuperPoly power() {
        Token at = peek();
        SuperPoly base = primary();
        if (!accept("^")) return base;
        long e = integer();
        if (e >= 0) return pow(base, static_cast<unsigned>(e));
        // Negative powers: Laurent parameter monomials only.
        if (base.size() != 1 || !base.terms().begin()->first.factors.empty())
            fail_at(at, "negative powers need a parameter monomial");
        const auto& [m, c] = *base.terms().begin();
        Monomial inv;
        ParamMonomial pm;
        for (long k = 0; k < -e; ++k) pm = pm * m.params.inverse();
        inv.params = pm;
        Rational ci = 1;
        for (long k = 0; k < -e; ++k) ci /= c;
        return SuperPoly::from_term(inv, ci);
    }

    SuperPoly primary() {
        const Token t = peek();
        if (t.kind == Tok::integer) {
            next();
            return SuperPoly(parse_rational(t.text));
        }
        if (accept("(")) {
            SuperPoly p = expr();
            expect(")");
            return p;
        }
        if (t.kind != Tok::ident) fail("expected an expression");
        next();
        if (is_derivative_word(t.text) && peek().text == "(") {
            next();
            SuperPoly p = expr();
            expect(")");
            try {
                return super_derive(p, direction_of(t.text));
            } catch (const DirectionError& e) {
                fail_at(t, e.what());
            }
        }
        if (const Symbol* s = doc_.lookup(t.text)) {
            switch (s->kind) {
                case SymbolKind::param: return SuperPoly::from_param(s);
                case SymbolKind::clifford: return SuperPoly::from_atom(Atom::of(s));
                case SymbolKind::function: {
                    unsigned order = 0;
                    while (accept("'")) ++order;
                    expect("(");
                    Token at = peek();
                    const Symbol* arg = jet_symbol(name());
                    if (!arg) fail_at(at, "function argument must be a field");
                    expect(")");
                    try {
                        return SuperPoly::from_atom(Atom::function(s, arg, order));
                    } catch (const Error& e) {
                        fail_at(at, e.what());
                    }
                }
                default: break;
            }
        }
        try {
            if (auto p = jet_word(t.text)) return *p;
        } catch (const DirectionError& e) {
            fail_at(t, e.what());
        }
        fail_at(t, "undeclared symbol '" + t.text + "'");
    }

    void check_parity(const SuperPoly& p, Parity want, const Token& at, const std::string& what) {
        auto rep = parity_of(p);
        if (!rep.parity) fail_at(at, "parity violation: " + what + " mixes even and odd terms");
        if (!p.is_zero() && *rep.parity != want)
            fail_at(at, "parity violation: " + what + " should be " + std::string(to_string(want)));
    }

    // u = expr, v = expr ... keyed by declared fields.
    void components(FieldMap& out, Parity shift, const std::string& what) {
        do {
            Token at = peek();
            const Symbol* u = jet_symbol(name());
            if (!u || std::find(doc_.fields.begin(), doc_.fields.end(), u) == doc_.fields.end())
                fail_at(at, "component of " + what + " must name a declared field");
            if (out.count(u)) fail_at(at, "repeated component " + u->name);
            expect("=");
            Token e = peek();
            SuperPoly p = expr();
            check_parity(p, u->parity + shift, e, u->name + " component of " + what);
            out[u] = std::move(p);
        } while (accept(","));
    }

    // Left-hand side of a definition: D(w), D1(w), D2(w), Dx(w), w_x or w_t.
    std::pair<const Symbol*, Direction> derivative_lhs() {
        Token at = next();
        if (at.kind != Tok::ident) fail_at(at, "expected a derivative");
        if (is_derivative_word(at.text) && accept("(")) {
            Token v = peek();
            const Symbol* s = jet_symbol(name());
            if (!s) fail_at(v, "undeclared symbol '" + v.text + "'");
            expect(")");
            return {s, direction_of(at.text)};
        }
        for (auto [suffix, dir] : {std::pair{"_t", Direction::Dt}, std::pair{"_x", Direction::Dx}}) {
            const std::string& w = at.text;
            if (w.size() > 2 && w.compare(w.size() - 2, 2, suffix) == 0)
                if (const Symbol* s = jet_symbol(w.substr(0, w.size() - 2))) return {s, dir};
        }
        fail_at(at, "expected a derivative such as D(w), w_x or w_t");
    }

    Parity parity_word() {
        Token at = next();
        if (at.text == "odd") return Parity::odd;
        if (at.text == "even") return Parity::even;
        fail_at(at, "expected 'odd' or 'even'");
    }

    int default_susy() const {
        int n = 0;
        for (auto u : doc_.fields) n = std::max(n, u->n_susy);
        return n;
    }

    // ---- statements
    void statement() {
        Token head = peek();
        if (head.kind != Tok::ident) fail("expected a statement");
        bool refuted = false;
        if (head.text == "refuted") {
            next();
            refuted = true;
            head = peek();
        }
        const std::string& k = head.text;
        if (refuted && !(k == "flow" || k == "shadow" || k == "density" || k == "claim" || k == "maps" ||
                         k == "nilpotent" || k == "commute" || k == "generates" || k == "expansion"))
            fail_at(head, "'refuted' applies to checkable statements only");
        if (k == "field") field_decl();
        else if (k == "param") param_decl();
        else if (k == "aux") aux_decl();
        else if (k == "fn") fn_decl();
        else if (k == "time") time_decl();
        else if (k == "nonlocal") nonlocal_decl();
        else if (k == "operator") operator_decl();
        else if (k == "extended") extended_eq();
        else if (k == "miura") miura_decl();
        else if (k == "pin") pin_decl();
        else if (k == "flow") flow_decl(refuted);
        else if (k == "shadow") shadow_decl(refuted);
        else if (k == "density") density_decl(refuted);
        else if (k == "claim") claim_decl(refuted);
        else if (k == "maps") maps_decl(refuted);
        else if (k == "nilpotent") nilpotent_decl(refuted);
        else if (k == "commute") commute_decl(refuted);
        else if (k == "generates") generates_decl(refuted);
        else if (k == "expansion") expansion_decl(refuted);
        else equation(doc_.system);
        expect(";");
    }

    void field_decl() {
        next();
        Token at = peek();
        std::string n = name();
        declare(n, at);
        Parity par = parity_word();
        int susy = 0;
        if (accept("susy")) susy = static_cast<int>(integer());
        if (susy < 0 || susy > 2) fail_at(at, "susy must be 0, 1 or 2");
        const Symbol* s = make_field(n, par, susy);
        doc_.fields.push_back(s);
        if (accept("weight")) doc_.weights.set(s, rational());
    }

    void param_decl() {
        next();
        Token at = peek();
        std::string n = name();
        declare(n, at);
        const Symbol* s = make_param(n);
        doc_.params.push_back(s);
        if (accept("weight")) doc_.weights.set(s, rational());
    }

    void aux_decl() {
        next();
        Token at = peek();
        std::string n = name();
        declare(n, at);
        expect("clifford");
        Token sq = peek();
        SuperPoly square = power();
        while (accept("*")) square = square * power();
        const Symbol* s = nullptr;
        if (square.is_zero()) {
            s = make_clifford(n, {}, true);
        } else {
            if (square.size() != 1 || !square.terms().begin()->first.factors.empty() || square.terms().begin()->second != 1)
                fail_at(sq, "a Clifford square must be a parameter monomial");
            s = make_clifford(n, square.terms().begin()->first.params);
        }
        doc_.auxiliaries.push_back(s);
        if (accept("weight")) doc_.weights.set(s, rational());
    }

    void fn_decl() {
        next();
        Token at = peek();
        std::string n = name();
        declare(n, at);
        expect("of");
        Token a = peek();
        const Symbol* arg = jet_symbol(name());
        if (!arg || is_odd(arg->parity)) fail_at(a, "function argument must be an even field");
        const Symbol* s = make_function(n);
        doc_.functions.push_back(s);
        doc_.function_args[s] = arg;
    }

    void time_decl() {
        next();
        expect("weight");
        doc_.weights.time = rational();
    }

    void nonlocal_decl() {
        next();
        Token at = peek();
        std::string n = name();
        declare(n, at);
        Parity par = parity_word();
        int susy = default_susy();
        if (accept("susy")) susy = static_cast<int>(integer());
        Nonlocality nl;
        nl.symbol = make_field(n, par, susy);
        if (accept("weight")) {
            nl.weight = rational();
            doc_.weights.set(nl.symbol, *nl.weight);
        }
        doc_.nonlocal.push_back(nl);
        Nonlocality& ref = doc_.nonlocal.back();
        expect(":");
        do {
            Token lhs = peek();
            auto [s, dir] = derivative_lhs();
            if (s != ref.symbol) fail_at(lhs, "definition must be a derivative of " + n);
            if (ref.defs.count(dir)) fail_at(lhs, "repeated definition");
            expect("=");
            Token e = peek();
            SuperPoly p = expr();
            Parity want = par + (dir == Direction::D1 || dir == Direction::D2 ? Parity::odd : Parity::even);
            check_parity(p, want, e, "definition of " + n);
            ref.defs[dir] = std::move(p);
        } while (accept(","));
    }

    OperatorTerm operator_term() {
        OperatorTerm t;
        Rational c = 1;
        int d1 = 0, d2 = 0;
        unsigned m = 0;
        bool any = false;
        do {
            Token at = peek();
            if (at.kind == Tok::integer) {
                c *= rational();
            } else if (is_derivative_word(at.text)) {
                next();
                long e = accept("^") ? integer() : 1;
                if (e < 0) fail_at(at, "negative operator power");
                Direction d = direction_of(at.text);
                if (d == Direction::Dx) {
                    m += static_cast<unsigned>(e);
                } else if (d == Direction::D1) {
                    if (d2 || m) fail_at(at, "write D1, D2 before Dx");
                    m += static_cast<unsigned>(e / 2);
                    d1 += static_cast<int>(e % 2);
                } else {
                    if (m) fail_at(at, "write D1, D2 before Dx");
                    m += static_cast<unsigned>(e / 2);
                    d2 += static_cast<int>(e % 2);
                }
                if (d1 > 1 || d2 > 1) fail_at(at, "repeated odd derivative");
            } else {
                fail_at(at, "expected a number or D, D1, D2, Dx");
            }
            any = true;
        } while (accept("*"));
        if (!any) fail("empty operator term");
        t.coeff = SuperPoly(c);
        t.d1 = d1;
        t.d2 = d2;
        t.m = m;
        return t;
    }

    ScalarOperator operator_entry() {
        ScalarOperator op;
        bool neg = accept("-");
        if (!neg) accept("+");
        while (true) {
            OperatorTerm t = operator_term();
            if (neg) t.coeff = -t.coeff;
            if (!t.coeff.is_zero()) op.push_back(t);
            if (accept("+")) neg = false;
            else if (accept("-")) neg = true;
            else break;
        }
        return op;
    }

    void operator_decl() {
        Token at = next();
        HamiltonianOperator A;
        if (accept("right")) A.gradient = Gradient::right;
        expect("(");
        do {
            std::vector<ScalarOperator> row;
            do row.push_back(operator_entry());
            while (accept(","));
            A.entries.push_back(std::move(row));
        } while (accept(";"));
        expect(")");
        for (const auto& row : A.entries)
            if (row.size() != A.entries.size()) fail_at(at, "operator matrix must be square");
        doc_.hamiltonian_operator = std::move(A);
    }

    void equation(EvolutionSystem& sys) {
        Token at = peek();
        auto [u, dir] = derivative_lhs();
        if (dir != Direction::Dt || std::find(doc_.fields.begin(), doc_.fields.end(), u) == doc_.fields.end())
            fail_at(at, "expected an evolution equation u_t = ...");
        if (sys.has_field(u)) fail_at(at, "repeated equation for " + u->name);
        expect("=");
        Token e = peek();
        SuperPoly p = expr();
        check_parity(p, u->parity, e, "right-hand side of " + u->name + "_t");
        sys.fields.push_back(u);
        sys.rhs[u] = std::move(p);
    }

    void extended_eq() {
        next();
        equation(doc_.extended);
    }

    void miura_decl() {
        Token at = next();
        Token e = peek();
        const Symbol* eps = doc_.lookup(name());
        if (!eps || eps->kind != SymbolKind::param) fail_at(e, "expected the deformation parameter");
        expect(":");
        MiuraMap m;
        m.eps = eps;
        do {
            Token b = peek();
            const Symbol* u = jet_symbol(name());
            if (!u || !doc_.system.has_field(u)) fail_at(b, "expected a field of the system");
            expect("=");
            Token ex = peek();
            SuperPoly img = expr();
            check_parity(img, u->parity, ex, "image of " + u->name);
            SuperPoly lead = eps_coefficient(img, eps, 0);
            if (lead.size() != 1 || lead.terms().begin()->second != 1 || lead.terms().begin()->first.factors.size() != 1)
                fail_at(ex, "the eps^0 part of an image must be a single source field");
            const Atom& a = lead.terms().begin()->first.factors[0].atom;
            if (!a.is_jet() || a.m || a.d1 || a.d2 || lead.terms().begin()->first.factors[0].exp != 1)
                fail_at(ex, "the eps^0 part of an image must be a single source field");
            m.base.push_back(u);
            m.source.push_back(a.sym);
            m.images.push_back(std::move(img));
        } while (accept(","));
        try {
            m.validate();
        } catch (const Error& err) {
            fail_at(at, err.what());
        }
        doc_.miura = std::move(m);
    }

    void pin_decl() {
        next();
        DeformationProblem::Pin pin;
        pin.order = static_cast<int>(integer());
        Token c = peek();
        std::string comp = name();
        if (comp == "hamiltonian") {
            pin.component = -1;
        } else {
            const Symbol* u = jet_symbol(comp);
            auto it = std::find(doc_.system.fields.begin(), doc_.system.fields.end(), u);
            if (!u || it == doc_.system.fields.end()) fail_at(c, "expected a field of the system or 'hamiltonian'");
            pin.component = static_cast<int>(it - doc_.system.fields.begin());
        }
        expect(":");
        pin.monomial = expr();
        expect("=");
        pin.value = rational();
        doc_.pins.push_back(std::move(pin));
    }

    std::string object_name(const std::string& kind, bool (Parser::*taken)(const std::string&) const) {
        Token at = peek();
        std::string n = name();
        if ((this->*taken)(n)) fail_at(at, "repeated " + kind + " name '" + n + "'");
        return n;
    }
    bool flow_taken(const std::string& n) const { return doc_.flow(n) != nullptr; }
    bool shadow_taken(const std::string& n) const { return doc_.shadow(n) != nullptr; }
    bool density_taken(const std::string& n) const { return doc_.density(n) != nullptr; }
    bool claim_taken(const std::string& n) const {
        for (const auto& c : doc_.claims)
            if (c.claim.name == n) return true;
        return false;
    }

    void flow_decl(bool refuted) {
        next();
        NamedFlow f;
        f.expect_failure = refuted;
        f.name = object_name("flow", &Parser::flow_taken);
        while (peek().text != ":") {
            Token at = next();
            if (at.text == "odd") f.flow.parity = Parity::odd;
            else if (at.text == "standalone") f.standalone = true;
            else fail_at(at, "expected 'odd', 'standalone' or ':'");
        }
        expect(":");
        components(f.flow.components, f.flow.parity, "flow " + f.name);
        doc_.flows.push_back(std::move(f));
    }

    void shadow_decl(bool refuted) {
        next();
        NamedShadow s;
        s.expect_failure = refuted;
        s.name = object_name("shadow", &Parser::shadow_taken);
        expect(":");
        components(s.shadow.components, Parity::even, "shadow " + s.name);
        doc_.shadows.push_back(std::move(s));
    }

    void density_decl(bool refuted) {
        next();
        NamedDensity d;
        d.expect_failure = refuted;
        d.name = object_name("density", &Parser::density_taken);
        if (accept("image")) {
            Token at = next();
            if (!is_derivative_word(at.text)) fail_at(at, "expected D, D1, D2 or Dx");
            d.image = direction_of(at.text);
        }
        expect(":");
        d.density = expr();
        doc_.densities.push_back(std::move(d));
    }

    void claim_decl(bool refuted) {
        next();
        NamedClaim c;
        c.expect_failure = refuted;
        c.claim.name = object_name("claim", &Parser::claim_taken);
        expect(":");
        auto [s, dir] = derivative_lhs();
        c.claim.var = s;
        c.claim.dir = dir;
        expect("=");
        c.claim.rhs = expr();
        doc_.claims.push_back(std::move(c));
    }

    std::string existing(bool (Parser::*taken)(const std::string&) const, const std::string& kind) {
        Token at = peek();
        std::string n = name();
        if (!(this->*taken)(n)) fail_at(at, "unknown " + kind + " '" + n + "'");
        return n;
    }

    void maps_decl(bool refuted) {
        next();
        MapsClaim m;
        m.expect_failure = refuted;
        m.shadow = existing(&Parser::shadow_taken, "shadow");
        expect(":");
        m.seed = existing(&Parser::flow_taken, "flow");
        expect("->");
        m.target = existing(&Parser::flow_taken, "flow");
        doc_.maps.push_back(std::move(m));
    }

    void nilpotent_decl(bool refuted) {
        next();
        NilpotencyClaim n;
        n.expect_failure = refuted;
        n.shadow = existing(&Parser::shadow_taken, "shadow");
        expect("order");
        Token at = peek();
        n.order = static_cast<int>(integer());
        if (n.order < 1) fail_at(at, "order must be positive");
        doc_.nilpotency.push_back(std::move(n));
    }

    void commute_decl(bool refuted) {
        next();
        CommuteClaim c;
        c.expect_failure = refuted;
        c.first = existing(&Parser::flow_taken, "flow");
        c.second = existing(&Parser::flow_taken, "flow");
        doc_.commutes.push_back(std::move(c));
    }

    void generates_decl(bool refuted) {
        Token at = next();
        if (!doc_.hamiltonian_operator) fail_at(at, "'generates' needs an operator declaration");
        GeneratesClaim g;
        g.expect_failure = refuted;
        g.density = existing(&Parser::density_taken, "density");
        expect("->");
        g.flow = existing(&Parser::flow_taken, "flow");
        doc_.generates.push_back(std::move(g));
    }

    void expansion_decl(bool refuted) {
        Token at = next();
        if (!doc_.miura) fail_at(at, "'expansion' needs a Miura map");
        ExpansionClaim e;
        e.expect_failure = refuted;
        Token b = peek();
        e.base = jet_symbol(name());
        if (!e.base || std::find(doc_.miura->base.begin(), doc_.miura->base.end(), e.base) == doc_.miura->base.end())
            fail_at(b, "expected a base field of the Miura map");
        expect(":");
        do e.terms.push_back(expr());
        while (accept(","));
        doc_.expansions.push_back(std::move(e));
    }

    std::vector<Token> toks_;
    size_t pos_ = 0;
    SourceDocument& doc_;
};

std::string weight_suffix(const WeightSystem& ws, const Symbol* s) {
    if (auto w = ws.get(s)) return " weight " + to_string(*w);
    return "";
}

std::string direction_lhs(const Symbol* s, Direction d) {
    switch (d) {
        case Direction::D1: return (s->n_susy >= 2 ? "D1(" : "D(") + s->name + ")";
        case Direction::D2: return "D2(" + s->name + ")";
        case Direction::Dx: return s->name + "_x";
        case Direction::Dt: return s->name + "_t";
    }
    return {};
}

std::string components_text(const FieldMap& c) {
    std::string s;
    for (const auto& [u, p] : c) {
        if (!s.empty()) s += ", ";
        s += u->name + " = " + to_string(p);
    }
    return s;
}

std::string direction_word(Direction d) {
    switch (d) {
        case Direction::D1: return "D";
        case Direction::D2: return "D2";
        default: return "Dx";
    }
}

std::string refuted(bool r) { return r ? "refuted " : ""; }

}  // namespace

SourceDocument parse_document(std::string_view text) {
    SourceDocument doc;
    Parser(text, doc).document();
    return doc;
}

SuperPoly parse_expression(std::string_view text, const SourceDocument& doc) {
    return Parser(text, const_cast<SourceDocument&>(doc)).whole_expression();
}

Flow parse_flow(std::string_view text, const SourceDocument& doc, Parity parity) {
    return Parser(text, const_cast<SourceDocument&>(doc)).whole_flow(parity);
}

std::string print_operator(const ScalarOperator& op) {
    if (op.empty()) return "0";
    std::string s;
    for (const auto& t : op) {
        auto c = t.coeff.as_constant();
        if (!c) throw Error("operator coefficients must be constants to print");
        Rational a = abs(*c);
        std::string word;
        if (a != 1) word = to_string(a);
        auto add = [&](const std::string& w) { word += (word.empty() ? "" : "*") + w; };
        if (t.d1) add("D1");
        if (t.d2) add("D2");
        if (t.m == 1) add("Dx");
        else if (t.m > 1) add("Dx^" + std::to_string(t.m));
        if (word.empty()) word = "1";
        if (s.empty()) s = (*c < 0 ? "-" : "") + word;
        else s += (*c < 0 ? " - " : " + ") + word;
    }
    return s;
}

std::string print_document(const SourceDocument& doc) {
    std::string out;
    auto line = [&](const std::string& l) { out += l + ";\n"; };
    for (auto u : doc.fields)
        line("field " + u->name + " " + std::string(to_string(u->parity)) + " susy " + std::to_string(u->n_susy) +
             weight_suffix(doc.weights, u));
    for (auto p : doc.params) line("param " + p->name + weight_suffix(doc.weights, p));
    for (auto f : doc.functions) line("fn " + f->name + " of " + doc.function_args.at(f)->name);
    for (auto a : doc.auxiliaries)
        line("aux " + a->name + " clifford " + (a->square_zero ? std::string("0") : a->square.empty() ? "1" : to_string(a->square)) +
             weight_suffix(doc.weights, a));
    if (doc.weights.time) line("time weight " + to_string(*doc.weights.time));
    for (auto u : doc.system.fields) line(u->name + "_t = " + to_string(doc.system.rhs.at(u)));
    for (const auto& nl : doc.nonlocal) {
        std::string s = "nonlocal " + nl.symbol->name + " " + std::string(to_string(nl.symbol->parity)) + " susy " +
                        std::to_string(nl.symbol->n_susy) + weight_suffix(doc.weights, nl.symbol) + ": ";
        bool first = true;
        for (const auto& [d, p] : nl.defs) {
            s += (first ? "" : ", ") + direction_lhs(nl.symbol, d) + " = " + to_string(p);
            first = false;
        }
        line(s);
    }
    if (doc.hamiltonian_operator) {
        std::string s = doc.hamiltonian_operator->gradient == Gradient::right ? "operator right (" : "operator (";
        for (size_t i = 0; i < doc.hamiltonian_operator->entries.size(); ++i) {
            if (i) s += "; ";
            const auto& row = doc.hamiltonian_operator->entries[i];
            for (size_t j = 0; j < row.size(); ++j) s += (j ? ", " : "") + print_operator(row[j]);
        }
        line(s + ")");
    }
    for (auto u : doc.extended.fields) line("extended " + u->name + "_t = " + to_string(doc.extended.rhs.at(u)));
    if (doc.miura) {
        std::string s = "miura " + doc.miura->eps->name + ": ";
        for (size_t i = 0; i < doc.miura->base.size(); ++i)
            s += (i ? ", " : "") + doc.miura->base[i]->name + " = " + to_string(doc.miura->images[i]);
        line(s);
    }
    for (const auto& p : doc.pins)
        line("pin " + std::to_string(p.order) + " " +
             (p.component < 0 ? std::string("hamiltonian") : doc.system.fields.at(p.component)->name) + ": " +
             to_string(p.monomial) + " = " + to_string(p.value));
    for (const auto& f : doc.flows)
        line(refuted(f.expect_failure) + "flow " + f.name + (is_odd(f.flow.parity) ? " odd" : "") +
             (f.standalone ? " standalone" : "") + ": " + components_text(f.flow.components));
    for (const auto& s : doc.shadows)
        line(refuted(s.expect_failure) + "shadow " + s.name + ": " + components_text(s.shadow.components));
    for (const auto& d : doc.densities)
        line(refuted(d.expect_failure) + "density " + d.name +
             (d.image ? " image " + direction_word(*d.image) : "") + ": " +
             to_string(d.density));
    for (const auto& c : doc.claims)
        line(refuted(c.expect_failure) + "claim " + c.claim.name + ": " + direction_lhs(c.claim.var, c.claim.dir) + " = " +
             to_string(c.claim.rhs));
    for (const auto& m : doc.maps) line(refuted(m.expect_failure) + "maps " + m.shadow + ": " + m.seed + " -> " + m.target);
    for (const auto& n : doc.nilpotency)
        line(refuted(n.expect_failure) + "nilpotent " + n.shadow + " order " + std::to_string(n.order));
    for (const auto& c : doc.commutes) line(refuted(c.expect_failure) + "commute " + c.first + " " + c.second);
    for (const auto& g : doc.generates) line(refuted(g.expect_failure) + "generates " + g.density + " -> " + g.flow);
    for (const auto& e : doc.expansions) {
        std::string s = refuted(e.expect_failure) + "expansion " + e.base->name + ": ";
        for (size_t i = 0; i < e.terms.size(); ++i) s += (i ? ", " : "") + to_string(e.terms[i]);
        line(s);
    }
    return out;
}

}  // namespace superjet
