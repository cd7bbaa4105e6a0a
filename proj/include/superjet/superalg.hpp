#pragma once

#include "superjet/symbol.hpp"

#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace superjet {

// A generator of the graded algebra. Jets are D1^d1 D2^d2 Dx^m applied to a field;
// function atoms are the m-th derivative of a function symbol at the field `arg`.
struct Atom {
    const Symbol* sym = nullptr;
    const Symbol* arg = nullptr;
    unsigned m = 0;
    unsigned char d1 = 0;
    unsigned char d2 = 0;

    static Atom jet(const Symbol* field, unsigned m = 0, int d1 = 0, int d2 = 0);
    static Atom function(const Symbol* fn, const Symbol* arg, unsigned order = 0);
    static Atom of(const Symbol* s) { return Atom{s}; }

    SymbolKind kind() const { return sym->kind; }
    bool is_jet() const { return sym->kind == SymbolKind::field; }
    Parity parity() const;
    unsigned half_order() const { return 2 * m + d1 + d2; }
    // Nilpotent generators square to zero; Clifford generators square to a parameter.
    bool is_nilpotent() const { return is_odd(parity()) && sym->kind != SymbolKind::clifford; }
};

int compare(const Atom& a, const Atom& b);
inline bool operator==(const Atom& a, const Atom& b) { return compare(a, b) == 0; }
inline bool operator<(const Atom& a, const Atom& b) { return compare(a, b) < 0; }

struct Factor {
    Atom atom;
    unsigned exp = 1;
};

// Canonically ordered product of atoms times a Laurent monomial in parameters.
struct Monomial {
    std::vector<Factor> factors;
    ParamMonomial params;

    Parity parity() const;
    unsigned degree() const;
    bool is_constant() const { return factors.empty(); }
    bool contains(const Atom& a) const;
    unsigned exponent_of(const Atom& a) const;
};

int compare(const Monomial& a, const Monomial& b);
inline bool operator==(const Monomial& a, const Monomial& b) { return compare(a, b) == 0; }
inline bool operator<(const Monomial& a, const Monomial& b) { return compare(a, b) < 0; }

// Graded product of canonical monomials. Returns the sign (+1/-1) and writes the
// canonical product to `out`, or returns 0 when the product vanishes.
int multiply(const Monomial& a, const Monomial& b, Monomial& out);

class SuperPoly {
public:
    using TermMap = std::map<Monomial, Rational>;

    SuperPoly() = default;
    explicit SuperPoly(const Rational& c);
    explicit SuperPoly(long c) : SuperPoly(Rational(c)) {}
    static SuperPoly from_atom(const Atom& a, const Rational& c = 1);
    static SuperPoly from_param(const Symbol* p, int exponent = 1);
    static SuperPoly from_term(const Monomial& m, const Rational& c);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    // Coefficient of a monomial, zero when absent.
    Rational coefficient(const Monomial& m) const;
    std::optional<Rational> as_constant() const;

    void add_term(const Monomial& m, const Rational& c);

    SuperPoly& operator+=(const SuperPoly& o);
    SuperPoly& operator-=(const SuperPoly& o);
    SuperPoly& operator*=(const Rational& c);
    SuperPoly operator-() const;

    friend SuperPoly operator+(SuperPoly a, const SuperPoly& b) { return a += b; }
    friend SuperPoly operator-(SuperPoly a, const SuperPoly& b) { return a -= b; }
    friend SuperPoly operator*(SuperPoly a, const Rational& c) { return a *= c; }
    friend SuperPoly operator*(const Rational& c, SuperPoly a) { return a *= c; }
    friend SuperPoly operator*(const SuperPoly& a, const SuperPoly& b);
    friend bool operator==(const SuperPoly& a, const SuperPoly& b) { return a.terms_ == b.terms_; }

private:
    TermMap terms_;
};

SuperPoly mul(const SuperPoly& a, const SuperPoly& b);
SuperPoly pow(const SuperPoly& a, unsigned n);
SuperPoly monomial_times(const Monomial& left, const SuperPoly& p, const Monomial& right);

// An unnormalized product of generators, in the order written.
struct RawTerm {
    Rational coeff = 1;
    std::vector<Atom> atoms;
    ParamMonomial params;
};
SuperPoly normalize(const std::vector<RawTerm>& terms);

struct ParityReport {
    std::optional<Parity> parity;  // empty when mixed; zero reports even
    std::vector<Monomial> even_terms;
    std::vector<Monomial> odd_terms;
};
ParityReport parity_of(const SuperPoly& p);
// Parity of a homogeneous polynomial; throws ParityMismatch when mixed.
Parity homogeneous_parity(const SuperPoly& p);

// Graded algebra homomorphism fixing every atom not in the map. Images must match
// the parity of the atom they replace.
SuperPoly substitute_atoms(const SuperPoly& p, const std::map<Atom, SuperPoly>& images);
// Replaces fields and consistently all their jets: D^k u -> D^k(image). Images must
// have the parity of the field.
SuperPoly substitute(const SuperPoly& p, const std::map<const Symbol*, SuperPoly, SymbolLess>& images);

// Applies the derivation of parity q determined by its values on atoms. Atoms with a
// zero image are skipped; `image` may return a zero polynomial.
SuperPoly apply_derivation(const SuperPoly& p, Parity q, const std::function<SuperPoly(const Atom&)>& image);

// Sets of atoms appearing in a polynomial.
std::vector<Atom> atoms_of(const SuperPoly& p);
std::vector<const Symbol*> params_of(const SuperPoly& p);
bool has_kind(const SuperPoly& p, SymbolKind kind);

// Collects terms by their parameter-free part: p = sum over keys k of coeff[k] * k,
// where each coeff is a Laurent polynomial in the parameters.
std::map<Monomial, SuperPoly> split_params(const SuperPoly& p);

}  // namespace superjet
