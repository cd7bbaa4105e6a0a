#pragma once

#include "superjet/jetspace.hpp"

#include <optional>

namespace superjet {

struct EnumerationError : Error {
    using Error::Error;
};

// Scaling weights: [x] = -1, [theta] = -1/2, so [D] = 1/2 and [Dx] = 1.
struct WeightSystem {
    std::map<const Symbol*, Rational, SymbolLess> values;
    std::optional<Rational> time;

    void set(const Symbol* s, const Rational& w) { values[s] = w; }
    std::optional<Rational> get(const Symbol* s) const;
    Rational of(const Symbol* s) const;  // throws UnweightedSymbol
    Rational of(const Atom& a) const;
    Rational of(const Monomial& m) const;
    // Gives every listed field's phantom the weight of the field.
    void add_phantoms(const std::vector<const Symbol*>& fields);
};

struct WeightReport {
    std::optional<Rational> weight;  // empty when inhomogeneous; zero polynomial has none
    std::vector<std::pair<Monomial, Rational>> term_weights;
};
WeightReport weight_of(const SuperPoly& p, const WeightSystem& ws);
// Weight of a homogeneous nonzero polynomial; throws otherwise.
Rational homogeneous_weight(const SuperPoly& p, const WeightSystem& ws);

// Affine space of weight assignments making every equation homogeneous:
// values = particular + sum_k t_k basis[k], coordinates ordered as `symbols`
// followed by the time weight.
struct WeightFamily {
    std::vector<const Symbol*> symbols;
    std::vector<Rational> particular;
    std::vector<std::vector<Rational>> basis;

    size_t dimension() const { return basis.size(); }
    bool unique() const { return basis.empty(); }
    // Weight system of the particular solution.
    WeightSystem particular_system() const;
};

struct WeightConstraints {
    std::map<const Symbol*, Rational, SymbolLess> fixed;
    std::optional<Rational> time;
    // Parameters enter as unknown weights unless fixed; when false they weigh 0.
    bool weighted_params = true;
};
WeightFamily infer_weights(const EvolutionSystem& sys, const WeightConstraints& constraints = {});

struct EnumerateOptions {
    // Maximal exponent of zero-weight even atoms; no cap means such atoms are an error.
    std::optional<int> zero_weight_cap = 2;
    std::map<const Symbol*, int, SymbolLess> caps;  // per symbol, overrides the default
    std::optional<unsigned> max_degree;              // total degree in atoms
};

// Jets of the listed variables with weight at most max_weight. When a covering is
// given, jets of nonlocal variables that reduce through their definitions are left out.
std::vector<Atom> jet_atoms(const std::vector<const Symbol*>& vars, const WeightSystem& ws, const Rational& max_weight,
                            const Covering* ctx = nullptr);

// All canonical monomials in the candidate atoms with the given weight and parity.
std::vector<Monomial> enumerate_monomials(const WeightSystem& ws, const Rational& target, Parity parity,
                                          const std::vector<Atom>& candidates, const EnumerateOptions& opts = {});
std::vector<Monomial> enumerate_monomials(const WeightSystem& ws, const Rational& target, Parity parity,
                                          const std::vector<const Symbol*>& vars, const EnumerateOptions& opts = {});

}  // namespace superjet
