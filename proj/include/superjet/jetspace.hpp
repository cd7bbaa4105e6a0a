#pragma once

#include "superjet/superalg.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace superjet {

enum class Direction { D1, D2, Dx, Dt };
std::string_view to_string(Direction d);

using FieldMap = std::map<const Symbol*, SuperPoly, SymbolLess>;

// u_t = rhs[u] for every field u.
struct EvolutionSystem {
    std::vector<const Symbol*> fields;
    FieldMap rhs;

    bool has_field(const Symbol* s) const;
    // Checks that every right-hand side is homogeneous of its field's parity.
    void validate() const;
    int n_susy() const;
};

// Evolutionary vector field u_s = components[u] with an odd or even parameter s.
struct Flow {
    FieldMap components;
    Parity parity = Parity::even;

    bool is_zero() const;
    friend bool operator==(const Flow& a, const Flow& b) { return a.parity == b.parity && a.components == b.components; }
};
Flow flow_from(const EvolutionSystem& sys);  // u_s = u_t
Flow operator+(const Flow& a, const Flow& b);
Flow operator*(const Rational& c, const Flow& a);
Flow scale(const Flow& a, const SuperPoly& c);  // even coefficient, multiplied on the left

// A nonlocal variable: its derivatives along the declared directions.
struct Nonlocality {
    const Symbol* symbol = nullptr;
    std::optional<Rational> weight;
    std::map<Direction, SuperPoly> defs;

    const SuperPoly* def(Direction d) const;
};

// An evolution system extended by nonlocal variables. Total derivatives reduce
// jets of nonlocal variables through their defining relations whenever possible.
class Covering {
public:
    Covering() = default;
    explicit Covering(EvolutionSystem sys, std::vector<Nonlocality> nonlocal = {});

    const EvolutionSystem& system() const { return sys_; }
    const std::vector<Nonlocality>& nonlocalities() const { return nonlocal_; }
    const Nonlocality* nonlocality(const Symbol* s) const;
    bool is_nonlocal(const Symbol* s) const { return nonlocality(s) != nullptr; }

    // Reduced form of a single jet.
    SuperPoly jet(const Atom& a) const;
    SuperPoly reduce(const SuperPoly& p) const;
    SuperPoly derive(const SuperPoly& p, Direction d) const;
    // D1^d1 D2^d2 Dx^m p, innermost first: Dx^m, then D2, then D1.
    SuperPoly apply_operator(const SuperPoly& p, int d1, int d2, unsigned m) const;
    SuperPoly dt(const SuperPoly& p) const;

private:
    SuperPoly atom_derivative(const Atom& a, Direction d) const;

    EvolutionSystem sys_;
    std::vector<Nonlocality> nonlocal_;
    std::map<const Symbol*, size_t, SymbolLess> index_;
};

// Raw total derivative along D1, D2 or Dx, with no reduction of nonlocal jets.
SuperPoly super_derive(const SuperPoly& p, Direction d);
// The single-jet rule: sign and resulting jet of D applied to a jet atom.
std::pair<int, Atom> derive_jet(const Atom& a, Direction d);

SuperPoly dt_apply(const EvolutionSystem& sys, const SuperPoly& p);
SuperPoly dt_apply(const Covering& c, const SuperPoly& p);

// Evolutionary derivation X_phi with X_phi(D^k u) = D^k(phi_u). Even flows act as left
// derivations; odd flows act from the right, X(gh) = g X(h) + (-1)^|h| X(g) h, so that
// X_phi commutes with D for either parity.
SuperPoly evolutionary_apply(const Flow& phi, const SuperPoly& p, const Covering& ctx);
SuperPoly evolutionary_apply(const Flow& phi, const SuperPoly& p);

// Graded commutator [X_phi, X_psi] as a flow.
Flow commutator(const Flow& phi, const Flow& psi, const Covering& ctx);
Flow commutator(const Flow& phi, const Flow& psi);

// Residual of the determining equation dt(phi_u) - X_phi(rhs_u) per field.
Flow check_symmetry(const Covering& c, const Flow& phi);
Flow check_symmetry(const EvolutionSystem& sys, const Flow& phi);

// Expansion in the odd coordinates of the superfields. Component fields are named
// by `names` (per field, 2^N names in the order 0, 1, 2, 12); defaults append
// those indices to the field name.
struct ComponentNames {
    std::map<const Symbol*, std::vector<std::string>, SymbolLess> names;
};
EvolutionSystem component_expand(const EvolutionSystem& sys, const ComponentNames& names = {});
// Theta-expansion of a superfield into its component fields, usable in expressions.
SuperPoly theta_expansion(const Symbol* field, const std::vector<const Symbol*>& components);
// Total derivative along D_i acting on expressions with explicit theta variables.
SuperPoly theta_derive(const SuperPoly& p, int i);

// Splits u = b + aux * f for a Clifford generator aux and returns the system in
// (b, f); the evolution of u must involve only u, its x-jets and parameters.
EvolutionSystem clifford_expand(const EvolutionSystem& sys, const Symbol* u, const Symbol* aux, const Symbol* b,
                                const Symbol* f);

}  // namespace superjet
