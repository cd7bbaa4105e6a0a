#pragma once

#include "superjet/jetspace.hpp"

#include <string>
#include <vector>

namespace superjet {

struct CompatibilityCheck {
    const Symbol* var = nullptr;
    Direction first = Direction::D1;
    Direction second = Direction::Dt;
    SuperPoly lhs;  // derivative along `second` of the `first` definition
    SuperPoly rhs;  // derivative along `first` of the `second` definition
    SuperPoly residual;
};

struct CoveringReport {
    bool consistent = true;
    std::vector<CompatibilityCheck> checks;
    std::vector<std::string> errors;  // parity or declaration problems
};

// Cross-derivative compatibility of every pair of declared directions.
CoveringReport check_covering(const Covering& c);

// Linearization of a covering in phantom variables: U for each field and W for
// each nonlocal variable, with the same parity and supersymmetry.
struct PhantomSystem {
    Covering base;
    Covering covering;  // base variables plus phantoms
    std::map<const Symbol*, const Symbol*, SymbolLess> phantom;
    std::vector<const Symbol*> local_phantoms;
    std::vector<const Symbol*> nonlocal_phantoms;

    const Symbol* phantom_for(const Symbol* var) const;
    // Linearization of a base expression along all phantoms.
    SuperPoly linearization(const SuperPoly& p) const;
    bool is_phantom(const Symbol* s) const;
};

PhantomSystem linearize(const Covering& c);

// A claimed relation var_dir = rhs among covering variables.
struct Claim {
    std::string name;
    const Symbol* var = nullptr;
    Direction dir = Direction::Dt;
    SuperPoly rhs;
};

std::vector<SuperPoly> derived_equation_check(const Covering& c, const std::vector<Claim>& claims);

}  // namespace superjet
