#pragma once

#include "superjet/linsolve.hpp"
#include "superjet/varcalc.hpp"
#include "superjet/weights.hpp"

#include <optional>
#include <string>
#include <vector>

namespace superjet {

// base[i] = images[i](source; eps). The eps^0 part of images[i] is source[i].
struct MiuraMap {
    const Symbol* eps = nullptr;
    std::vector<const Symbol*> base;
    std::vector<const Symbol*> source;
    std::vector<SuperPoly> images;

    // Throws Error unless the eps^0 part is the identity.
    void validate() const;
};

// Coefficient of eps^k, as a polynomial free of eps.
SuperPoly eps_coefficient(const SuperPoly& p, const Symbol* eps, int k);
// Highest power of eps occurring in p, 0 for eps-free polynomials.
int eps_degree(const SuperPoly& p, const Symbol* eps);

EvolutionSystem hamiltonian_system(const HamiltonianOperator& A, const SuperPoly& h,
                                   const std::vector<const Symbol*>& fields);

// Per base field: dt(m(source)) along `extended` minus the base rhs evaluated on m.
std::vector<SuperPoly> verify_deformation(const EvolutionSystem& base, const EvolutionSystem& extended,
                                          const MiuraMap& m);

// densities[i][k] = w^i_k for the expansion source^i = sum_k eps^k w^i_k in base fields.
std::vector<std::vector<SuperPoly>> density_recurrence(const MiuraMap& m, int n);

// Substitution of base variables of the densities, e.g. c -> Df.
SuperPoly superfield_density_lift(const SuperPoly& density,
                                  const std::map<const Symbol*, SuperPoly, SymbolLess>& images);

struct DeformationProblem {
    HamiltonianOperator op;
    SuperPoly hamiltonian;  // density in base fields
    std::vector<const Symbol*> base;
    std::vector<const Symbol*> source;
    const Symbol* eps = nullptr;
    WeightSystem ws;  // weighs base fields and eps; sources inherit the base weights
    EnumerateOptions enumerate;
    std::optional<unsigned> max_jet_order;  // x-derivatives allowed in the ansatz

    // Fixes the coefficient of `monomial` at eps^order in images[component], or in the
    // Hamiltonian when component < 0.
    struct Pin {
        int order = 1;
        int component = 0;
        SuperPoly monomial;
        Rational value;
    };
    std::vector<Pin> pins;
};

struct Deformation {
    MiuraMap map;
    SuperPoly hamiltonian;  // in source fields
    std::vector<Condition> conditions;
    std::vector<const Symbol*> free;  // parameters standing for undetermined coefficients
    // Residual beyond the truncation order; empty when the deformation is exact.
    std::vector<SuperPoly> remainder;
    bool exact() const;
};

struct DeformationSearch {
    std::vector<Deformation> solutions;
    std::optional<int> inconsistent_order;
    std::string report;
};

// Solves order by order up to eps^max_order; each order is linear once the lower
// orders are substituted, with their free coefficients promoted to parameters.
DeformationSearch search_deformation(const DeformationProblem& p, int max_order, const SolveOptions& solve = {{}, true, 4});

}  // namespace superjet
