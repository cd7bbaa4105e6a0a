#pragma once

#include "superjet/covering.hpp"
#include "superjet/linsolve.hpp"
#include "superjet/recursion.hpp"
#include "superjet/weights.hpp"

#include <vector>

namespace superjet {

struct SearchOptions {
    SolveOptions solve{{}, true, 4};
    EnumerateOptions enumerate;
    // Let the nonlocal variables of the covering enter the coefficients.
    bool nonlocal_coefficients = false;
};

struct FlowBranch {
    std::vector<Condition> conditions;
    bool consistent = true;
    bool split_limit_reached = false;
    std::vector<Flow> basis;
};

struct SearchResult {
    size_t ansatz_size = 0;
    size_t equations = 0;
    std::vector<FlowBranch> branches;
};

// Weight system extended by declared nonlocal weights.
WeightSystem covering_weights(const Covering& c, const WeightSystem& ws);
// Additionally assigns every phantom the weight of its base variable.
WeightSystem phantom_weights(const PhantomSystem& ps, const WeightSystem& ws);

// All symmetries u_s = phi_u of weight [s] and parity of s, as a basis per branch.
SearchResult find_symmetries(const Covering& c, const WeightSystem& ws, const Rational& weight, Parity parity,
                             const SearchOptions& opts = {});

// All shadows of weight [s_R]; ws must weigh phantoms (see phantom_weights).
SearchResult find_shadows(const PhantomSystem& ps, const WeightSystem& ws, const Rational& weight,
                          const SearchOptions& opts = {});

// Whether phi is a combination of basis over the parameter field (generic parameters).
bool in_span(const Flow& phi, const std::vector<Flow>& basis);

}  // namespace superjet
