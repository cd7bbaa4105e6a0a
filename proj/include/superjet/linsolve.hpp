#pragma once

#include "superjet/superalg.hpp"

#include <set>
#include <string>
#include <vector>

namespace superjet {

// Laurent polynomial in parameters: a SuperPoly without atoms.
using ParamPoly = SuperPoly;

bool is_param_poly(const SuperPoly& p);
// Single term c * params with c != 0.
bool is_monomial(const ParamPoly& p);
ParamPoly monomial_inverse(const ParamPoly& p);
ParamPoly set_param_zero(const ParamPoly& p, const Symbol* param);

// sum_i coeffs[i] * x_i = rhs
struct LinearEquation {
    std::map<int, ParamPoly> coeffs;
    ParamPoly rhs;
};

struct LinearSystem {
    int num_unknowns = 0;
    std::vector<LinearEquation> equations;
};

struct Condition {
    ParamPoly expr;
    bool nonzero = false;  // expr != 0 when true, expr = 0 otherwise
};
std::string to_string(const Condition& c);

struct SolutionBranch {
    std::vector<Condition> conditions;
    bool consistent = true;
    // Inconsistent branches: the nonzero right-hand side left over.
    ParamPoly obstruction;
    // x = particular / denominator + sum_k t_k basis[k]
    std::vector<ParamPoly> particular;
    ParamPoly denominator{1};
    std::vector<std::vector<ParamPoly>> basis;
    std::vector<int> free_unknowns;
    bool split_limit_reached = false;
};

struct SolveOptions {
    // Parameters known to be nonzero; every parameter when generic is set.
    std::set<const Symbol*, SymbolLess> nonzero;
    bool generic = false;
    int max_split_depth = 4;
};

std::vector<SolutionBranch> solve_linear(const LinearSystem& sys, const SolveOptions& opts = {});

// Reads a polynomial that is affine in unknown-constant atoms as a linear system:
// one equation per monomial in the remaining atoms. Throws NonlinearSystem when a
// term has more than one unknown factor.
LinearSystem extract_linear_system(const SuperPoly& residual, int num_unknowns);
void append_equations(LinearSystem& sys, const SuperPoly& residual);

// Sum of c_i * x_i with c_i taken from a solution vector; atoms are unknowns.
SuperPoly unknown_atom(int index);
// Replaces unknowns by values (Laurent polynomials in parameters).
SuperPoly assign_unknowns(const SuperPoly& p, const std::vector<ParamPoly>& values);

// Rescales v so that its first nonzero entry is 1 when that entry is a monomial.
void normalize_vector(std::vector<ParamPoly>& v);

}  // namespace superjet
