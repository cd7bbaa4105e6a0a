#pragma once

#include "superjet/jetspace.hpp"
#include "superjet/weights.hpp"

#include <string>
#include <vector>

namespace superjet {

// Left partial derivative: the variable is moved to the front of each monomial, then
// removed. For the zeroth jet of a field, function atoms at that field follow the chain rule.
SuperPoly graded_partial(const SuperPoly& p, const Atom& v);

// Variational derivative of the functional with density h along the field u (left
// convention). Annihilates Dx- and D-images.
SuperPoly euler(const SuperPoly& h, const Symbol* u);
std::vector<SuperPoly> euler_gradient(const SuperPoly& h, const std::vector<const Symbol*>& fields);
bool same_functional(const SuperPoly& h1, const SuperPoly& h2, const std::vector<const Symbol*>& fields);

// Euler operator in x alone, treating D1^d1 D2^d2 u as an independent variable. A
// density is Dx-exact (up to constants) iff all of these vanish.
SuperPoly euler_x(const SuperPoly& h, const Symbol* u, int d1 = 0, int d2 = 0);

// Linear differential operator sum coeff * D1^d1 D2^d2 Dx^m; the coefficient multiplies
// on the left.
struct OperatorTerm {
    SuperPoly coeff{1};
    int d1 = 0;
    int d2 = 0;
    unsigned m = 0;
};
using ScalarOperator = std::vector<OperatorTerm>;
SuperPoly apply_operator(const ScalarOperator& op, const SuperPoly& p);

// Which partial derivative the gradient is built from. For an odd field and an even
// density the right gradient is minus the left one.
enum class Gradient { left, right };

struct HamiltonianOperator {
    std::vector<std::vector<ScalarOperator>> entries;
    Gradient gradient = Gradient::left;
};

// u_i = sum_j A_ij (delta H / delta u_j)
Flow hamiltonian_flow(const HamiltonianOperator& A, const SuperPoly& h, const std::vector<const Symbol*>& fields);

struct IntegrateOptions {
    EnumerateOptions enumerate;
    const Covering* ctx = nullptr;  // reduce nonlocal jets through this covering
};

struct IntegrationResult {
    bool exact = false;
    SuperPoly primitive;
    // When not exact: Euler gradients certifying the obstruction (may be empty when the
    // ansatz was too small to decide).
    std::vector<SuperPoly> obstruction;
    std::string reason;
};

// Solves dir(primitive) = e over a homogeneous ansatz, piece by piece in weight,
// parity and parameter monomial.
IntegrationResult d_integrate(const SuperPoly& e, Direction dir, const WeightSystem& ws,
                              const IntegrateOptions& opts = {});

struct Conservation {
    bool conserved = false;
    SuperPoly flux;
    SuperPoly time_derivative;
    std::vector<SuperPoly> obstruction;
};

// dt(rho) = image(flux)
Conservation is_conserved(const Covering& c, const SuperPoly& rho, Direction image, const WeightSystem& ws,
                          const IntegrateOptions& opts = {});

// Fills in missing time derivatives of nonlocal variables by integrating dt of their
// D- or x-definition, layer by layer. Throws MissingDefinition when not exact.
Covering derive_time_definitions(const Covering& c, const WeightSystem& ws, const IntegrateOptions& opts = {});

}  // namespace superjet
