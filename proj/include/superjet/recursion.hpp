#pragma once

#include "superjet/covering.hpp"
#include "superjet/varcalc.hpp"

#include <optional>
#include <string>
#include <vector>

namespace superjet {

// Cartan form of a recursion: components keyed by base fields, each linear in the
// phantoms of a PhantomSystem.
using Shadow = Flow;

Shadow identity_shadow(const PhantomSystem& ps);

// Dt(R_u) - (linearized rhs_u evaluated on R), per field, in the phantom covering.
Flow verify_shadow(const PhantomSystem& ps, const Shadow& r);

// Replaces each phantom jet D^k P, moved to the right end of its monomial, by
// D^k(images[P]). Throws when a term is not linear in phantoms.
SuperPoly substitute_phantoms(const PhantomSystem& ps, const SuperPoly& expr,
                              const std::map<const Symbol*, SuperPoly, SymbolLess>& images, const Covering& ctx);

struct Application {
    bool local = false;
    Flow flow;
    std::map<const Symbol*, SuperPoly, SymbolLess> nonlocal_images;  // keyed by nonlocal phantom
    std::string failure;
};

// R(phi): local phantoms take the components of phi, nonlocal phantoms the primitives
// of their linearized definitions evaluated on phi.
Application apply_shadow(const PhantomSystem& ps, const Shadow& r, const Flow& phi, const WeightSystem& ws,
                         const IntegrateOptions& opts = {});

// Largest m + d1 + d2 over the jets of a flow.
unsigned differential_order(const Flow& phi);

struct SequenceTerm {
    Flow flow;
    bool symmetry = false;
    unsigned order = 0;
};

struct SymmetrySequence {
    std::vector<SequenceTerm> terms;  // terms[0] is the seed
    bool complete = true;
    std::string failure;
};

SymmetrySequence iterate(const PhantomSystem& ps, const Shadow& r, const Flow& seed, int n, const WeightSystem& ws,
                         const IntegrateOptions& opts = {});

// r1 after r2: the phantoms of r1 are replaced by the components of r2.
Shadow compose(const PhantomSystem& ps, const Shadow& r1, const Shadow& r2);
// Least k <= max with r^k = 0.
std::optional<int> nilpotency_order(const PhantomSystem& ps, const Shadow& r, int max);

}  // namespace superjet
