#pragma once

#include "superjet/covering.hpp"
#include "superjet/gardner.hpp"
#include "superjet/recursion.hpp"
#include "superjet/varcalc.hpp"
#include "superjet/weights.hpp"

#include <optional>
#include <string>
#include <vector>

namespace superjet {

struct SyntaxError : Error {
    SyntaxError(const std::string& what, int line, int column);
    int line;
    int column;
};

// Objects of a document carry `expect_failure` when their verification is recorded
// as failing (written with the `refuted` prefix).
struct NamedFlow {
    std::string name;
    Flow flow;
    bool standalone = false;  // not claimed to be a symmetry of the system
    bool expect_failure = false;
};

struct NamedShadow {
    std::string name;
    Shadow shadow;
    bool expect_failure = false;
};

struct NamedDensity {
    std::string name;
    SuperPoly density;
    std::optional<Direction> image;  // conserved with flux in the image of this direction
    bool expect_failure = false;
};

// R(seed) = c * target for some nonzero rational c.
struct MapsClaim {
    std::string shadow, seed, target;
    bool expect_failure = false;
};

struct NilpotencyClaim {
    std::string shadow;
    int order = 0;
    bool expect_failure = false;
};

struct CommuteClaim {
    std::string first, second;
    bool expect_failure = false;
};

// The Hamiltonian flow of a density is c * flow for some rational c (c = 0 allowed
// when the flow is the zero flow).
struct GeneratesClaim {
    std::string density, flow;
    bool expect_failure = false;
};

// The first terms of the density recurrence of the Miura map for one base field.
struct ExpansionClaim {
    const Symbol* base = nullptr;
    std::vector<SuperPoly> terms;
    bool expect_failure = false;
};

struct NamedClaim {
    Claim claim;
    bool expect_failure = false;
};

struct SourceDocument {
    std::vector<std::pair<std::string, const Symbol*>> declared;  // in declaration order
    std::vector<const Symbol*> fields;                             // declared fields, in order
    std::vector<const Symbol*> params;
    std::vector<const Symbol*> functions;
    std::map<const Symbol*, const Symbol*, SymbolLess> function_args;
    std::vector<const Symbol*> auxiliaries;  // Clifford generators
    WeightSystem weights;

    EvolutionSystem system;
    std::vector<Nonlocality> nonlocal;
    EvolutionSystem extended;  // eps-deformed system of a Gardner deformation
    std::optional<MiuraMap> miura;
    std::optional<HamiltonianOperator> hamiltonian_operator;
    std::vector<DeformationProblem::Pin> pins;

    std::vector<NamedFlow> flows;
    std::vector<NamedShadow> shadows;
    std::vector<NamedDensity> densities;
    std::vector<NamedClaim> claims;
    std::vector<MapsClaim> maps;
    std::vector<NilpotencyClaim> nilpotency;
    std::vector<CommuteClaim> commutes;
    std::vector<GeneratesClaim> generates;
    std::vector<ExpansionClaim> expansions;

    const Symbol* lookup(const std::string& name) const;  // nullptr when undeclared
    Covering covering() const;
    const NamedFlow* flow(const std::string& name) const;
    const NamedShadow* shadow(const std::string& name) const;
    const NamedDensity* density(const std::string& name) const;
    // Every polynomial held by the document, for round-trip checks.
    std::vector<SuperPoly> expressions() const;
};

SourceDocument parse_document(std::string_view text);
// An expression over the symbols of a document, including phantoms of its fields and
// nonlocal variables.
SuperPoly parse_expression(std::string_view text, const SourceDocument& doc);
// A flow written `u = expr, v = expr` over the fields of the document.
Flow parse_flow(std::string_view text, const SourceDocument& doc, Parity parity = Parity::even);

// Canonical source text; parse_document(print_document(d)) reproduces d.
std::string print_document(const SourceDocument& doc);
std::string print_operator(const ScalarOperator& op);

}  // namespace superjet
