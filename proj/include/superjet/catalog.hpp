#pragma once

#include "superjet/parser.hpp"

#include <optional>
#include <string>
#include <vector>

namespace superjet {

struct CatalogEntry {
    std::string id;
    std::string title;
    std::string source;  // document text
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry* find_entry(const std::string& id);
// Parses the entry; throws Error for unknown ids.
SourceDocument load_entry(const std::string& id);

// The covering of a document with missing time derivatives of nonlocal variables
// filled in from the declared weights.
Covering complete_covering(const SourceDocument& doc);
// Document weights extended by the weights of phantoms.
WeightSystem document_weights(const SourceDocument& doc);

// c with a = c * b; nullopt when a is not a rational multiple of b. A zero b only
// matches a zero a, with c = 0.
std::optional<Rational> proportionality(const Flow& a, const Flow& b);

struct CheckResult {
    std::string kind;
    std::string name;
    bool holds = false;           // the mathematical statement checked out
    bool expect_failure = false;  // recorded as failing in the document
    std::string detail;

    bool ok() const { return holds != expect_failure; }
};

struct VerifyOptions {
    unsigned jobs = 1;
};

// Runs every check a document records: covering consistency, symmetries, shadows,
// conservation laws, derived equations, recursion images, nilpotency, commutators,
// Hamiltonian flows, the Miura map and its density expansions.
std::vector<CheckResult> verify_document(const SourceDocument& doc, const VerifyOptions& opts = {});

}  // namespace superjet
