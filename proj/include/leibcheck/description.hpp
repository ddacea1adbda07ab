#pragma once

#include "leibcheck/structures.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>

namespace leibcheck {

/// Parse or schema violation in a description file; carries the position
/// annotation produced by the JSON parser when available.
struct DescriptionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Failed load-time validation: a named check plus its witness.
struct ValidationError : std::runtime_error {
    std::string check;
    std::string witness;
    ValidationError(std::string check_, std::string witness_)
        : std::runtime_error("validation failed: " + check_ +
                             (witness_.empty() ? "" : " at " + witness_)),
          check(std::move(check_)), witness(std::move(witness_)) {}
};

/// A loaded description: spaces, structures, and the optional Maurer-Cartan
/// element and morphism.
struct Session {
    std::string source_path;
    int truncation = 1;
    std::map<std::string, AlgebraStructure> structures;
    std::optional<std::string> mc_structure;
    std::optional<Element> mc_element;
    std::optional<LinfMorphism> morphism;
    std::optional<int> morphism_completed_to;
    /// Written back out as "complete_to_arity": the stored coefficients are a
    /// seed that the loader completes by solving.
    std::optional<int> morphism_complete_request;

    const AlgebraStructure* structure(const std::string& name) const {
        auto it = structures.find(name);
        return it == structures.end() ? nullptr : &it->second;
    }
};

struct LoadOptions {
    std::optional<int> truncation_override;
    bool validate = true;
    /// Arity bound for the morphism-equation validation on load.
    int morphism_check_arity = 4;
};

/// Reads a description file.  Throws DescriptionError on parse problems and
/// ValidationError when a loaded object fails its defining identities.
Session load_description(const std::filesystem::path& path, const LoadOptions& options = {});

/// Same, from an in-memory document (used by the bindings and tests).
Session load_description_text(const std::string& text, const LoadOptions& options = {},
                              const std::string& origin = "<memory>");

/// Serializes a session back to the description format (hand-editable,
/// deterministic field order).
std::string describe_session(const Session& session);

/// Transfer output: the B tables in the same entry format as input morphisms,
/// self-contained (spaces included) and reloadable.
struct BTables {
    int truncation = 1;
    SpacePtr source;
    SpacePtr target;
    std::vector<MultilinearMap> taylor;                // index n-1 holds B_n
    std::map<std::pair<int, int>, MultilinearMap> terms; // (n, j) -> B_n^j
};

std::string describe_b_tables(const BTables& tables);
BTables load_b_tables_text(const std::string& text);
BTables load_b_tables(const std::filesystem::path& path);

/// Canonical machine form of a bare scalar: a list of {"exp": e, "coeff": "p/q"}.
std::string scalar_to_json(const Scalar& value);
Scalar scalar_from_json(const std::string& text, int truncation);

} // namespace leibcheck
