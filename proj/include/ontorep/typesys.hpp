#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ontorep/ontology.hpp"

namespace ontorep::types {

/// Name of the synthetic root type used for missing domains and ranges.
inline constexpr std::string_view root_type = "Thing";

struct Signature {
    Iri function;
    std::string domain;    // type name, "Thing" when undeclared
    std::string codomain;  // type name or datatype name
};

/// Constants sharing one declared type, rendered "r3, r4 : Manager;".
struct ConstantDecl {
    std::vector<Iri> constants;
    Iri type;
};

struct Application {
    Iri function;
    Iri arg;
    Value result;
};

/// The type-system view of an ontology: types, subtyping, signatures,
/// typed constants and the applications that annotate them.
struct TypeProgram {
    std::vector<Iri> type_decls;
    std::vector<std::pair<Iri, Iri>> subtype_decls;
    std::vector<Signature> signatures;
    std::vector<ConstantDecl> constant_decls;
    std::vector<Application> applications;

    std::string render() const;
};

enum class ErrorKind { UndeclaredType, SignatureMismatch, FunctionalViolation, DisjointViolation };

std::string_view to_string(ErrorKind k);

struct TypeError {
    ErrorKind kind;
    std::string locus;  // "r3, r4 : Manager" or "manage(r4, v4)"
    std::string message;
    std::vector<Iri> subjects;
    /// Type named by an undeclared-type error, or the declared type of the
    /// offending argument of a signature mismatch (empty when untyped).
    std::vector<Iri> culprit_types;
    Iri function;  // set for application errors
    bool domain_side = false;

    /// "ERROR <kind> at <locus>: <message>"
    std::string render() const;
};

TypeProgram emit_types(const OntologyModel& m);

/// Checks the constants and applications of `prog` against the types and
/// signatures of `m`. `prog` may come from an older model.
std::vector<TypeError> typecheck(const TypeProgram& prog, const OntologyModel& m);

}  // namespace ontorep::types
