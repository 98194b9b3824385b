#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ontorep/rdf.hpp"

namespace ontorep {

class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DuplicateDeclaration : public ModelError {
public:
    using ModelError::ModelError;
};

class UnknownClass : public std::runtime_error {
public:
    explicit UnknownClass(const std::string& name) : std::runtime_error("unknown class '" + name + "'") {}
};

struct Restriction {
    Iri on_property;
    Iri some_values_from;  // the only supported restriction kind

    friend bool operator==(const Restriction&, const Restriction&) = default;
};

struct ClassDecl {
    Iri name;
    std::vector<Iri> supers;  // declaration order; the first one is the primary parent
    std::vector<Iri> disjoint_with;
    std::vector<Restriction> restrictions;
    bool complete = false;  // equivalent to the intersection of its supers and restrictions
    /// Position of the class's first subClassOf axiom; orders siblings in
    /// discriminator columns. Classes built by hand keep declaration order.
    size_t subclass_rank = SIZE_MAX;
};

struct PropertyDecl {
    Iri name;
    std::vector<Iri> supers;
    std::optional<Iri> domain;
    std::optional<Iri> range;  // a class or an xsd datatype
    bool functional = false;
};

struct TypeAssertion {
    Iri individual;
    Iri cls;
    friend bool operator==(const TypeAssertion&, const TypeAssertion&) = default;
    friend auto operator<=>(const TypeAssertion&, const TypeAssertion&) = default;
};

using Value = std::variant<Iri, Literal>;

struct PropAssertion {
    Iri subject;
    Iri property;
    Value object;
    friend bool operator==(const PropAssertion&, const PropAssertion&) = default;
    friend auto operator<=>(const PropAssertion&, const PropAssertion&) = default;
};

using Fact = std::variant<TypeAssertion, PropAssertion>;

enum class Severity { Error, Warning };

/// Finding codes. The list is closed and part of the report schema.
namespace code {
inline constexpr std::string_view cycle = "cycle";
inline constexpr std::string_view dangling_ref = "dangling-ref";
inline constexpr std::string_view restriction_property = "restriction-on-undeclared-property";
inline constexpr std::string_view duplicate_declaration = "duplicate-declaration";
inline constexpr std::string_view unknown_predicate = "unknown-predicate";
inline constexpr std::string_view undeclared_class = "undeclared-class";
inline constexpr std::string_view undeclared_property = "undeclared-property";
inline constexpr std::string_view domain_violation = "domain-violation";
inline constexpr std::string_view range_violation = "range-violation";
inline constexpr std::string_view functional_violation = "functional-violation";
inline constexpr std::string_view disjoint_violation = "disjoint-violation";
inline constexpr std::string_view missing_some_values = "missing-some-values";
inline constexpr std::string_view multiple_inheritance = "multiple-inheritance";
inline constexpr std::string_view evolution_retarget = "evolution-retarget";
inline constexpr std::string_view evolution_drop = "evolution-drop";
}  // namespace code

struct Finding {
    Severity severity = Severity::Error;
    std::string code;
    std::vector<Iri> subjects;
    std::string backend;  // "ir", "types", "oo", "sql", "evolution"
    std::string message;
};

std::string_view to_string(Severity s);
std::string render(const Finding& f);
bool has_errors(const std::vector<Finding>& findings);

/// Insertion-ordered table keyed by absolute IRI.
template <typename Decl>
class DeclTable {
public:
    Decl* find(const Iri& name) { return find(name.full); }
    const Decl* find(const Iri& name) const { return find(name.full); }
    Decl* find(const std::string& full) {
        auto it = index_.find(full);
        return it == index_.end() ? nullptr : &items_[it->second];
    }
    const Decl* find(const std::string& full) const {
        auto it = index_.find(full);
        return it == index_.end() ? nullptr : &items_[it->second];
    }
    bool contains(const Iri& name) const { return index_.count(name.full) != 0; }

    /// Returns the existing entry or appends a new one.
    Decl& get_or_add(const Iri& name) {
        if (auto* d = find(name)) return *d;
        index_.emplace(name.full, items_.size());
        items_.push_back(Decl{});
        items_.back().name = name;
        return items_.back();
    }

    void erase(const Iri& name) {
        auto it = index_.find(name.full);
        if (it == index_.end()) return;
        items_.erase(items_.begin() + static_cast<long>(it->second));
        index_.clear();
        for (size_t i = 0; i < items_.size(); ++i) index_.emplace(items_[i].name.full, i);
    }

    auto begin() { return items_.begin(); }
    auto end() { return items_.end(); }
    auto begin() const { return items_.begin(); }
    auto end() const { return items_.end(); }
    size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }

private:
    std::vector<Decl> items_;
    std::unordered_map<std::string, size_t> index_;
};

struct OntologyModel {
    DeclTable<ClassDecl> classes;
    DeclTable<PropertyDecl> properties;
    std::vector<Fact> abox;
    std::vector<Finding> build_warnings;

    /// Looks a class up by absolute IRI, "prefix:local" or bare local name.
    const ClassDecl* find_class_named(std::string_view name) const;
    const PropertyDecl* find_property_named(std::string_view name) const;

    /// Individuals in order of first mention.
    std::vector<Iri> individuals() const;
    std::vector<Iri> declared_types(const Iri& individual) const;
    /// Direct subclasses in class declaration order.
    std::vector<Iri> subclasses(const Iri& cls) const;
    /// Direct subclasses whose primary parent is `cls`, in subClassOf axiom order.
    std::vector<Iri> primary_subclasses(const Iri& cls) const;
};

bool is_datatype(const Iri& iri);

/// Builds the model from triples. Blank restriction nodes fold into the class
/// that lists them as super or as member of an equivalent intersection.
OntologyModel build_model(const TripleSet& ts);

/// Structural well-formedness: cycles, dangling references, restrictions on
/// undeclared properties. An empty result means the model is valid.
std::vector<Finding> validate_tbox(const OntologyModel& m);

/// Reflexive-transitive closure over supers.
bool is_subtype(const OntologyModel& m, const Iri& a, const Iri& b);

/// Declared classes present in the model plus all their ancestors.
std::set<Iri> effective_types(const OntologyModel& m, const Iri& individual);

/// True when the individual has some effective type below `required`.
bool conforms(const OntologyModel& m, const Iri& individual, const Iri& required);

/// Literal-kind check for datatype ranges.
bool literal_matches(const Literal& lit, const Iri& datatype);

struct CheckConfig {
    enum class Mode { Strict, Infer };
    Mode mode = Mode::Strict;
    Severity restriction_severity = Severity::Warning;
};

/// Closed-world conformance of the ABox against the TBox.
std::vector<Finding> check_abox(const OntologyModel& m, const CheckConfig& cfg = {});

/// Adds the type assertions implied by domains and ranges. Idempotent.
OntologyModel infer_domain_types(const OntologyModel& m);

class AmbiguousClass : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoClass : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The declared class of `individual` that every other declared class
/// subsumes. Ties between equal candidates go to the first asserted.
/// Only classes present in the model are considered.
Iri most_specific_class(const OntologyModel& m, const Iri& individual);

/// Path of primary parents from the root down to `cls`, inclusive.
std::vector<Iri> primary_chain(const OntologyModel& m, const Iri& cls);

}  // namespace ontorep
