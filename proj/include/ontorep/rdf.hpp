#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace ontorep {

namespace ns {
inline constexpr const char* rdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr const char* rdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr const char* owl = "http://www.w3.org/2002/07/owl#";
inline constexpr const char* xsd = "http://www.w3.org/2001/XMLSchema#";
/// Namespace bound to the empty prefix when a document does not declare one.
inline constexpr const char* base = "http://example.org/onto#";
}  // namespace ns

/// An IRI, remembering the prefix it was written with. Identity is the
/// expanded form only.
struct Iri {
    std::string prefix;
    std::string local;
    std::string full;

    Iri() = default;
    Iri(std::string prefix_, std::string local_, std::string full_)
        : prefix(std::move(prefix_)), local(std::move(local_)), full(std::move(full_)) {}

    /// Builds an IRI from a namespace and a local name.
    static Iri in(std::string_view prefix, std::string_view namespace_iri, std::string_view local);
    /// Builds an IRI from an absolute form, splitting the local name after the last '#' or '/'.
    static Iri absolute(std::string_view full);

    friend bool operator==(const Iri& a, const Iri& b) { return a.full == b.full; }
    friend std::strong_ordering operator<=>(const Iri& a, const Iri& b) { return a.full <=> b.full; }
};

struct BlankId {
    std::string id;  // "_:b1", "_:b2", ...
    friend bool operator==(const BlankId&, const BlankId&) = default;
    friend auto operator<=>(const BlankId&, const BlankId&) = default;
};

struct Literal {
    enum class Kind { String, Integer };
    std::string lexical;
    Kind kind = Kind::String;
    std::optional<std::string> datatype;  // absolute IRI, when written explicitly

    friend bool operator==(const Literal&, const Literal&) = default;
    friend auto operator<=>(const Literal&, const Literal&) = default;
};

using Node = std::variant<Iri, BlankId, Literal>;

struct Triple {
    Node subject;  // Iri or BlankId
    Iri predicate;
    Node object;

    friend bool operator==(const Triple&, const Triple&) = default;
    friend auto operator<=>(const Triple&, const Triple&) = default;
};

struct TripleSet {
    std::map<std::string, std::string> prefixes;  // short name -> namespace
    std::vector<Triple> triples;                  // document order

    friend bool operator==(const TripleSet&, const TripleSet&) = default;
};

namespace vocab {
Iri rdf(std::string_view local);
Iri rdfs(std::string_view local);
Iri owl(std::string_view local);
Iri xsd(std::string_view local);
}  // namespace vocab

/// The prefixes every document starts with: rdf, rdfs, owl, xsd and the default ":".
std::map<std::string, std::string> default_prefixes();

bool is_iri(const Node& n);
bool is_blank(const Node& n);
bool is_literal(const Node& n);

/// Renames blank nodes to "_:b1", "_:b2", ... in order of first appearance.
/// Two triple lists equal after this are equal up to blank-node renaming.
std::vector<Triple> canonical_blank_renaming(const std::vector<Triple>& triples);

}  // namespace ontorep
