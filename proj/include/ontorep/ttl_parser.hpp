#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "ontorep/rdf.hpp"

namespace ontorep {

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(int line, int col, const std::string& message);
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

class UnknownPrefix : public std::runtime_error {
public:
    explicit UnknownPrefix(std::string name);
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

/// Parses the Turtle subset used for small OWL ontologies:
/// @prefix directives, predicate lists (";"), object lists (","), the "a"
/// keyword, "[ ... ]" blank nodes, "_:x" labels, "( ... )" collections,
/// string and integer literals, and "#" comments.
///
/// Blank nodes get ids "_:b1", "_:b2", ... in the order the parser meets them.
/// rdf, rdfs, owl, xsd and ":" are bound before the first directive.
TripleSet parse_document(std::string_view text);

/// Canonical Turtle: sorted prefix directives, then one statement per triple
/// in stored order. Parsing the result gives back the same triples up to
/// blank-node renaming.
std::string serialize(const TripleSet& ts);

}  // namespace ontorep
