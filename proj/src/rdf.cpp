#include "ontorep/rdf.hpp"

#include <unordered_map>

namespace ontorep {

Iri Iri::in(std::string_view prefix, std::string_view namespace_iri, std::string_view local) {
    return Iri(std::string(prefix), std::string(local),
               std::string(namespace_iri) + std::string(local));
}

Iri Iri::absolute(std::string_view full) {
    auto cut = full.find_last_of("#/");
    std::string local = cut == std::string_view::npos ? std::string(full)
                                                       : std::string(full.substr(cut + 1));
    if (local.empty()) local = std::string(full);
    return Iri("", std::move(local), std::string(full));
}

namespace vocab {
Iri rdf(std::string_view local) { return Iri::in("rdf", ns::rdf, local); }
Iri rdfs(std::string_view local) { return Iri::in("rdfs", ns::rdfs, local); }
Iri owl(std::string_view local) { return Iri::in("owl", ns::owl, local); }
Iri xsd(std::string_view local) { return Iri::in("xsd", ns::xsd, local); }
}  // namespace vocab

std::map<std::string, std::string> default_prefixes() {
    return {{"", ns::base}, {"owl", ns::owl}, {"rdf", ns::rdf}, {"rdfs", ns::rdfs}, {"xsd", ns::xsd}};
}

bool is_iri(const Node& n) { return std::holds_alternative<Iri>(n); }
bool is_blank(const Node& n) { return std::holds_alternative<BlankId>(n); }
bool is_literal(const Node& n) { return std::holds_alternative<Literal>(n); }

std::vector<Triple> canonical_blank_renaming(const std::vector<Triple>& triples) {
    std::unordered_map<std::string, std::string> renamed;
    auto rename = [&](Node n) {
        if (auto* b = std::get_if<BlankId>(&n)) {
            auto [it, fresh] = renamed.try_emplace(b->id, "");
            if (fresh) it->second = "_:b" + std::to_string(renamed.size());
            b->id = it->second;
        }
        return n;
    };
    std::vector<Triple> out;
    out.reserve(triples.size());
    for (const auto& t : triples) {
        Node s = rename(t.subject);
        Node o = rename(t.object);
        out.push_back(Triple{std::move(s), t.predicate, std::move(o)});
    }
    return out;
}

}  // namespace ontorep
