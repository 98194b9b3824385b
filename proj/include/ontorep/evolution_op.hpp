#pragma once

#include <string>
#include <string_view>
#include <variant>

namespace ontorep {

/// The domain of `property` becomes `new_domain`.
struct ChangeDomain {
    std::string property;
    std::string new_domain;
    friend bool operator==(const ChangeDomain&, const ChangeDomain&) = default;
};

/// `cls` is removed; its subclasses move up to its supers.
struct DeleteClass {
    std::string cls;
    friend bool operator==(const DeleteClass&, const DeleteClass&) = default;
};

/// Entity names are as written in the ops file: a local name, "prefix:local"
/// or an absolute IRI.
using EvolutionOp = std::variant<ChangeDomain, DeleteClass>;

/// "change-domain manage Director" / "delete-class Manager"
std::string to_string(const EvolutionOp& op);

/// Local part of an entity name: text after the last '#', '/' or ':'.
std::string local_name(std::string_view name);

}  // namespace ontorep
