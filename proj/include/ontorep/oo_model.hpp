#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ontorep/evolution_op.hpp"
#include "ontorep/ontology.hpp"

namespace ontorep::oo {

inline constexpr const char* root_class = "Thing";

struct OoField {
    std::string name;
    std::string target;  // class name, "String"/"Integer" for datatypes
    enum class Multiplicity { Single, Many } multiplicity = Multiplicity::Single;
    bool setter_removed = false;
    /// Redefinition of a member inherited from a superclass (only its
    /// accessors are overridden).
    bool inherited = false;
};

struct Listener {
    std::string field;
    std::string required_class;
};

struct OoOperation {
    std::string name;
    std::string result_type;
};

struct OoInterface {
    std::string name;
    std::vector<OoOperation> operations;
    /// Ontology classes the interface stands for: the secondary super it
    /// replaces, or the two sides of a disjoint pair.
    std::vector<std::string> about;
};

struct OoClass {
    std::string name;
    std::string extends;  // empty only for the root
    std::vector<std::string> implements;
    std::vector<OoField> fields;
    std::vector<Listener> listeners;
    bool constructor_blocked = false;
    std::vector<std::string> registry;  // ids of instances this class created

    const OoField* field(const std::string& n) const;
};

struct ClassModel {
    std::vector<OoClass> classes;
    std::vector<OoInterface> interfaces;
    std::vector<Finding> warnings;

    OoClass* find(const std::string& name);
    const OoClass* find(const std::string& name) const;
    const OoInterface* find_interface(const std::string& name) const;
    /// Reflexive-transitive closure over `extends`.
    bool is_subclass(const std::string& sub, const std::string& super) const;
    /// The class declaring field `name`, searching `cls` and its ancestors.
    const OoClass* owner_of(const std::string& cls, const std::string& field) const;
};

struct OoInstance {
    std::string id;
    std::string creating_class;
    std::map<std::string, std::vector<std::string>> slots;
};

class MultipleInheritance : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Root class Thing, one class per ontology class, fields from properties,
/// listeners from someValuesFrom restrictions and a pair of clashing
/// interfaces per disjoint pair.
///
/// A class with several supers extends the first and implements an
/// interface for each other one; a multiple-inheritance warning records it.
ClassModel emit_class_model(const OntologyModel& m);

/// Java-like skeleton text. Not meant to compile.
std::string render_skeleton(const ClassModel& cm);

/// One object per individual, created by its most specific declared class.
/// Appends each id to the registry of its creating class.
std::vector<OoInstance> instantiate(ClassModel& cm, const OntologyModel& m);

/// The class model after `op`: for ChangeDomain the set accessor is removed
/// on every class under the old domain that is not under the new one; for
/// DeleteClass the class keeps its registry but its constructor is blocked
/// and its subclasses move to its parent.
ClassModel evolve_class_model(const ClassModel& cm, const EvolutionOp& op);

/// Ids of instances made inconsistent by `op`, checked against `evolved`.
std::set<std::string> find_inconsistent_objects(const std::vector<OoInstance>& instances,
                                                const ClassModel& evolved, const EvolutionOp& op);

/// Rendering of the class model and instances as JSON (the ".oo.json" file).
std::string to_json(const ClassModel& cm, const std::vector<OoInstance>& instances);

}  // namespace ontorep::oo
