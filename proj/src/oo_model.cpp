#include "ontorep/oo_model.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace ontorep::oo {

const OoField* OoClass::field(const std::string& n) const {
    for (const auto& f : fields)
        if (f.name == n) return &f;
    return nullptr;
}

OoClass* ClassModel::find(const std::string& name) {
    for (auto& c : classes)
        if (c.name == name) return &c;
    return nullptr;
}

const OoClass* ClassModel::find(const std::string& name) const {
    for (const auto& c : classes)
        if (c.name == name) return &c;
    return nullptr;
}

const OoInterface* ClassModel::find_interface(const std::string& name) const {
    for (const auto& i : interfaces)
        if (i.name == name) return &i;
    return nullptr;
}

bool ClassModel::is_subclass(const std::string& sub, const std::string& super) const {
    const OoClass* c = find(sub);
    for (size_t hops = 0; c && hops <= classes.size(); ++hops) {
        if (c->name == super) return true;
        if (c->extends.empty()) return false;
        c = find(c->extends);
    }
    return false;
}

const OoClass* ClassModel::owner_of(const std::string& cls, const std::string& field) const {
    const OoClass* c = find(cls);
    for (size_t hops = 0; c && hops <= classes.size(); ++hops) {
        if (const auto* f = c->field(field); f && !f->inherited) return c;
        if (c->extends.empty()) return nullptr;
        c = find(c->extends);
    }
    return nullptr;
}

namespace {

std::string datatype_name(const Iri& dt) {
    const auto& l = dt.local;
    if (l == "integer" || l == "int" || l == "long" || l == "short" || l == "nonNegativeInteger" ||
        l == "positiveInteger")
        return "Integer";
    return "String";
}

std::string target_of(const PropertyDecl& p) {
    if (!p.range) return root_class;
    return is_datatype(*p.range) ? datatype_name(*p.range) : p.range->local;
}

std::string java_type(const OoField& f) {
    return f.multiplicity == OoField::Multiplicity::Many ? "List<" + f.target + ">" : f.target;
}

std::string value_text(const Value& v) {
    if (auto* iri = std::get_if<Iri>(&v)) return iri->local;
    return std::get<Literal>(v).lexical;
}

}  // namespace

ClassModel emit_class_model(const OntologyModel& m) {
    ClassModel cm;
    OoClass thing{root_class, "", {}, {{"objectURL", "String", OoField::Multiplicity::Single, false, false}}, {}, false, {}};
    cm.classes.push_back(std::move(thing));

    for (const auto& c : m.classes) {
        if (c.name.local == root_class) continue;
        OoClass oc;
        oc.name = c.name.local;
        oc.extends = root_class;
        std::vector<Iri> declared_supers;
        for (const auto& s : c.supers)
            if (m.classes.contains(s)) declared_supers.push_back(s);
        if (!declared_supers.empty()) oc.extends = declared_supers.front().local;
        for (size_t i = 1; i < declared_supers.size(); ++i) {
            std::string iface = "I" + declared_supers[i].local;
            if (!cm.find_interface(iface)) cm.interfaces.push_back({iface, {}, {declared_supers[i].local}});
            oc.implements.push_back(iface);
        }
        if (declared_supers.size() > 1)
            cm.warnings.push_back({Severity::Warning, std::string(code::multiple_inheritance), {c.name}, "oo",
                                   "'" + oc.name + "' extends " + oc.extends +
                                       "; its other superclasses become interfaces"});
        for (const auto& r : c.restrictions) oc.listeners.push_back({r.on_property.local, r.some_values_from.local});
        cm.classes.push_back(std::move(oc));
    }

    for (const auto& p : m.properties) {
        std::string owner = p.domain ? p.domain->local : std::string(root_class);
        OoClass* oc = cm.find(owner);
        if (!oc) continue;  // dangling domain; reported by validate_tbox
        oc->fields.push_back({p.name.local, target_of(p),
                              p.functional ? OoField::Multiplicity::Single : OoField::Multiplicity::Many, false,
                              false});
    }

    // Each disjoint pair gets two interfaces declaring the same operation
    // with different result types, so no class can implement both.
    for (const auto& c : m.classes) {
        for (const auto& d : c.disjoint_with) {
            if (!(c.name < d) || !m.classes.contains(d)) continue;
            const std::string a = c.name.local;
            const std::string b = d.local;
            const std::string op = "disjoint" + a + b;
            cm.interfaces.push_back({"I" + a + "Versus" + b, {{op, a}}, {a, b}});
            cm.interfaces.push_back({"I" + b + "Versus" + a, {{op, b}}, {a, b}});
            if (auto* ca = cm.find(a)) ca->implements.push_back("I" + a + "Versus" + b);
            if (auto* cb = cm.find(b)) cb->implements.push_back("I" + b + "Versus" + a);
        }
    }
    return cm;
}

std::string render_skeleton(const ClassModel& cm) {
    std::ostringstream out;
    for (const auto& i : cm.interfaces) {
        out << "public interface " << i.name << " {\n";
        for (const auto& op : i.operations) out << "    " << op.result_type << " " << op.name << "();\n";
        out << "}\n\n";
    }
    for (const auto& c : cm.classes) {
        out << "public class " << c.name;
        if (!c.extends.empty()) out << " extends " << c.extends;
        if (!c.implements.empty()) {
            out << " implements ";
            for (size_t i = 0; i < c.implements.size(); ++i) out << (i ? ", " : "") << c.implements[i];
        }
        out << " {\n";
        if (c.constructor_blocked) {
            out << "    public " << c.name << "() {\n"
                << "        throw new UnsupportedOperationException(\"" << c.name
                << " can no longer be instantiated\");\n    }\n";
        } else if (!c.registry.empty()) {
            out << "    private static ArrayList tous = new ArrayList();\n"
                << "    public " << c.name << "() { tous.add(new WeakReference(this)); }\n";
        }
        for (const auto& f : c.fields) {
            const std::string t = java_type(f);
            if (!f.inherited) out << "    protected " << t << " " << f.name << ";\n";
            if (f.setter_removed)
                out << "    public void set" << f.name << "(" << t
                    << " v) { throw new UnsupportedOperationException(\"set" << f.name << "\"); }\n";
            else if (!f.inherited)
                out << "    public void set" << f.name << "(" << t << " v) {...}\n";
            if (!f.inherited) out << "    public " << t << " get" << f.name << "() {...}\n";
        }
        for (const auto& l : c.listeners) {
            out << "    // listener " << c.name << l.field << "Test is registered on the accessors of "
                << l.field << "\n";
        }
        for (const auto& iname : c.implements) {
            const auto* i = cm.find_interface(iname);
            if (!i) continue;
            for (const auto& op : i->operations)
                out << "    public " << op.result_type << " " << op.name << "() {...}\n";
        }
        out << "}\n\n";
        for (const auto& l : c.listeners) {
            out << "public class " << c.name << l.field << "Test implements PropertyChangeListener {\n"
                << "    public void propertyChange(PropertyChangeEvent evt) {\n"
                << "        // no value of evt is a " << l.required_class << ": throw\n"
                << "    }\n}\n\n";
        }
    }
    return out.str();
}

std::vector<OoInstance> instantiate(ClassModel& cm, const OntologyModel& m) {
    std::vector<OoInstance> out;
    for (const auto& ind : m.individuals()) {
        Iri cls = most_specific_class(m, ind);
        OoClass* oc = cm.find(cls.local);
        if (!oc) throw NoClass("class '" + cls.local + "' of '" + ind.local + "' is not in the class model");
        OoInstance inst{ind.local, oc->name, {}};
        for (const auto& f : m.abox)
            if (const auto* pa = std::get_if<PropAssertion>(&f); pa && pa->subject == ind)
                inst.slots[pa->property.local].push_back(value_text(pa->object));
        oc->registry.push_back(ind.local);
        out.push_back(std::move(inst));
    }
    return out;
}

namespace {

void evolve(ClassModel& cm, const ChangeDomain& op) {
    const std::string field = local_name(op.property);
    const std::string target = local_name(op.new_domain);
    const OoClass* owner = nullptr;
    for (const auto& c : cm.classes)
        if (const auto* f = c.field(field); f && !f->inherited) owner = &c;
    if (!owner || !cm.find(target)) return;
    const std::string old_domain = owner->name;
    const OoField declared = *owner->field(field);

    if (cm.is_subclass(old_domain, target)) {
        // Widening: the member moves up to the new domain.
        OoClass* from = cm.find(old_domain);
        from->fields.erase(std::remove_if(from->fields.begin(), from->fields.end(),
                                          [&](const OoField& f) { return f.name == field; }),
                           from->fields.end());
        OoField moved = declared;
        moved.setter_removed = false;
        cm.find(target)->fields.push_back(moved);
        return;
    }
    for (auto& c : cm.classes) {
        if (!cm.is_subclass(c.name, old_domain) || cm.is_subclass(c.name, target)) continue;
        auto it = std::find_if(c.fields.begin(), c.fields.end(), [&](const OoField& f) { return f.name == field; });
        if (it != c.fields.end()) {
            it->setter_removed = true;
        } else {
            OoField redefined = declared;
            redefined.setter_removed = true;
            redefined.inherited = true;
            c.fields.push_back(redefined);
        }
    }
    if (!cm.is_subclass(target, old_domain)) {
        OoField added = declared;
        added.setter_removed = false;
        added.inherited = false;
        cm.find(target)->fields.push_back(added);
    }
}

void evolve(ClassModel& cm, const DeleteClass& op) {
    const std::string name = local_name(op.cls);
    OoClass* c = cm.find(name);
    if (!c || c->name == root_class) return;
    c->constructor_blocked = true;
    const std::string parent = c->extends;
    std::vector<OoField> moved;
    for (auto& f : c->fields) {
        if (f.inherited) continue;
        moved.push_back(f);
        f.inherited = true;
    }
    for (auto& other : cm.classes)
        if (other.extends == name) other.extends = parent;
    if (OoClass* p = cm.find(parent)) {
        for (auto f : moved) {
            if (p->field(f.name)) continue;
            f.setter_removed = false;
            p->fields.push_back(f);
        }
    }
    // Disjointness and restrictions naming the class are gone.
    std::vector<std::string> dropped;
    for (const auto& i : cm.interfaces)
        if (i.about.size() == 2 && std::find(i.about.begin(), i.about.end(), name) != i.about.end())
            dropped.push_back(i.name);
    cm.interfaces.erase(std::remove_if(cm.interfaces.begin(), cm.interfaces.end(),
                                       [&](const OoInterface& i) {
                                           return std::find(dropped.begin(), dropped.end(), i.name) !=
                                                  dropped.end();
                                       }),
                        cm.interfaces.end());
    for (auto& other : cm.classes) {
        auto& impl = other.implements;
        impl.erase(std::remove_if(impl.begin(), impl.end(),
                                  [&](const std::string& i) {
                                      return std::find(dropped.begin(), dropped.end(), i) != dropped.end();
                                  }),
                   impl.end());
        auto& ls = other.listeners;
        ls.erase(std::remove_if(ls.begin(), ls.end(), [&](const Listener& l) { return l.required_class == name; }),
                 ls.end());
    }
}

}  // namespace

ClassModel evolve_class_model(const ClassModel& cm, const EvolutionOp& op) {
    ClassModel out = cm;
    std::visit([&](const auto& o) { evolve(out, o); }, op);
    return out;
}

std::set<std::string> find_inconsistent_objects(const std::vector<OoInstance>& instances,
                                                const ClassModel& evolved, const EvolutionOp& op) {
    std::set<std::string> out;
    if (const auto* cd = std::get_if<ChangeDomain>(&op)) {
        const std::string field = local_name(cd->property);
        const std::string target = local_name(cd->new_domain);
        for (const auto& inst : instances) {
            auto it = inst.slots.find(field);
            if (it == inst.slots.end() || it->second.empty()) continue;
            if (!evolved.is_subclass(inst.creating_class, target)) out.insert(inst.id);
        }
    } else {
        const std::string name = local_name(std::get<DeleteClass>(op).cls);
        if (const auto* c = evolved.find(name)) out.insert(c->registry.begin(), c->registry.end());
    }
    return out;
}

std::string to_json(const ClassModel& cm, const std::vector<OoInstance>& instances) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["schema"] = "1";
    ordered_json classes = ordered_json::array();
    for (const auto& c : cm.classes) {
        ordered_json jc;
        jc["name"] = c.name;
        jc["extends"] = c.extends.empty() ? ordered_json(nullptr) : ordered_json(c.extends);
        jc["implements"] = c.implements;
        ordered_json fields = ordered_json::array();
        for (const auto& f : c.fields) {
            fields.push_back({{"name", f.name},
                              {"target", f.target},
                              {"multiplicity", f.multiplicity == OoField::Multiplicity::Single ? "single" : "many"},
                              {"setter_removed", f.setter_removed},
                              {"inherited", f.inherited}});
        }
        jc["fields"] = std::move(fields);
        ordered_json listeners = ordered_json::array();
        for (const auto& l : c.listeners) listeners.push_back({{"field", l.field}, {"required_class", l.required_class}});
        jc["listeners"] = std::move(listeners);
        jc["constructor_blocked"] = c.constructor_blocked;
        jc["registry"] = c.registry;
        classes.push_back(std::move(jc));
    }
    j["classes"] = std::move(classes);
    ordered_json interfaces = ordered_json::array();
    for (const auto& i : cm.interfaces) {
        ordered_json ops = ordered_json::array();
        for (const auto& op : i.operations) ops.push_back({{"name", op.name}, {"result_type", op.result_type}});
        interfaces.push_back({{"name", i.name}, {"operations", std::move(ops)}, {"about", i.about}});
    }
    j["interfaces"] = std::move(interfaces);
    ordered_json insts = ordered_json::array();
    for (const auto& inst : instances) {
        ordered_json slots = ordered_json::object();
        for (const auto& [k, v] : inst.slots) slots[k] = v;
        insts.push_back({{"id", inst.id}, {"creating_class", inst.creating_class}, {"slots", std::move(slots)}});
    }
    j["instances"] = std::move(insts);
    return j.dump(2) + "\n";
}

}  // namespace ontorep::oo
