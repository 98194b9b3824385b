#include "ontorep/ontology.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace ontorep {

std::string_view to_string(Severity s) { return s == Severity::Error ? "error" : "warning"; }

std::string render(const Finding& f) {
    std::ostringstream out;
    out << to_string(f.severity) << " [" << f.code << "]";
    if (!f.backend.empty()) out << " (" << f.backend << ")";
    if (!f.subjects.empty()) {
        out << " {";
        for (size_t i = 0; i < f.subjects.size(); ++i) out << (i ? ", " : "") << f.subjects[i].local;
        out << "}";
    }
    out << ": " << f.message;
    return out.str();
}

bool has_errors(const std::vector<Finding>& findings) {
    return std::any_of(findings.begin(), findings.end(),
                       [](const Finding& f) { return f.severity == Severity::Error; });
}

bool is_datatype(const Iri& iri) { return iri.full.rfind(ns::xsd, 0) == 0; }

namespace {

template <typename Table>
auto find_named(const Table& table, std::string_view name) -> decltype(&*table.begin()) {
    std::string key(name);
    if (auto* d = table.find(key)) return d;
    auto colon = name.find(':');
    for (const auto& d : table) {
        if (colon != std::string_view::npos) {
            if (d.name.prefix == name.substr(0, colon) && d.name.local == name.substr(colon + 1)) return &d;
        } else if (d.name.local == name) {
            return &d;
        }
    }
    return nullptr;
}

Finding make(Severity sev, std::string_view code, std::vector<Iri> subjects, std::string message) {
    return Finding{sev, std::string(code), std::move(subjects), "ir", std::move(message)};
}

void push_unique(std::vector<Iri>& v, const Iri& x) {
    if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

}  // namespace

const ClassDecl* OntologyModel::find_class_named(std::string_view name) const {
    return find_named(classes, name);
}

const PropertyDecl* OntologyModel::find_property_named(std::string_view name) const {
    return find_named(properties, name);
}

std::vector<Iri> OntologyModel::individuals() const {
    std::vector<Iri> out;
    std::set<std::string> seen;
    auto add = [&](const Iri& i) {
        if (seen.insert(i.full).second) out.push_back(i);
    };
    for (const auto& f : abox) {
        if (auto* t = std::get_if<TypeAssertion>(&f)) {
            add(t->individual);
        } else {
            const auto& p = std::get<PropAssertion>(f);
            add(p.subject);
            if (auto* o = std::get_if<Iri>(&p.object)) add(*o);
        }
    }
    return out;
}

std::vector<Iri> OntologyModel::declared_types(const Iri& individual) const {
    std::vector<Iri> out;
    for (const auto& f : abox)
        if (auto* t = std::get_if<TypeAssertion>(&f); t && t->individual == individual) push_unique(out, t->cls);
    return out;
}

std::vector<Iri> OntologyModel::subclasses(const Iri& cls) const {
    std::vector<Iri> out;
    for (const auto& c : classes)
        if (std::find(c.supers.begin(), c.supers.end(), cls) != c.supers.end()) out.push_back(c.name);
    return out;
}

std::vector<Iri> OntologyModel::primary_subclasses(const Iri& cls) const {
    std::vector<const ClassDecl*> subs;
    for (const auto& c : classes)
        if (!c.supers.empty() && c.supers.front() == cls) subs.push_back(&c);
    std::stable_sort(subs.begin(), subs.end(),
                     [](const ClassDecl* a, const ClassDecl* b) { return a->subclass_rank < b->subclass_rank; });
    std::vector<Iri> out;
    for (const auto* c : subs) out.push_back(c->name);
    return out;
}

// ---------------------------------------------------------------------------
// build_model

namespace {

struct BlankInfo {
    bool restriction = false;
    std::optional<Iri> on_property;
    std::optional<Iri> some_values_from;
    std::optional<Node> intersection_of;
    std::optional<Node> first;
    std::optional<Node> rest;
};

bool same(const Iri& iri, const char* ns_iri, std::string_view local) {
    return iri.full.size() == std::char_traits<char>::length(ns_iri) + local.size() &&
           iri.full.compare(0, std::char_traits<char>::length(ns_iri), ns_iri) == 0 &&
           iri.full.compare(std::char_traits<char>::length(ns_iri), local.size(), local) == 0;
}

bool in_vocab_namespace(const Iri& iri) {
    return iri.full.rfind(ns::rdf, 0) == 0 || iri.full.rfind(ns::rdfs, 0) == 0 ||
           iri.full.rfind(ns::owl, 0) == 0;
}

class ModelBuilder {
public:
    OntologyModel build(const TripleSet& ts) {
        for (const auto& t : ts.triples) collect_blank(t);
        for (const auto& t : ts.triples) classify(t);
        for (const auto& [id, info] : blanks_) {
            if (info.restriction && !info.on_property)
                throw ModelError("restriction " + id + " lacks owl:onProperty");
            if (info.restriction && !folded_.count(id))
                m_.build_warnings.push_back(
                    make(Severity::Warning, code::unknown_predicate, {},
                         "restriction " + id + " is not attached to any class"));
        }
        for (const auto& c : m_.classes)
            if (m_.properties.contains(c.name))
                throw DuplicateDeclaration("'" + c.name.local + "' is declared both as a class and a property");
        return std::move(m_);
    }

private:
    OntologyModel m_;
    size_t next_rank_ = 0;
    std::map<std::string, BlankInfo> blanks_;
    std::set<std::string> folded_;

    void collect_blank(const Triple& t) {
        auto* b = std::get_if<BlankId>(&t.subject);
        if (!b) return;
        auto& info = blanks_[b->id];
        const Iri& p = t.predicate;
        if (same(p, ns::rdf, "type") && is_iri(t.object) && same(std::get<Iri>(t.object), ns::owl, "Restriction")) {
            info.restriction = true;
        } else if (same(p, ns::owl, "onProperty") && is_iri(t.object)) {
            info.on_property = std::get<Iri>(t.object);
        } else if (same(p, ns::owl, "someValuesFrom") && is_iri(t.object)) {
            info.some_values_from = std::get<Iri>(t.object);
        } else if (same(p, ns::owl, "intersectionOf")) {
            info.intersection_of = t.object;
        } else if (same(p, ns::rdf, "first")) {
            info.first = t.object;
        } else if (same(p, ns::rdf, "rest")) {
            info.rest = t.object;
        }
    }

    std::optional<Restriction> restriction_of(const BlankId& b) {
        auto it = blanks_.find(b.id);
        if (it == blanks_.end()) return std::nullopt;
        const auto& info = it->second;
        if (!info.restriction && !info.on_property && !info.some_values_from) return std::nullopt;
        if (!info.on_property) throw ModelError("restriction " + b.id + " lacks owl:onProperty");
        folded_.insert(b.id);
        if (!info.some_values_from) {
            m_.build_warnings.push_back(make(Severity::Warning, code::unknown_predicate, {},
                                             "restriction " + b.id + " on '" + info.on_property->local +
                                                 "' has no owl:someValuesFrom and is ignored"));
            return std::nullopt;
        }
        return Restriction{*info.on_property, *info.some_values_from};
    }

    std::vector<Node> list_items(Node head) {
        std::vector<Node> items;
        std::set<std::string> seen;
        while (auto* b = std::get_if<BlankId>(&head)) {
            if (!seen.insert(b->id).second) throw ModelError("cyclic rdf list at " + b->id);
            auto it = blanks_.find(b->id);
            if (it == blanks_.end() || !it->second.first) throw ModelError("malformed rdf list at " + b->id);
            items.push_back(*it->second.first);
            head = it->second.rest.value_or(Node(vocab::rdf("nil")));
        }
        return items;
    }

    void add_super_node(ClassDecl& c, const Node& target) {
        if (auto* iri = std::get_if<Iri>(&target)) {
            if (c.supers.empty()) c.subclass_rank = next_rank_++;
            push_unique(c.supers, *iri);
        } else if (auto* b = std::get_if<BlankId>(&target)) {
            if (auto r = restriction_of(*b)) {
                if (std::find(c.restrictions.begin(), c.restrictions.end(), *r) == c.restrictions.end())
                    c.restrictions.push_back(*r);
            }
        } else {
            throw ModelError("a literal cannot be a superclass of '" + c.name.local + "'");
        }
    }

    void set_optional(std::optional<Iri>& slot, const Iri& value, const Iri& prop, const char* what) {
        if (slot && *slot != value)
            m_.build_warnings.push_back(make(Severity::Warning, code::duplicate_declaration, {},
                                             std::string("property '") + prop.local + "' redeclares its " +
                                                 what + "; '" + value.local + "' replaces '" +
                                                 slot->local + "'"));
        slot = value;
    }

    void classify(const Triple& t) {
        const Iri& p = t.predicate;
        auto* subject = std::get_if<Iri>(&t.subject);

        if (same(p, ns::rdf, "type")) {
            auto* type = std::get_if<Iri>(&t.object);
            if (!type) throw ModelError("rdf:type object must be an IRI");
            if (!subject) return;  // anonymous class typing, handled by folding
            if (same(*type, ns::owl, "Class") || same(*type, ns::rdfs, "Class")) {
                m_.classes.get_or_add(*subject);
            } else if (same(*type, ns::rdf, "Property") || same(*type, ns::owl, "ObjectProperty") ||
                       same(*type, ns::owl, "DatatypeProperty")) {
                m_.properties.get_or_add(*subject);
            } else if (same(*type, ns::owl, "FunctionalProperty")) {
                m_.properties.get_or_add(*subject).functional = true;
            } else if (same(*type, ns::owl, "Restriction")) {
                throw ModelError("named restriction '" + subject->local + "' is not supported");
            } else if (in_vocab_namespace(*type)) {
                m_.build_warnings.push_back(make(Severity::Warning, code::unknown_predicate, {},
                                                 "unsupported type '" + type->prefix + ":" + type->local +
                                                     "' on '" + subject->local + "'"));
            } else {
                m_.abox.push_back(TypeAssertion{*subject, *type});
            }
            return;
        }

        if (!subject) {
            // Blank-node structure (restrictions, lists, intersections) was collected earlier.
            if (in_vocab_namespace(p)) return;
            m_.build_warnings.push_back(make(Severity::Warning, code::unknown_predicate, {},
                                             "assertion on a blank node via '" + p.local + "' is ignored"));
            return;
        }

        if (same(p, ns::rdfs, "subClassOf")) {
            auto& c = m_.classes.get_or_add(*subject);
            add_super_node(c, t.object);
        } else if (same(p, ns::owl, "equivalentClass")) {
            auto& c = m_.classes.get_or_add(*subject);
            auto* b = std::get_if<BlankId>(&t.object);
            auto info = b ? blanks_.find(b->id) : blanks_.end();
            if (info != blanks_.end() && info->second.intersection_of) {
                folded_.insert(b->id);
                for (const auto& member : list_items(*info->second.intersection_of)) {
                    auto& cc = m_.classes.get_or_add(*subject);
                    add_super_node(cc, member);
                }
                m_.classes.get_or_add(*subject).complete = true;
            } else if (b) {
                add_super_node(c, t.object);
                c.complete = true;
            } else {
                m_.build_warnings.push_back(make(Severity::Warning, code::unknown_predicate, {},
                                                 "equivalence between named classes '" + c.name.local +
                                                     "' is not supported"));
            }
        } else if (same(p, ns::owl, "disjointWith") || same(p, ns::owl, "DisjointWith")) {
            auto* other = std::get_if<Iri>(&t.object);
            if (!other) throw ModelError("owl:disjointWith object must be a named class");
            push_unique(m_.classes.get_or_add(*subject).disjoint_with, *other);
        } else if (same(p, ns::rdfs, "domain") || same(p, ns::rdfs, "range")) {
            auto* target = std::get_if<Iri>(&t.object);
            if (!target) throw ModelError("property '" + subject->local + "' needs a named domain/range");
            auto& prop = m_.properties.get_or_add(*subject);
            if (same(p, ns::rdfs, "domain")) set_optional(prop.domain, *target, prop.name, "domain");
            else set_optional(prop.range, *target, prop.name, "range");
        } else if (same(p, ns::rdfs, "subPropertyOf")) {
            auto* target = std::get_if<Iri>(&t.object);
            if (!target) throw ModelError("rdfs:subPropertyOf object must be an IRI");
            push_unique(m_.properties.get_or_add(*subject).supers, *target);
        } else if (in_vocab_namespace(p)) {
            m_.build_warnings.push_back(make(Severity::Warning, code::unknown_predicate, {*subject},
                                             "unsupported predicate '" + p.prefix + ":" + p.local + "'"));
        } else {
            Value object = std::holds_alternative<Literal>(t.object) ? Value(std::get<Literal>(t.object))
                           : std::holds_alternative<Iri>(t.object)   ? Value(std::get<Iri>(t.object))
                                                                       : throw ModelError(
                                                                             "blank node object of '" + p.local +
                                                                             "' is not supported in facts");
            m_.abox.push_back(PropAssertion{*subject, p, std::move(object)});
        }
    }
};

}  // namespace

OntologyModel build_model(const TripleSet& ts) {
    OntologyModel m = ModelBuilder().build(ts);
    // Symmetric closure; the axiom may precede the declaration of its object.
    for (auto& c : m.classes) {
        for (const auto& other : std::vector<Iri>(c.disjoint_with))
            if (auto* oc = m.classes.find(other)) push_unique(oc->disjoint_with, c.name);
    }
    return m;
}

// ---------------------------------------------------------------------------
// validation and queries

std::vector<Finding> validate_tbox(const OntologyModel& m) {
    std::vector<Finding> out;

    // Strongly connected components over declared supers (Tarjan).
    std::unordered_map<std::string, int> index, low;
    std::unordered_map<std::string, bool> on_stack;
    std::vector<const ClassDecl*> stack;
    int counter = 0;
    std::function<void(const ClassDecl&)> visit = [&](const ClassDecl& c) {
        index[c.name.full] = low[c.name.full] = counter++;
        stack.push_back(&c);
        on_stack[c.name.full] = true;
        bool self_loop = false;
        for (const auto& s : c.supers) {
            const auto* sc = m.classes.find(s);
            if (!sc) continue;
            if (s == c.name) self_loop = true;
            if (!index.count(s.full)) {
                visit(*sc);
                low[c.name.full] = std::min(low[c.name.full], low[s.full]);
            } else if (on_stack[s.full]) {
                low[c.name.full] = std::min(low[c.name.full], index[s.full]);
            }
        }
        if (low[c.name.full] == index[c.name.full]) {
            std::vector<Iri> members;
            for (;;) {
                const ClassDecl* top = stack.back();
                stack.pop_back();
                on_stack[top->name.full] = false;
                members.push_back(top->name);
                if (top == &c) break;
            }
            if (members.size() > 1 || self_loop) {
                std::reverse(members.begin(), members.end());
                std::string names;
                for (const auto& n : members) names += (names.empty() ? "" : ", ") + n.local;
                out.push_back(make(Severity::Error, code::cycle, members, "subclass cycle through " + names));
            }
        }
    };
    for (const auto& c : m.classes)
        if (!index.count(c.name.full)) visit(c);

    auto dangling = [&](const Iri& owner, const Iri& target, const std::string& role) {
        out.push_back(make(Severity::Error, code::dangling_ref, {owner},
                           "'" + owner.local + "' " + role + " undeclared class '" + target.local + "'"));
    };
    for (const auto& c : m.classes) {
        for (const auto& s : c.supers)
            if (!m.classes.contains(s)) dangling(c.name, s, "has superclass");
        for (const auto& d : c.disjoint_with)
            if (!m.classes.contains(d)) dangling(c.name, d, "is disjoint with");
        for (const auto& r : c.restrictions) {
            if (!m.properties.contains(r.on_property))
                out.push_back(make(Severity::Error, code::restriction_property, {c.name},
                                   "restriction on '" + c.name.local + "' uses undeclared property '" +
                                       r.on_property.local + "'"));
            if (!m.classes.contains(r.some_values_from)) dangling(c.name, r.some_values_from, "restricts to");
        }
    }
    for (const auto& p : m.properties) {
        if (p.domain && !m.classes.contains(*p.domain)) dangling(p.name, *p.domain, "has domain");
        if (p.range && !is_datatype(*p.range) && !m.classes.contains(*p.range))
            dangling(p.name, *p.range, "has range");
        for (const auto& s : p.supers)
            if (!m.properties.contains(s))
                out.push_back(make(Severity::Error, code::dangling_ref, {p.name},
                                   "'" + p.name.local + "' has undeclared superproperty '" + s.local + "'"));
    }
    return out;
}

bool is_subtype(const OntologyModel& m, const Iri& a, const Iri& b) {
    if (!m.classes.contains(a)) throw UnknownClass(a.local);
    if (!m.classes.contains(b)) throw UnknownClass(b.local);
    std::vector<const ClassDecl*> todo{m.classes.find(a)};
    std::set<std::string> seen{a.full};
    while (!todo.empty()) {
        const ClassDecl* c = todo.back();
        todo.pop_back();
        if (c->name == b) return true;
        for (const auto& s : c->supers) {
            if (!seen.insert(s.full).second) continue;
            if (const auto* sc = m.classes.find(s)) todo.push_back(sc);
        }
    }
    return false;
}

std::set<Iri> effective_types(const OntologyModel& m, const Iri& individual) {
    std::set<Iri> out;
    std::vector<Iri> todo;
    for (const auto& t : m.declared_types(individual))
        if (m.classes.contains(t)) todo.push_back(t);
    while (!todo.empty()) {
        Iri c = todo.back();
        todo.pop_back();
        if (!out.insert(c).second) continue;
        for (const auto& s : m.classes.find(c)->supers)
            if (m.classes.contains(s)) todo.push_back(s);
    }
    return out;
}

bool conforms(const OntologyModel& m, const Iri& individual, const Iri& required) {
    return effective_types(m, individual).count(required) != 0;
}

bool literal_matches(const Literal& lit, const Iri& datatype) {
    const std::string& local = datatype.local;
    bool integer_type = local == "integer" || local == "int" || local == "long" || local == "short" ||
                        local == "nonNegativeInteger" || local == "positiveInteger";
    if (integer_type) return lit.kind == Literal::Kind::Integer;
    if (local == "string") return lit.kind == Literal::Kind::String;
    return true;
}

namespace {

bool subproperty_of(const OntologyModel& m, const Iri& p, const Iri& q) {
    std::vector<Iri> todo{p};
    std::set<std::string> seen;
    while (!todo.empty()) {
        Iri x = todo.back();
        todo.pop_back();
        if (x == q) return true;
        if (!seen.insert(x.full).second) continue;
        if (const auto* d = m.properties.find(x)) todo.insert(todo.end(), d->supers.begin(), d->supers.end());
    }
    return false;
}

}  // namespace

std::vector<Finding> check_abox(const OntologyModel& input, const CheckConfig& cfg) {
    OntologyModel inferred;
    const OntologyModel* mp = &input;
    if (cfg.mode == CheckConfig::Mode::Infer) {
        inferred = infer_domain_types(input);
        mp = &inferred;
    }
    const OntologyModel& m = *mp;
    std::vector<Finding> out;

    std::map<std::pair<std::string, std::string>, std::vector<Value>> functional_values;
    std::vector<std::pair<Iri, Iri>> functional_order;

    for (const auto& f : m.abox) {
        if (auto* t = std::get_if<TypeAssertion>(&f)) {
            if (!m.classes.contains(t->cls))
                out.push_back(make(Severity::Error, code::undeclared_class, {t->individual},
                                   "'" + t->individual.local + "' is typed with undeclared class '" +
                                       t->cls.local + "'"));
            continue;
        }
        const auto& pa = std::get<PropAssertion>(f);
        const auto* prop = m.properties.find(pa.property);
        if (!prop) {
            out.push_back(make(Severity::Error, code::undeclared_property, {pa.subject},
                               "'" + pa.subject.local + "' uses undeclared property '" + pa.property.local + "'"));
            continue;
        }
        if (prop->domain && !conforms(m, pa.subject, *prop->domain))
            out.push_back(make(Severity::Error, code::domain_violation, {pa.subject},
                               "'" + pa.subject.local + "' is not a " + prop->domain->local + " but uses '" +
                                   prop->name.local + "'"));
        if (prop->range) {
            const auto* obj = std::get_if<Iri>(&pa.object);
            bool ok;
            if (is_datatype(*prop->range)) {
                const auto* lit = std::get_if<Literal>(&pa.object);
                ok = lit && literal_matches(*lit, *prop->range);
            } else {
                ok = obj && conforms(m, *obj, *prop->range);
            }
            if (!ok) {
                Iri who = obj ? *obj : pa.subject;
                out.push_back(make(Severity::Error, code::range_violation, {who},
                                   "value of '" + prop->name.local + "' on '" + pa.subject.local +
                                       "' is not a " + prop->range->local));
            }
        }
        if (prop->functional) {
            auto key = std::make_pair(pa.subject.full, pa.property.full);
            auto& values = functional_values[key];
            if (values.empty()) functional_order.emplace_back(pa.subject, pa.property);
            if (std::find(values.begin(), values.end(), pa.object) == values.end()) values.push_back(pa.object);
        }
    }

    for (const auto& [subject, property] : functional_order) {
        const auto& values = functional_values[{subject.full, property.full}];
        if (values.size() >= 2)
            out.push_back(make(Severity::Error, code::functional_violation, {subject},
                               "functional property '" + property.local + "' has " +
                                   std::to_string(values.size()) + " values on '" + subject.local + "'"));
    }

    for (const auto& ind : m.individuals()) {
        auto eff = effective_types(m, ind);
        for (const auto& x : eff) {
            for (const auto& y : m.classes.find(x)->disjoint_with) {
                if (x < y && eff.count(y))
                    out.push_back(make(Severity::Error, code::disjoint_violation, {ind},
                                       "'" + ind.local + "' is both a " + x.local + " and a " + y.local +
                                           ", which are disjoint"));
            }
        }
        for (const auto& c : m.classes) {
            if (!eff.count(c.name)) continue;
            for (const auto& r : c.restrictions) {
                bool satisfied = false;
                for (const auto& f : m.abox) {
                    const auto* pa = std::get_if<PropAssertion>(&f);
                    if (!pa || pa->subject != ind || !subproperty_of(m, pa->property, r.on_property)) continue;
                    const auto* obj = std::get_if<Iri>(&pa->object);
                    if (obj && m.classes.contains(r.some_values_from) && conforms(m, *obj, r.some_values_from)) {
                        satisfied = true;
                        break;
                    }
                }
                if (!satisfied)
                    out.push_back(make(cfg.restriction_severity, code::missing_some_values, {ind},
                                       "'" + ind.local + "' is a " + c.name.local + " but has no '" +
                                           r.on_property.local + "' value that is a " + r.some_values_from.local));
            }
        }
    }
    return out;
}

OntologyModel infer_domain_types(const OntologyModel& m) {
    OntologyModel out = m;
    std::set<std::pair<std::string, std::string>> present;
    for (const auto& f : m.abox)
        if (auto* t = std::get_if<TypeAssertion>(&f)) present.emplace(t->individual.full, t->cls.full);
    auto add = [&](const Iri& ind, const Iri& cls) {
        if (present.emplace(ind.full, cls.full).second) out.abox.push_back(TypeAssertion{ind, cls});
    };
    for (const auto& f : m.abox) {
        const auto* pa = std::get_if<PropAssertion>(&f);
        if (!pa) continue;
        const auto* prop = m.properties.find(pa->property);
        if (!prop) continue;
        if (prop->domain) add(pa->subject, *prop->domain);
        if (prop->range && !is_datatype(*prop->range))
            if (auto* obj = std::get_if<Iri>(&pa->object)) add(*obj, *prop->range);
    }
    return out;
}

Iri most_specific_class(const OntologyModel& m, const Iri& individual) {
    std::vector<Iri> declared;
    for (const auto& t : m.declared_types(individual))
        if (m.classes.contains(t)) declared.push_back(t);
    if (declared.empty()) throw NoClass("'" + individual.local + "' has no declared class");
    for (const auto& c : declared) {
        bool below_all = std::all_of(declared.begin(), declared.end(),
                                     [&](const Iri& d) { return is_subtype(m, c, d); });
        if (below_all) return c;
    }
    std::string names;
    for (const auto& d : declared) names += (names.empty() ? "" : ", ") + d.local;
    throw AmbiguousClass("'" + individual.local + "' has unrelated declared classes: " + names);
}

std::vector<Iri> primary_chain(const OntologyModel& m, const Iri& cls) {
    std::vector<Iri> chain;
    std::set<std::string> seen;
    const ClassDecl* c = m.classes.find(cls);
    while (c && seen.insert(c->name.full).second) {
        chain.push_back(c->name);
        c = c->supers.empty() ? nullptr : m.classes.find(c->supers.front());
    }
    std::reverse(chain.begin(), chain.end());
    return chain;
}

}  // namespace ontorep
