#include "ontorep/typesys.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ontorep::types {

std::string_view to_string(ErrorKind k) {
    switch (k) {
        case ErrorKind::UndeclaredType: return "undeclared-type";
        case ErrorKind::SignatureMismatch: return "signature-mismatch";
        case ErrorKind::FunctionalViolation: return "functional-violation";
        case ErrorKind::DisjointViolation: return "disjoint-violation";
    }
    return "unknown";
}

std::string TypeError::render() const {
    return "ERROR " + std::string(to_string(kind)) + " at " + locus + ": " + message;
}

namespace {

std::string value_text(const Value& v) {
    if (auto* iri = std::get_if<Iri>(&v)) return iri->local;
    const auto& lit = std::get<Literal>(v);
    if (lit.kind == Literal::Kind::Integer) return lit.lexical;
    return "\"" + lit.lexical + "\"";
}

std::string application_text(const Application& a) {
    return a.function.local + "(" + a.arg.local + ", " + value_text(a.result) + ")";
}

std::string type_name(const std::optional<Iri>& t) { return t ? t->local : std::string(root_type); }

}  // namespace

std::string TypeProgram::render() const {
    std::ostringstream out;
    out << "// type system view\n";
    if (!type_decls.empty()) {
        for (size_t i = 0; i < type_decls.size(); ++i) out << (i ? ", " : "") << type_decls[i].local;
        out << " : type;\n";
    }
    for (const auto& [sub, super] : subtype_decls) out << sub.local << " <= " << super.local << ";\n";
    for (const auto& s : signatures)
        out << s.function.local << " : " << s.domain << " -> " << s.codomain << ";\n";
    for (const auto& d : constant_decls) {
        for (size_t i = 0; i < d.constants.size(); ++i) out << (i ? ", " : "") << d.constants[i].local;
        out << " : " << d.type.local << ";\n";
    }
    for (const auto& a : applications) out << application_text(a) << ";\n";
    return out.str();
}

TypeProgram emit_types(const OntologyModel& m) {
    TypeProgram prog;
    for (const auto& c : m.classes) {
        prog.type_decls.push_back(c.name);
        for (const auto& s : c.supers) prog.subtype_decls.emplace_back(c.name, s);
    }
    for (const auto& p : m.properties) prog.signatures.push_back({p.name, type_name(p.domain), type_name(p.range)});

    std::map<std::string, size_t> group_of;
    for (const auto& f : m.abox) {
        const auto* t = std::get_if<TypeAssertion>(&f);
        if (!t) continue;
        auto [it, fresh] = group_of.try_emplace(t->cls.full, prog.constant_decls.size());
        if (fresh) prog.constant_decls.push_back({{}, t->cls});
        auto& members = prog.constant_decls[it->second].constants;
        if (std::find(members.begin(), members.end(), t->individual) == members.end())
            members.push_back(t->individual);
    }
    for (const auto& f : m.abox)
        if (const auto* pa = std::get_if<PropAssertion>(&f))
            prog.applications.push_back({pa->property, pa->subject, pa->object});
    return prog;
}

std::vector<TypeError> typecheck(const TypeProgram& prog, const OntologyModel& m) {
    std::vector<TypeError> out;
    std::map<std::string, std::vector<Iri>> declared;
    for (const auto& d : prog.constant_decls)
        for (const auto& c : d.constants) declared[c.full].push_back(d.type);

    for (const auto& d : prog.constant_decls) {
        if (d.type.local == root_type || m.classes.contains(d.type)) continue;
        std::string locus;
        for (size_t i = 0; i < d.constants.size(); ++i) locus += (i ? ", " : "") + d.constants[i].local;
        locus += " : " + d.type.local;
        TypeError e{ErrorKind::UndeclaredType, locus, "type '" + d.type.local + "' is not declared",
                    d.constants, {d.type}, {}, false};
        out.push_back(std::move(e));
    }

    auto types_of = [&](const Iri& c) -> const std::vector<Iri>& {
        static const std::vector<Iri> none;
        auto it = declared.find(c.full);
        return it == declared.end() ? none : it->second;
    };
    auto has_type = [&](const Iri& c, const Iri& required) {
        const auto& ts = types_of(c);
        return std::any_of(ts.begin(), ts.end(), [&](const Iri& t) {
            return m.classes.contains(t) && is_subtype(m, t, required);
        });
    };

    std::map<std::pair<std::string, std::string>, std::vector<Value>> functional_values;
    std::vector<std::pair<Iri, Iri>> functional_order;

    for (const auto& a : prog.applications) {
        const std::string locus = application_text(a);
        const auto* p = m.properties.find(a.function);
        if (!p) {
            out.push_back({ErrorKind::SignatureMismatch, locus, "function '" + a.function.local + "' is not declared",
                           {a.arg}, types_of(a.arg), a.function, true});
            continue;
        }
        if (p->domain && !has_type(a.arg, *p->domain)) {
            out.push_back({ErrorKind::SignatureMismatch, locus,
                           "argument '" + a.arg.local + "' is not of type " + p->domain->local,
                           {a.arg}, types_of(a.arg), a.function, true});
        }
        if (p->range) {
            const auto* obj = std::get_if<Iri>(&a.result);
            bool ok;
            if (is_datatype(*p->range)) {
                const auto* lit = std::get_if<Literal>(&a.result);
                ok = lit && literal_matches(*lit, *p->range);
            } else {
                ok = obj && has_type(*obj, *p->range);
            }
            if (!ok) {
                Iri who = obj ? *obj : a.arg;
                out.push_back({ErrorKind::SignatureMismatch, locus,
                               "result '" + value_text(a.result) + "' is not of type " + p->range->local,
                               {who}, obj ? types_of(*obj) : std::vector<Iri>{}, a.function, false});
            }
        }
        if (p->functional) {
            auto key = std::make_pair(a.function.full, a.arg.full);
            auto& values = functional_values[key];
            if (values.empty()) functional_order.emplace_back(a.function, a.arg);
            if (std::find(values.begin(), values.end(), a.result) == values.end()) values.push_back(a.result);
        }
    }
    for (const auto& [fn, arg] : functional_order) {
        const auto& values = functional_values[{fn.full, arg.full}];
        if (values.size() < 2) continue;
        out.push_back({ErrorKind::FunctionalViolation, fn.local + "(" + arg.local + ", _)",
                       "'" + fn.local + "' yields " + std::to_string(values.size()) + " results for '" +
                           arg.local + "'",
                       {arg}, types_of(arg), fn, true});
    }
    return out;
}

}  // namespace ontorep::types
