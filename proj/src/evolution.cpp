#include "ontorep/evolution.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "json.hpp"
#include "ontorep/oo_model.hpp"
#include "ontorep/sql_backend.hpp"
#include "ontorep/typesys.hpp"

namespace ontorep {

OpSyntaxError::OpSyntaxError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

std::string to_string(const EvolutionOp& op) {
    if (const auto* cd = std::get_if<ChangeDomain>(&op)) return "change-domain " + cd->property + " " + cd->new_domain;
    return "delete-class " + std::get<DeleteClass>(op).cls;
}

std::string local_name(std::string_view name) {
    auto cut = name.find_last_of("#/:");
    return std::string(cut == std::string_view::npos ? name : name.substr(cut + 1));
}

std::vector<EvolutionOp> parse_ops(std::string_view text) {
    std::vector<EvolutionOp> ops;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            // '#' inside an absolute IRI is not a comment.
            bool in_word = hash > 0 && !std::isspace(static_cast<unsigned char>(line[hash - 1]));
            if (!in_word) line.erase(hash);
        }
        std::istringstream words(line);
        std::vector<std::string> w;
        for (std::string s; words >> s;) {
            if (s.size() > 2 && s.front() == '<' && s.back() == '>') s = s.substr(1, s.size() - 2);
            w.push_back(s);
        }
        if (w.empty()) continue;
        if (w[0] == "change-domain") {
            if (w.size() != 3) throw OpSyntaxError(lineno, "expected 'change-domain <property> <class>'");
            ops.push_back(ChangeDomain{w[1], w[2]});
        } else if (w[0] == "delete-class") {
            if (w.size() != 2) throw OpSyntaxError(lineno, "expected 'delete-class <class>'");
            ops.push_back(DeleteClass{w[1]});
        } else {
            throw OpSyntaxError(lineno, "unknown operation '" + w[0] + "'");
        }
    }
    return ops;
}

namespace {

Finding warning(std::string_view code, std::vector<Iri> subjects, std::string message) {
    return Finding{Severity::Warning, std::string(code), std::move(subjects), "evolution", std::move(message)};
}

Applied apply(const OntologyModel& m, const ChangeDomain& op) {
    const auto* p = m.find_property_named(op.property);
    if (!p) throw UnknownEntity("unknown property '" + op.property + "'");
    const auto* c = m.find_class_named(op.new_domain);
    if (!c) throw UnknownEntity("unknown class '" + op.new_domain + "'");
    Applied out{m, {}};
    out.model.properties.find(p->name)->domain = c->name;
    return out;
}

Applied apply(const OntologyModel& m, const DeleteClass& op) {
    const auto* found = m.find_class_named(op.cls);
    if (!found) throw UnknownEntity("unknown class '" + op.cls + "'");
    const ClassDecl gone = *found;
    Applied out{m, {}};
    auto& model = out.model;

    for (auto& c : model.classes) {
        if (c.name == gone.name) continue;
        auto at = std::find(c.supers.begin(), c.supers.end(), gone.name);
        if (at != c.supers.end()) {
            std::vector<Iri> supers(c.supers.begin(), at);
            for (const auto& s : gone.supers)
                if (std::find(supers.begin(), supers.end(), s) == supers.end()) supers.push_back(s);
            for (auto it = at + 1; it != c.supers.end(); ++it)
                if (std::find(supers.begin(), supers.end(), *it) == supers.end()) supers.push_back(*it);
            c.supers = std::move(supers);
        }
        auto& dis = c.disjoint_with;
        if (std::find(dis.begin(), dis.end(), gone.name) != dis.end()) {
            dis.erase(std::remove(dis.begin(), dis.end(), gone.name), dis.end());
            out.warnings.push_back(warning(code::evolution_drop, {c.name, gone.name},
                                           "disjointness of " + c.name.local + " with " + gone.name.local +
                                               " dropped"));
        }
        auto& rs = c.restrictions;
        for (const auto& r : rs)
            if (r.some_values_from == gone.name)
                out.warnings.push_back(warning(code::evolution_drop, {c.name, gone.name},
                                               "restriction " + r.on_property.local + " some " + gone.name.local +
                                                   " on " + c.name.local + " dropped"));
        rs.erase(std::remove_if(rs.begin(), rs.end(),
                                [&](const Restriction& r) { return r.some_values_from == gone.name; }),
                 rs.end());
    }

    const std::optional<Iri> replacement =
        gone.supers.empty() ? std::nullopt : std::optional<Iri>(gone.supers.front());
    auto retarget = [&](std::optional<Iri>& end, const Iri& prop, const char* what) {
        if (!end || *end != gone.name) return;
        end = replacement;
        out.warnings.push_back(warning(code::evolution_retarget, {prop, gone.name},
                                       std::string(what) + " of " + prop.local + " moved from " + gone.name.local +
                                           " to " + (replacement ? replacement->local : std::string("nothing"))));
    };
    for (auto& p : model.properties) {
        retarget(p.domain, p.name, "domain");
        retarget(p.range, p.name, "range");
    }
    model.classes.erase(gone.name);
    return out;
}

/// Parent each deleted class had when it went away.
using Ghosts = std::map<Iri, std::optional<Iri>>;

/// Subsumption where deleted classes still hang under their last parent.
bool reaches(const OntologyModel& m, const Ghosts& ghosts, Iri cls, const Iri& target) {
    for (auto g = ghosts.find(cls); g != ghosts.end(); g = ghosts.find(cls)) {
        if (cls == target) return true;
        if (!g->second) return false;
        cls = *g->second;
    }
    return m.classes.contains(cls) && is_subtype(m, cls, target);
}

/// Keeps the type errors this op is responsible for. An individual typed
/// with a class an earlier op deleted is only blamed again when that class,
/// kept under its last parent, falls outside the new domain.
std::set<std::string> attributed(const std::vector<types::TypeError>& errors, const EvolutionOp& op,
                                 const OntologyModel& before, const OntologyModel& after, const Ghosts& ghosts,
                                 std::vector<Finding>& findings) {
    auto stale_but_fits = [&](const types::TypeError& e) {
        const auto* cd = std::get_if<ChangeDomain>(&op);
        if (!cd || e.culprit_types.empty()) return false;
        const Iri domain = after.find_class_named(cd->new_domain)->name;
        return std::all_of(e.culprit_types.begin(), e.culprit_types.end(), [&](const Iri& t) {
            return ghosts.count(t) && reaches(after, ghosts, t, domain);
        });
    };
    std::set<std::string> out;
    auto keep = [&](const types::TypeError& e) {
        if (const auto* cd = std::get_if<ChangeDomain>(&op)) {
            const auto* p = before.find_property_named(cd->property);
            return e.kind == types::ErrorKind::SignatureMismatch && e.domain_side && p && e.function == p->name;
        }
        const auto* c = before.find_class_named(std::get<DeleteClass>(op).cls);
        if (!c) return false;
        if (e.kind != types::ErrorKind::UndeclaredType && e.kind != types::ErrorKind::SignatureMismatch) return false;
        return std::find(e.culprit_types.begin(), e.culprit_types.end(), c->name) != e.culprit_types.end();
    };
    for (const auto& e : errors) {
        if (!keep(e) || stale_but_fits(e)) continue;
        for (const auto& s : e.subjects) out.insert(s.local);
        std::string_view c = e.kind == types::ErrorKind::UndeclaredType ? code::undeclared_class
                             : e.domain_side                            ? code::domain_violation
                                                                        : code::range_violation;
        findings.push_back(Finding{Severity::Error, std::string(c), e.subjects, "types", e.render()});
    }
    return out;
}

}  // namespace

Applied apply_op(const OntologyModel& m, const EvolutionOp& op) {
    return std::visit([&](const auto& o) { return apply(m, o); }, op);
}

bool EvolutionReport::agreement() const {
    return std::all_of(ops.begin(), ops.end(), [](const OpReport& r) { return r.agreement; });
}

bool EvolutionReport::any_inconsistent() const {
    return std::any_of(ops.begin(), ops.end(), [](const OpReport& r) { return !r.merged.empty(); });
}

EvolutionReport detect(const OntologyModel& m_old, const std::vector<EvolutionOp>& ops) {
    auto problems = validate_tbox(m_old);
    if (has_errors(problems)) throw ModelError("the ontology is not well formed: " + render(problems.front()));

    EvolutionReport report;
    report.final_model = m_old;

    const types::TypeProgram program = types::emit_types(m_old);
    oo::ClassModel cm = oo::emit_class_model(m_old);
    const std::vector<oo::OoInstance> instances = oo::instantiate(cm, m_old);
    const sql::DdlResult ddl = sql::emit_ddl(m_old);
    const sql::Database db = sql::populate(m_old, ddl.schema);
    Ghosts ghosts;

    for (const auto& op : ops) {
        Applied next = apply_op(report.final_model, op);
        OpReport r;
        r.op = op;
        r.findings = next.warnings;

        r.backends["types"] =
            attributed(types::typecheck(program, next.model), op, report.final_model, next.model, ghosts, r.findings);
        if (const auto* dc = std::get_if<DeleteClass>(&op)) {
            const auto& gone = *report.final_model.find_class_named(dc->cls);
            ghosts[gone.name] = gone.supers.empty() ? std::nullopt : std::optional<Iri>(gone.supers.front());
        }
        cm = oo::evolve_class_model(cm, op);
        r.backends["oo"] = oo::find_inconsistent_objects(instances, cm, op);
        r.backends["sql"] = sql::eval_inconsistency(db, op, m_old);
        r.sql_query = sql::emit_inconsistency_query(op, m_old);
        r.sql_constraint = sql::emit_evolution_constraints(op, m_old);

        for (const auto& [name, set] : r.backends) r.merged.insert(set.begin(), set.end());
        r.agreement = r.backends["types"] == r.backends["oo"] && r.backends["oo"] == r.backends["sql"];
        report.ops.push_back(std::move(r));
        report.final_model = std::move(next.model);
    }
    return report;
}

std::string to_json(const EvolutionReport& r) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["schema"] = "1";
    ordered_json ops = ordered_json::array();
    for (const auto& op : r.ops) {
        ordered_json e;
        e["op"] = to_string(op.op);
        ordered_json backends = ordered_json::object();
        for (const char* b : backend_names) backends[b] = op.backends.count(b) ? op.backends.at(b) : std::set<std::string>{};
        e["backends"] = std::move(backends);
        e["merged"] = op.merged;
        e["agreement"] = op.agreement;
        e["artifacts"] = {{"sql_query", op.sql_query}, {"sql_constraint", op.sql_constraint}};
        ordered_json findings = ordered_json::array();
        for (const auto& f : op.findings) {
            std::vector<std::string> subjects;
            for (const auto& s : f.subjects) subjects.push_back(s.local);
            findings.push_back({{"severity", to_string(f.severity)},
                                {"code", f.code},
                                {"backend", f.backend},
                                {"subjects", subjects},
                                {"message", f.message}});
        }
        e["findings"] = std::move(findings);
        ops.push_back(std::move(e));
    }
    j["ops"] = std::move(ops);
    return j.dump(2) + "\n";
}

}  // namespace ontorep
