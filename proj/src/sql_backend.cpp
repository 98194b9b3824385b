#include "ontorep/sql_backend.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

namespace ontorep::sql {

std::string_view to_string(ColumnKind k) {
    switch (k) {
        case ColumnKind::Id: return "id";
        case ColumnKind::SubclassLink: return "subclass-link";
        case ColumnKind::Discriminator: return "discriminator";
        case ColumnKind::Reference: return "reference";
        case ColumnKind::Data: return "data";
    }
    return "unknown";
}

const Column* TableSchema::column(const std::string& n) const {
    for (const auto& c : columns)
        if (c.name == n) return &c;
    return nullptr;
}

const Column* TableSchema::first_of(ColumnKind k) const {
    for (const auto& c : columns)
        if (c.kind == k) return &c;
    return nullptr;
}

const TableSchema* Schema::find(const std::string& name) const {
    for (const auto& t : tables)
        if (t.name == name) return &t;
    return nullptr;
}

const TableSchema* Schema::entity_table(const std::string& cls) const {
    for (const auto& t : tables)
        if (t.kind == TableSchema::Kind::Entity && t.cls == cls) return &t;
    return nullptr;
}

const TableSchema* Schema::association_table(const std::string& property) const {
    for (const auto& t : tables)
        if (t.kind == TableSchema::Kind::Association && t.property == property) return &t;
    return nullptr;
}

const TableSchema* Schema::column_owner(const std::string& property) const {
    for (const auto& t : tables) {
        if (t.kind != TableSchema::Kind::Entity) continue;
        for (const auto& c : t.columns)
            if ((c.kind == ColumnKind::Reference || c.kind == ColumnKind::Data) && c.property == property) return &t;
    }
    return nullptr;
}

// ---------------------------------------------------------------------------
// query IR

Expr negate(const Expr& e) {
    return std::visit(
        [](const auto& n) -> Expr {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, IsNull>) {
                return Expr{IsNull{n.column, !n.negated}};
            } else if constexpr (std::is_same_v<T, Compare>) {
                return Expr{Compare{n.column, !n.equal, n.value}};
            } else if constexpr (std::is_same_v<T, InSelect>) {
                return Expr{InSelect{n.column, !n.negated, n.sub}};
            } else if constexpr (std::is_same_v<T, Const>) {
                return Expr{Const{!n.value}};
            } else {
                Junction j{!n.conjunction, {}};
                for (const auto& t : n.terms) j.terms.push_back(negate(t));
                return Expr{std::move(j)};
            }
        },
        e.node);
}

namespace {

std::string render_term(const Expr& e, bool parent_conjunction, bool top) {
    return std::visit(
        [&](const auto& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, IsNull>) {
                return n.column + (n.negated ? " IS NOT NULL" : " IS NULL");
            } else if constexpr (std::is_same_v<T, Compare>) {
                return n.column + (n.equal ? " = " : " != ") + n.value;
            } else if constexpr (std::is_same_v<T, InSelect>) {
                return n.column + (n.negated ? " NOT IN (" : " IN (") + render(*n.sub) + ")";
            } else if constexpr (std::is_same_v<T, Const>) {
                return n.value ? "1 = 1" : "1 = 0";
            } else {
                std::string out;
                const char* sep = n.conjunction ? " and " : " or ";
                for (size_t i = 0; i < n.terms.size(); ++i)
                    out += (i ? sep : "") + render_term(n.terms[i], n.conjunction, false);
                if (n.terms.empty()) out = n.conjunction ? "1 = 1" : "1 = 0";
                bool wrap = !top && n.terms.size() > 1 && parent_conjunction != n.conjunction;
                return wrap ? "(" + out + ")" : out;
            }
        },
        e.node);
}

bool is_const_true(const Expr& e) {
    const auto* c = std::get_if<Const>(&e.node);
    return c && c->value;
}

}  // namespace

std::string render(const Expr& e) { return render_term(e, true, true); }

std::string render(const Select& s) {
    std::string out = "SELECT " + s.projection + " " + s.from_keyword + " " + s.table;
    if (!is_const_true(s.where)) out += " where " + render(s.where);
    return out;
}

bool eval(const Expr& e, const Row& row, const Database& db) {
    auto cell = [&](const std::string& col) -> Cell {
        auto it = row.find(col);
        return it == row.end() ? Cell{} : it->second;
    };
    return std::visit(
        [&](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, IsNull>) {
                return cell(n.column).has_value() == n.negated;
            } else if constexpr (std::is_same_v<T, Compare>) {
                Cell c = cell(n.column);
                bool eq = c && *c == n.value;
                return n.equal ? eq : !eq;
            } else if constexpr (std::is_same_v<T, InSelect>) {
                Cell c = cell(n.column);
                bool found = false;
                if (c) {
                    for (const Row* r : eval(*n.sub, db)) {
                        auto it = r->find(n.sub->projection);
                        if (it != r->end() && it->second == c) {
                            found = true;
                            break;
                        }
                    }
                }
                return n.negated ? !found : found;
            } else if constexpr (std::is_same_v<T, Const>) {
                return n.value;
            } else {
                for (const auto& t : n.terms) {
                    bool v = eval(t, row, db);
                    if (n.conjunction && !v) return false;
                    if (!n.conjunction && v) return true;
                }
                return n.conjunction;
            }
        },
        e.node);
}

std::vector<const Row*> eval(const Select& s, const Database& db) {
    std::vector<const Row*> out;
    auto it = db.tables.find(s.table);
    if (it == db.tables.end()) return out;
    for (const auto& row : it->second)
        if (eval(s.where, row, db)) out.push_back(&row);
    return out;
}

// ---------------------------------------------------------------------------
// DDL

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string capitalized(std::string s) {
    if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    return s;
}

std::string data_type(const Iri& dt) {
    static const std::set<std::string> integers{"integer", "int", "long", "short", "nonNegativeInteger",
                                                "positiveInteger"};
    return integers.count(dt.local) ? "INTEGER" : "VARCHAR(255)";
}

std::string render_column(const Column& c, bool primary) {
    std::string out = c.name + " " + c.sql_type;
    if (primary) out += " PRIMARY KEY";
    if (!c.target_table.empty()) out += " REFERENCES " + c.target_table;
    return out;
}

std::string render_table(const TableSchema& t) {
    std::ostringstream out;
    out << "CREATE TABLE " << t.name << "\n(";
    bool single_pk = t.primary_key.size() == 1;
    for (size_t i = 0; i < t.columns.size(); ++i) {
        const auto& c = t.columns[i];
        out << (i ? ",\n " : "") << render_column(c, single_pk && c.name == t.primary_key.front());
    }
    if (t.primary_key.size() > 1) {
        out << ",\n PRIMARY KEY (";
        for (size_t i = 0; i < t.primary_key.size(); ++i) out << (i ? ", " : "") << t.primary_key[i];
        out << ")";
    }
    out << ");\n";
    return out.str();
}

}  // namespace

DdlResult emit_ddl(const OntologyModel& m) {
    DdlResult result;
    Schema& schema = result.schema;

    for (const auto& c : m.classes) {
        TableSchema t;
        t.name = c.name.local;
        t.kind = TableSchema::Kind::Entity;
        t.cls = c.name.local;
        Column id{"ID" + t.name, ColumnKind::Id, false, "INTEGER", "", {}, ""};
        t.columns.push_back(id);
        t.primary_key = {id.name};
        auto subs = m.primary_subclasses(c.name);
        if (!subs.empty()) {
            Column sc{"SC" + t.name, ColumnKind::SubclassLink, true, "INTEGER", "", {}, ""};
            Column dis{"DIS", ColumnKind::Discriminator, true, "VARCHAR(64)", "", {}, ""};
            for (const auto& s : subs) {
                dis.name += s.local;
                dis.components.push_back(s.local);
            }
            t.columns.push_back(sc);
            t.columns.push_back(dis);
        }
        schema.tables.push_back(std::move(t));
    }

    for (const auto& p : m.properties) {
        const bool datatype = p.range && is_datatype(*p.range);
        const TableSchema* domain_table = p.domain ? schema.entity_table(p.domain->local) : nullptr;
        if (p.domain && !domain_table) continue;  // dangling domain, reported by validate_tbox
        std::string range_table;
        if (p.range && !datatype && schema.entity_table(p.range->local)) range_table = p.range->local;

        if (p.functional && domain_table) {
            auto& owner = *std::find_if(schema.tables.begin(), schema.tables.end(),
                                        [&](const TableSchema& t) { return t.name == domain_table->name; });
            if (datatype) {
                owner.columns.push_back({p.name.local, ColumnKind::Data, true, data_type(*p.range), "", {}, p.name.local});
            } else {
                owner.columns.push_back({"REF" + p.name.local, ColumnKind::Reference, true, "INTEGER", range_table, {},
                                         p.name.local});
                if (!range_table.empty()) owner.foreign_keys.push_back({"REF" + p.name.local, range_table});
            }
            continue;
        }

        TableSchema t;
        t.name = capitalized(p.name.local);
        if (schema.find(t.name)) t.name += "Assoc";
        t.kind = TableSchema::Kind::Association;
        t.property = p.name.local;
        std::string subject_table = domain_table ? domain_table->name : "";
        Column subject{"ID" + (domain_table ? domain_table->name : std::string("Thing")), ColumnKind::Id, false,
                       "INTEGER", subject_table, {}, p.name.local};
        Column object;
        if (datatype) {
            object = {"value", ColumnKind::Data, false, data_type(*p.range), "", {}, p.name.local};
        } else {
            std::string name = "ID" + (range_table.empty() ? std::string("Thing") : range_table);
            if (name == subject.name) name += "Target";
            object = {name, ColumnKind::Reference, false, "INTEGER", range_table, {}, p.name.local};
        }
        if (!subject_table.empty()) t.foreign_keys.push_back({subject.name, subject_table});
        if (!object.target_table.empty()) t.foreign_keys.push_back({object.name, object.target_table});
        t.primary_key = {subject.name, object.name};
        t.columns = {subject, object};
        schema.tables.push_back(std::move(t));
    }

    std::set<std::pair<std::string, std::string>> disjoint_pairs;
    for (const auto& c : m.classes) {
        for (const auto& d : c.disjoint_with) {
            if (!m.classes.contains(d)) continue;
            if (!disjoint_pairs.emplace(std::min(c.name.full, d.full), std::max(c.name.full, d.full)).second) continue;
            schema.trigger_stubs.push_back("create trigger disjoint_" + c.name.local + "_" + d.local +
                                           " before insert on " + c.name.local + ": reject the row when its individual also has a row in " +
                                           d.local + " (owl:disjointWith)");
        }
        for (const auto& r : c.restrictions)
            schema.trigger_stubs.push_back("create trigger some_" + c.name.local + "_" + r.on_property.local +
                                           " before insert on " + c.name.local + ": require a " +
                                           r.on_property.local + " value that is a " + r.some_values_from.local);
        if (c.complete)
            schema.trigger_stubs.push_back("view " + c.name.local +
                                           ": defined class, maintained by instead of triggers on its base tables");
        for (size_t i = 1; i < c.supers.size(); ++i)
            schema.trigger_stubs.push_back("table " + c.name.local + " chains under " +
                                           (c.supers.empty() ? "" : c.supers.front().local) + " only; " +
                                           c.supers[i].local + " is not linked");
    }

    std::ostringstream out;
    out << "-- relational view\n";
    for (const auto& t : schema.tables) out << "\n" << render_table(t);
    if (!schema.trigger_stubs.empty()) out << "\n";
    for (const auto& s : schema.trigger_stubs) out << "-- " << s << "\n";
    result.ddl = out.str();
    return result;
}

// ---------------------------------------------------------------------------
// population

namespace {

std::string level_key(const std::string& root, size_t level) {
    return level == 0 ? root : root + "_" + std::to_string(level);
}

struct Placement {
    std::vector<Iri> chain;
    std::vector<std::pair<std::string, size_t>> rows;  // table name, row index
};

std::string literal_text(const Literal& lit) {
    return lit.lexical;
}

}  // namespace

Database populate(const OntologyModel& m, const Schema& schema) {
    Database db;
    for (const auto& t : schema.tables) db.tables[t.name];

    std::unordered_map<std::string, Placement> placed;
    for (const auto& ind : m.individuals()) {
        bool typed = false;
        for (const auto& t : m.declared_types(ind)) typed |= m.classes.contains(t);
        if (!typed) {
            if (!m.declared_types(ind).empty())
                throw PopulationError("'" + ind.local + "' has no declared class in the schema");
            continue;
        }
        Iri leaf = most_specific_class(m, ind);
        Placement p;
        p.chain = primary_chain(m, leaf);
        for (size_t i = 0; i < p.chain.size(); ++i) {
            const TableSchema* t = schema.entity_table(p.chain[i].local);
            if (!t) throw PopulationError("no table for class '" + p.chain[i].local + "' of '" + ind.local + "'");
            Row row;
            for (const auto& c : t->columns) row[c.name] = std::nullopt;
            row[t->primary_key.front()] = level_key(ind.local, i);
            if (i + 1 < p.chain.size()) {
                const Column* sc = t->first_of(ColumnKind::SubclassLink);
                const Column* dis = t->first_of(ColumnKind::Discriminator);
                if (!sc || !dis) throw PopulationError("table '" + t->name + "' cannot chain to a subtable");
                row[sc->name] = level_key(ind.local, i + 1);
                row[dis->name] = lower(p.chain[i + 1].local);
            }
            auto& rows = db.tables[t->name];
            p.rows.emplace_back(t->name, rows.size());
            rows.push_back(std::move(row));
        }
        placed.emplace(ind.full, std::move(p));
    }

    // Key of `ind` at the level of table `cls`, or its root id when it has none.
    auto key_at = [&](const Iri& ind, const std::string& cls) -> std::optional<std::string> {
        auto it = placed.find(ind.full);
        if (it == placed.end()) return std::nullopt;
        for (size_t i = 0; i < it->second.chain.size(); ++i)
            if (it->second.chain[i].local == cls) return level_key(ind.local, i);
        return std::nullopt;
    };
    auto value_for = [&](const Value& v, const std::string& target_table) -> std::string {
        if (const auto* lit = std::get_if<Literal>(&v)) return literal_text(*lit);
        const Iri& obj = std::get<Iri>(v);
        if (!target_table.empty())
            if (auto k = key_at(obj, target_table)) return *k;
        return obj.local;
    };

    for (const auto& f : m.abox) {
        const auto* pa = std::get_if<PropAssertion>(&f);
        if (!pa) continue;
        const std::string prop = pa->property.local;
        if (const TableSchema* owner = schema.column_owner(prop)) {
            auto it = placed.find(pa->subject.full);
            if (it == placed.end()) throw PopulationError("'" + pa->subject.local + "' has no rows for '" + prop + "'");
            const Column* col = nullptr;
            for (const auto& c : owner->columns)
                if (c.property == prop) col = &c;
            Row* row = nullptr;
            for (const auto& [table, idx] : it->second.rows)
                if (table == owner->name) row = &db.tables[table][idx];
            if (!row)
                throw PopulationError("'" + pa->subject.local + "' has no row in " + owner->name + " to hold '" +
                                      prop + "'");
            std::string v = value_for(pa->object, col->target_table);
            auto& cell = (*row)[col->name];
            if (cell && *cell != v)
                throw PopulationError("'" + pa->subject.local + "' has several values for functional '" + prop + "'");
            cell = v;
            continue;
        }
        const TableSchema* assoc = schema.association_table(prop);
        if (!assoc) throw PopulationError("no column or table stores property '" + prop + "'");
        const Column& s = assoc->columns[0];
        const Column& o = assoc->columns[1];
        std::string subject_key = pa->subject.local;
        if (!s.target_table.empty()) {
            auto k = key_at(pa->subject, s.target_table);
            if (!k)
                throw PopulationError("'" + pa->subject.local + "' has no row in " + s.target_table + " to hold '" +
                                      prop + "'");
            subject_key = *k;
        }
        Row row{{s.name, subject_key}, {o.name, value_for(pa->object, o.target_table)}};
        auto& rows = db.tables[assoc->name];
        if (std::find(rows.begin(), rows.end(), row) == rows.end()) rows.push_back(std::move(row));
    }
    return db;
}

std::string render_inserts(const Database& db, const Schema& schema) {
    std::ostringstream out;
    for (const auto& t : schema.tables) {
        auto it = db.tables.find(t.name);
        if (it == db.tables.end()) continue;
        for (const auto& row : it->second) {
            out << "INSERT INTO " << t.name << " (";
            for (size_t i = 0; i < t.columns.size(); ++i) out << (i ? ", " : "") << t.columns[i].name;
            out << ") VALUES (";
            for (size_t i = 0; i < t.columns.size(); ++i) {
                auto c = row.find(t.columns[i].name);
                out << (i ? ", " : "");
                if (c == row.end() || !c->second) {
                    out << "NULL";
                } else if (t.columns[i].sql_type == "INTEGER" && t.columns[i].kind == ColumnKind::Data) {
                    out << *c->second;
                } else {
                    std::string v = *c->second;
                    std::string escaped;
                    for (char ch : v) escaped += ch == '\'' ? std::string("''") : std::string(1, ch);
                    out << "'" << escaped << "'";
                }
            }
            out << ");\n";
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// evolution queries

namespace {

Expr conj(std::vector<Expr> terms) {
    std::vector<Expr> kept;
    for (auto& t : terms)
        if (!is_const_true(t)) kept.push_back(std::move(t));
    if (kept.empty()) return Expr{Const{true}};
    if (kept.size() == 1) return std::move(kept.front());
    return Expr{Junction{true, std::move(kept)}};
}

/// Rows of path.front()'s table whose SC/DIS chain passes through path.back().
Expr reaches(const std::vector<Iri>& path, size_t from, const Schema& schema) {
    if (from + 1 >= path.size()) return Expr{Const{true}};
    const TableSchema* t = schema.entity_table(path[from].local);
    const Column* dis = t->first_of(ColumnKind::Discriminator);
    const Column* sc = t->first_of(ColumnKind::SubclassLink);
    std::vector<Expr> terms{Expr{Compare{dis->name, true, lower(path[from + 1].local)}}};
    if (from + 2 < path.size()) {
        const TableSchema* next = schema.entity_table(path[from + 1].local);
        auto sub = std::make_shared<Select>();
        sub->table = next->name;
        sub->projection = next->primary_key.front();
        sub->where = reaches(path, from + 1, schema);
        terms.push_back(Expr{InSelect{sc->name, false, std::move(sub)}});
    }
    return conj(std::move(terms));
}

/// Ids of `from`'s table whose chain reaches `to`.
std::shared_ptr<Select> reaching_ids(const std::vector<Iri>& path, const Schema& schema) {
    const TableSchema* t = schema.entity_table(path.front().local);
    auto sub = std::make_shared<Select>();
    sub->table = t->name;
    sub->projection = t->primary_key.front();
    sub->where = reaches(path, 0, schema);
    return sub;
}

enum class Relation { Within, Below, Unrelated };

/// How the new domain relates to the class whose rows hold the values.
/// `path` is filled with the primary chain from `holder` down to `target`.
Relation relate(const OntologyModel& m, const Iri& holder, const Iri& target, std::vector<Iri>& path) {
    if (is_subtype(m, holder, target)) return Relation::Within;
    auto chain = primary_chain(m, target);
    auto it = std::find(chain.begin(), chain.end(), holder);
    if (it == chain.end()) return Relation::Unrelated;
    path.assign(it, chain.end());
    return Relation::Below;
}

const ClassDecl& require_class(const OntologyModel& m, const std::string& name) {
    const auto* c = m.find_class_named(name);
    if (!c) throw UnsupportedOp("unknown class '" + name + "'");
    return *c;
}

struct BuiltQuery {
    Select select;
    std::string table;
};

BuiltQuery build(const ChangeDomain& op, const OntologyModel& m, const Schema& schema) {
    const auto* prop = m.find_property_named(op.property);
    if (!prop) throw UnsupportedOp("unknown property '" + op.property + "'");
    const ClassDecl& target = require_class(m, op.new_domain);
    const std::string p = prop->name.local;

    Select s;
    s.from_keyword = "from";
    if (const TableSchema* owner = schema.column_owner(p)) {
        const Column* col = nullptr;
        for (const auto& c : owner->columns)
            if (c.property == p) col = &c;
        s.table = owner->name;
        std::vector<Iri> path;
        Relation rel = relate(m, require_class(m, owner->cls).name, target.name, path);
        Expr present{IsNull{col->name, true}};
        if (rel == Relation::Within) s.where = conj({present, Expr{Const{false}}});
        else if (rel == Relation::Unrelated) s.where = present;
        else s.where = conj({present, negate(reaches(path, 0, schema))});
        return {s, s.table};
    }
    const TableSchema* assoc = schema.association_table(p);
    if (!assoc) throw UnsupportedOp("property '" + p + "' has no relational storage");
    s.table = assoc->name;
    const Column& subject = assoc->columns[0];
    if (!subject.target_table.empty()) {
        std::vector<Iri> path;
        const TableSchema* dt = schema.find(subject.target_table);
        Relation rel = relate(m, require_class(m, dt->cls).name, target.name, path);
        if (rel == Relation::Within) s.where = Expr{Const{false}};
        else if (rel == Relation::Unrelated) s.where = Expr{Const{true}};
        else s.where = Expr{InSelect{subject.name, true, reaching_ids(path, schema)}};
    } else {
        // Subject ids are root keys: test the chain from the root of the new domain.
        auto path = primary_chain(m, target.name);
        s.where = Expr{InSelect{subject.name, true, reaching_ids(path, schema)}};
    }
    return {s, s.table};
}

BuiltQuery build(const DeleteClass& op, const OntologyModel& m, const Schema& schema) {
    const ClassDecl& c = require_class(m, op.cls);
    const TableSchema* t = schema.entity_table(c.name.local);
    if (!t) throw UnsupportedOp("class '" + c.name.local + "' has no table");
    Select s;
    s.table = t->name;
    s.from_keyword = "FROM";
    if (const Column* sc = t->first_of(ColumnKind::SubclassLink)) s.where = Expr{IsNull{sc->name, false}};
    return {s, s.table};
}

BuiltQuery build(const EvolutionOp& op, const OntologyModel& m, const Schema& schema) {
    return std::visit([&](const auto& o) { return build(o, m, schema); }, op);
}

std::string constraint_name(const EvolutionOp& op) {
    if (const auto* cd = std::get_if<ChangeDomain>(&op))
        return "chk_" + local_name(cd->property) + "_domain_" + local_name(cd->new_domain);
    return "chk_no_" + local_name(std::get<DeleteClass>(op).cls);
}

std::set<std::string> roots_of(const std::vector<const Row*>& rows, const TableSchema& t, const Database& db,
                               const Schema& schema) {
    std::set<std::string> out;
    const std::string& key_col = t.kind == TableSchema::Kind::Entity ? t.primary_key.front() : t.columns[0].name;
    for (const Row* r : rows) {
        auto it = r->find(key_col);
        if (it != r->end() && it->second) out.insert(root_of(db, schema, *it->second));
    }
    return out;
}

}  // namespace

Select inconsistency_query(const EvolutionOp& op, const OntologyModel& m) {
    auto schema = emit_ddl(m).schema;
    return build(op, m, schema).select;
}

std::string emit_inconsistency_query(const EvolutionOp& op, const OntologyModel& m) {
    return render(inconsistency_query(op, m));
}

std::string emit_evolution_constraints(const EvolutionOp& op, const OntologyModel& m) {
    Select s = inconsistency_query(op, m);
    return "ALTER TABLE " + s.table + " ADD CONSTRAINT " + constraint_name(op) + "\n CHECK(" +
           render(negate(s.where)) + ")";
}

std::set<std::string> eval_inconsistency(const Database& db, const EvolutionOp& op, const OntologyModel& m) {
    auto schema = emit_ddl(m).schema;
    auto built = build(op, m, schema);
    return roots_of(eval(built.select, db), *schema.find(built.table), db, schema);
}

std::set<std::string> eval_constraint_violations(const Database& db, const EvolutionOp& op,
                                                 const OntologyModel& m) {
    auto schema = emit_ddl(m).schema;
    auto built = build(op, m, schema);
    Expr check = negate(built.select.where);
    std::vector<const Row*> violating;
    auto it = db.tables.find(built.table);
    if (it != db.tables.end())
        for (const auto& row : it->second)
            if (!eval(check, row, db)) violating.push_back(&row);
    return roots_of(violating, *schema.find(built.table), db, schema);
}

// ---------------------------------------------------------------------------
// reconstruction and integrity

namespace {

/// SC value -> (table, row) of the row that links to it.
std::unordered_map<std::string, std::string> parent_keys(const Database& db, const Schema& schema) {
    std::unordered_map<std::string, std::string> parent;
    for (const auto& t : schema.tables) {
        if (t.kind != TableSchema::Kind::Entity) continue;
        const Column* sc = t.first_of(ColumnKind::SubclassLink);
        if (!sc) continue;
        auto it = db.tables.find(t.name);
        if (it == db.tables.end()) continue;
        for (const auto& row : it->second) {
            auto s = row.find(sc->name);
            auto id = row.find(t.primary_key.front());
            if (s != row.end() && s->second && id != row.end() && id->second) parent[*s->second] = *id->second;
        }
    }
    return parent;
}

const Row* find_row(const Database& db, const TableSchema& t, const std::string& key) {
    auto it = db.tables.find(t.name);
    if (it == db.tables.end()) return nullptr;
    for (const auto& row : it->second) {
        auto id = row.find(t.primary_key.front());
        if (id != row.end() && id->second == key) return &row;
    }
    return nullptr;
}

const TableSchema* subtable_for(const Schema& schema, const Column& dis, const std::string& value) {
    for (const auto& comp : dis.components)
        if (lower(comp) == value) return schema.entity_table(comp);
    return nullptr;
}

std::string object_text(const Column& c, const std::string& value, const Database& db, const Schema& schema) {
    if (c.kind == ColumnKind::Data) return c.sql_type == "INTEGER" ? value : "\"" + value + "\"";
    return root_of(db, schema, value);
}

}  // namespace

std::string root_of(const Database& db, const Schema& schema, const std::string& key) {
    auto parent = parent_keys(db, schema);
    std::string k = key;
    for (size_t hops = 0; hops <= parent.size(); ++hops) {
        auto it = parent.find(k);
        if (it == parent.end()) break;
        k = it->second;
    }
    return k;
}

std::set<FactKey> reconstruct_facts(const Database& db, const Schema& schema) {
    std::set<FactKey> out;
    auto parent = parent_keys(db, schema);
    for (const auto& t : schema.tables) {
        auto rows = db.tables.find(t.name);
        if (rows == db.tables.end()) continue;
        if (t.kind == TableSchema::Kind::Association) {
            for (const auto& row : rows->second) {
                const auto& s = row.at(t.columns[0].name);
                const auto& o = row.at(t.columns[1].name);
                if (!s || !o) continue;
                out.emplace(root_of(db, schema, *s), t.property, object_text(t.columns[1], *o, db, schema));
            }
            continue;
        }
        for (const auto& row : rows->second) {
            const std::string root = *row.at(t.primary_key.front());
            if (parent.count(root)) continue;  // not a chain head
            const TableSchema* level = &t;
            const Row* r = &row;
            for (size_t hops = 0; level && r && hops <= schema.tables.size(); ++hops) {
                for (const auto& c : level->columns) {
                    if (c.kind != ColumnKind::Reference && c.kind != ColumnKind::Data) continue;
                    const auto& v = r->at(c.name);
                    if (v) out.emplace(root, c.property, object_text(c, *v, db, schema));
                }
                const Column* sc = level->first_of(ColumnKind::SubclassLink);
                const Column* dis = level->first_of(ColumnKind::Discriminator);
                if (!sc || !r->at(sc->name) || !dis || !r->at(dis->name)) {
                    out.emplace(root, "a", level->cls);
                    break;
                }
                const TableSchema* next = subtable_for(schema, *dis, *r->at(dis->name));
                const Row* next_row = next ? find_row(db, *next, *r->at(sc->name)) : nullptr;
                if (!next_row) {
                    out.emplace(root, "a", level->cls);
                    break;
                }
                level = next;
                r = next_row;
            }
        }
    }
    return out;
}

std::set<FactKey> fact_keys(const OntologyModel& m) {
    std::set<FactKey> out;
    for (const auto& f : m.abox) {
        if (const auto* t = std::get_if<TypeAssertion>(&f)) {
            out.emplace(t->individual.local, "a", t->cls.local);
            continue;
        }
        const auto& pa = std::get<PropAssertion>(f);
        std::string obj;
        if (const auto* iri = std::get_if<Iri>(&pa.object)) obj = iri->local;
        else {
            const auto& lit = std::get<Literal>(pa.object);
            obj = lit.kind == Literal::Kind::Integer ? lit.lexical : "\"" + lit.lexical + "\"";
        }
        out.emplace(pa.subject.local, pa.property.local, obj);
    }
    return out;
}

std::vector<std::string> check_integrity(const Database& db, const Schema& schema) {
    std::vector<std::string> problems;
    auto has_key = [&](const std::string& table, const std::string& key) {
        const TableSchema* t = schema.find(table);
        return t && find_row(db, *t, key) != nullptr;
    };
    for (const auto& t : schema.tables) {
        auto rows = db.tables.find(t.name);
        if (rows == db.tables.end()) continue;
        std::set<std::vector<Cell>> keys;
        for (const auto& row : rows->second) {
            std::vector<Cell> key;
            for (const auto& k : t.primary_key) key.push_back(row.count(k) ? row.at(k) : Cell{});
            if (!keys.insert(key).second) problems.push_back("duplicate primary key in " + t.name);
            for (const auto& c : t.columns) {
                auto v = row.find(c.name);
                if (v == row.end() || !v->second) {
                    if (!c.nullable) problems.push_back("NULL in non-null column " + t.name + "." + c.name);
                    continue;
                }
                if (c.kind == ColumnKind::SubclassLink) {
                    const Column* dis = t.first_of(ColumnKind::Discriminator);
                    auto d = dis ? row.find(dis->name) : row.end();
                    const TableSchema* sub =
                        (d != row.end() && d->second) ? subtable_for(schema, *dis, *d->second) : nullptr;
                    if (!sub || !find_row(db, *sub, *v->second))
                        problems.push_back(t.name + "." + c.name + " = " + *v->second + " has no subtable row");
                } else if (!c.target_table.empty() && !has_key(c.target_table, *v->second)) {
                    problems.push_back(t.name + "." + c.name + " = " + *v->second + " is missing from " +
                                       c.target_table);
                }
            }
        }
    }
    return problems;
}

}  // namespace ontorep::sql
