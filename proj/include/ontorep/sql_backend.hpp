#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "ontorep/evolution_op.hpp"
#include "ontorep/ontology.hpp"

namespace ontorep::sql {

enum class ColumnKind { Id, SubclassLink, Discriminator, Reference, Data };

std::string_view to_string(ColumnKind k);

struct Column {
    std::string name;
    ColumnKind kind = ColumnKind::Data;
    bool nullable = true;
    std::string sql_type;
    std::string target_table;             // ID/REF columns of association tables, REF columns
    std::vector<std::string> components;  // DIS: subclass names in declaration order
    std::string property;                 // REF and data columns, association columns
};

struct ForeignKey {
    std::string column;
    std::string target_table;
};

struct TableSchema {
    enum class Kind { Entity, Association };

    std::string name;
    Kind kind = Kind::Entity;
    std::string cls;       // entity tables
    std::string property;  // association tables
    std::vector<Column> columns;
    std::vector<std::string> primary_key;
    std::vector<ForeignKey> foreign_keys;

    const Column* column(const std::string& n) const;
    const Column* first_of(ColumnKind k) const;
};

struct Schema {
    std::vector<TableSchema> tables;
    std::vector<std::string> trigger_stubs;  // rendered as SQL comments

    const TableSchema* find(const std::string& name) const;
    const TableSchema* entity_table(const std::string& cls) const;
    const TableSchema* association_table(const std::string& property) const;
    /// Entity table holding the REF or data column of `property`.
    const TableSchema* column_owner(const std::string& property) const;
};

using Cell = std::optional<std::string>;
using Row = std::map<std::string, Cell>;

struct Database {
    std::map<std::string, std::vector<Row>> tables;
};

class PopulationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedOp : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// --- query IR -------------------------------------------------------------
//
// Exactly the shapes the emitter produces. Comparisons treat NULL as a value
// distinct from every string: `c = v` is false and `c != v` is true on NULL,
// and `c IN (...)` is false on NULL. Under this reading a predicate and its
// negation partition the rows.

struct Select;
struct Expr;

struct IsNull {
    std::string column;
    bool negated = false;  // IS NOT NULL
};
struct Compare {
    std::string column;
    bool equal = true;
    std::string value;
};
struct InSelect {
    std::string column;
    bool negated = false;
    std::shared_ptr<const Select> sub;
};
struct Const {
    bool value = true;
};
struct Junction {
    bool conjunction = true;
    std::vector<Expr> terms;
};

struct Expr {
    std::variant<IsNull, Compare, InSelect, Const, Junction> node;
};

struct Select {
    std::string table;
    std::string projection = "*";
    Expr where{Const{true}};
    std::string from_keyword = "FROM";
};

Expr negate(const Expr& e);
std::string render(const Expr& e);
std::string render(const Select& s);

bool eval(const Expr& e, const Row& row, const Database& db);
std::vector<const Row*> eval(const Select& s, const Database& db);

// --- operations -------------------------------------------------------------

struct SqlArtifact {
    std::string ddl;
    std::vector<std::pair<std::string, std::string>> queries;      // op text, query
    std::vector<std::pair<std::string, std::string>> constraints;  // op text, ALTER TABLE
};

struct DdlResult {
    std::string ddl;
    Schema schema;
};

/// Chained-subtable mapping: one entity table per class (ID, SC, DIS, REF
/// and data columns), one association table per non-functional property.
DdlResult emit_ddl(const OntologyModel& m);

/// One row per level of each individual's primary class chain, linked
/// root to leaf through SC with keys "r3", "r3_1", "r3_2", ...
Database populate(const OntologyModel& m, const Schema& schema);

/// INSERT statements for every row, in table then row order.
std::string render_inserts(const Database& db, const Schema& schema);

/// Query selecting the rows `op` makes inconsistent. `m` is the model the
/// database was populated from.
Select inconsistency_query(const EvolutionOp& op, const OntologyModel& m);
std::string emit_inconsistency_query(const EvolutionOp& op, const OntologyModel& m);

/// The CHECK constraint dual to the inconsistency query.
std::string emit_evolution_constraints(const EvolutionOp& op, const OntologyModel& m);

/// Root individual ids of the rows selected by the inconsistency query.
std::set<std::string> eval_inconsistency(const Database& db, const EvolutionOp& op, const OntologyModel& m);

/// Root individual ids of the rows that would violate the CHECK constraint.
std::set<std::string> eval_constraint_violations(const Database& db, const EvolutionOp& op,
                                                 const OntologyModel& m);

/// Follows SC links upward from a chained key to the root individual id.
std::string root_of(const Database& db, const Schema& schema, const std::string& key);

/// Facts as (subject, predicate or "a", object) text triples; literals are
/// quoted unless integer.
using FactKey = std::tuple<std::string, std::string, std::string>;
std::set<FactKey> reconstruct_facts(const Database& db, const Schema& schema);
std::set<FactKey> fact_keys(const OntologyModel& m);

/// Primary-key uniqueness and foreign-key closure (SC through DIS, REF and
/// association references). Empty when the database is well formed.
std::vector<std::string> check_integrity(const Database& db, const Schema& schema);

}  // namespace ontorep::sql
