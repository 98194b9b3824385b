#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ontorep/evolution_op.hpp"
#include "ontorep/ontology.hpp"

namespace ontorep {

class OpSyntaxError : public std::runtime_error {
public:
    OpSyntaxError(int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

class UnknownEntity : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One op per line: "change-domain <property> <class>" or
/// "delete-class <class>". Blank lines and "#" comments are skipped.
std::vector<EvolutionOp> parse_ops(std::string_view text);

struct Applied {
    OntologyModel model;
    std::vector<Finding> warnings;  // evolution-retarget, evolution-drop
};

/// The model after `op`. Type assertions are never removed, so individuals
/// of a deleted class stay visible as undeclared-class findings.
Applied apply_op(const OntologyModel& m, const EvolutionOp& op);

inline constexpr const char* backend_names[] = {"types", "oo", "sql"};

struct OpReport {
    EvolutionOp op;
    std::map<std::string, std::set<std::string>> backends;  // backend -> individual local names
    std::set<std::string> merged;
    bool agreement = true;
    std::string sql_query;
    std::string sql_constraint;
    std::vector<Finding> findings;
};

struct EvolutionReport {
    std::vector<OpReport> ops;
    OntologyModel final_model;

    bool agreement() const;
    bool any_inconsistent() const;
};

/// Applies `ops` in order. After each one every backend looks for the
/// individuals of the original data it no longer accepts:
///   types  typechecks the original program against the new model and keeps
///          the errors caused by this op;
///   oo     checks the original instances against the evolved class model;
///   sql    runs the op's query on the database populated from `m_old`.
EvolutionReport detect(const OntologyModel& m_old, const std::vector<EvolutionOp>& ops);

/// The ".report.json" text.
std::string to_json(const EvolutionReport& r);

}  // namespace ontorep
