#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "ontorep/evolution.hpp"
#include "ontorep/oo_model.hpp"
#include "ontorep/sql_backend.hpp"
#include "ontorep/ttl_parser.hpp"
#include "ontorep/typesys.hpp"

using namespace ontorep;

namespace {

OntologyModel load(const std::string& text) { return build_model(parse_document(text)); }

OntologyModel example() {
    std::ifstream in(ONTOREP_DATA_DIR "/example.ttl");
    std::ostringstream s;
    s << in.rdbuf();
    return load(s.str());
}

bool has_line(const std::string& text, const std::string& line) {
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);)
        if (l == line) return true;
    return false;
}

const ChangeDomain mod1{"manage", "Director"};
const DeleteClass mod2{"Manager"};

}  // namespace

// --- type system -------------------------------------------------------------

TEST_CASE("type view of the example") {
    const std::string text = types::emit_types(example()).render();
    for (const char* line : {"Person, PhdStudent, Trainee, ComputerTrainee, Manager, Researcher, Director, "
                             "Department, Computer : type;",
                             "Researcher <= Manager;", "ComputerTrainee <= Trainee;",
                             "work : Person -> Department;", "manage : Manager -> Department;",
                             "studyAmong : Trainee -> Department;", "r3, r4 : Manager;",
                             "v1, v2, v3, v4, v5, v6, v7, v8 : Department;", "manage(r4, v4);"})
        CHECK_MESSAGE(has_line(text, line), line);
    CHECK(types::emit_types(example()).render() == text);
}

TEST_CASE("the original program typechecks against its own model") {
    auto m = example();
    CHECK(types::typecheck(types::emit_types(m), m).empty());
}

TEST_CASE("after the domain change the manage applications of r4 and r6 fail") {
    auto m = example();
    auto m1 = apply_op(m, mod1).model;
    auto errors = types::typecheck(types::emit_types(m), m1);
    REQUIRE(errors.size() == 2);
    CHECK(errors[0].render() == "ERROR signature-mismatch at manage(r4, v4): argument 'r4' is not of type Director");
    CHECK(errors[1].locus == "manage(r6, v6)");
    CHECK(has_line(types::emit_types(m1).render(), "manage : Director -> Department;"));
}

TEST_CASE("after deleting Manager its constants have an undeclared type") {
    auto m = example();
    auto m2 = apply_op(apply_op(m, mod1).model, mod2).model;
    auto errors = types::typecheck(types::emit_types(m), m2);
    bool undeclared = false;
    for (const auto& e : errors)
        if (e.kind == types::ErrorKind::UndeclaredType) {
            undeclared = true;
            CHECK(e.locus == "r3, r4 : Manager");
        }
    CHECK(undeclared);
    const auto text = types::emit_types(m2).render();
    CHECK(has_line(text, "Researcher <= Person;"));
    CHECK(has_line(text, "Director <= Person;"));
    CHECK_FALSE(has_line(text, "Researcher <= Manager;"));
}

TEST_CASE("properties without domain or range use the root type") {
    auto m = load(":A a owl:Class .\n:p a owl:ObjectProperty .\n:n a owl:DatatypeProperty ; rdfs:range xsd:integer .");
    const auto text = types::emit_types(m).render();
    CHECK(has_line(text, "p : Thing -> Thing;"));
    CHECK(has_line(text, "n : Thing -> integer;"));
}

// --- class model -------------------------------------------------------------

TEST_CASE("class model of the example") {
    auto m = example();
    auto cm = oo::emit_class_model(m);
    REQUIRE(cm.find("Thing"));
    CHECK(cm.find("Thing")->field("objectURL"));
    CHECK(cm.find("Researcher")->extends == "Manager");
    CHECK(cm.find("Manager")->field("manage")->multiplicity == oo::OoField::Multiplicity::Single);
    CHECK(cm.find("Trainee")->field("studyAmong")->multiplicity == oo::OoField::Multiplicity::Many);
    REQUIRE(cm.find("ComputerTrainee")->listeners.size() == 1);
    CHECK(cm.find("ComputerTrainee")->listeners[0].required_class == "Computer");

    // The disjoint pair clashes through two interfaces with one operation.
    const auto* mv = cm.find_interface("IManagerVersusTrainee");
    const auto* tv = cm.find_interface("ITraineeVersusManager");
    REQUIRE(mv);
    REQUIRE(tv);
    CHECK(mv->operations[0].name == tv->operations[0].name);
    CHECK(mv->operations[0].result_type != tv->operations[0].result_type);
    CHECK(cm.warnings.empty());

    auto instances = oo::instantiate(cm, m);
    CHECK(instances.size() == 16);
    CHECK(cm.find("Manager")->registry == std::vector<std::string>{"r3", "r4"});
    CHECK(cm.find("Researcher")->registry == std::vector<std::string>{"r5", "r6"});
}

TEST_CASE("a second superclass becomes an interface with a warning") {
    auto m = load(":A a owl:Class . :B a owl:Class . :C a owl:Class .\n"
                  ":C rdfs:subClassOf :A , :B .");
    auto cm = oo::emit_class_model(m);
    CHECK(cm.find("C")->extends == "A");
    CHECK(cm.find("C")->implements == std::vector<std::string>{"IB"});
    REQUIRE(cm.warnings.size() == 1);
    CHECK(cm.warnings[0].code == "multiple-inheritance");
}

TEST_CASE("the domain change removes the setter where manage no longer belongs") {
    auto m = example();
    auto cm = oo::emit_class_model(m);
    auto instances = oo::instantiate(cm, m);
    auto evolved = oo::evolve_class_model(cm, mod1);
    CHECK(evolved.find("Manager")->field("manage")->setter_removed);
    REQUIRE(evolved.find("Researcher")->field("manage"));
    CHECK(evolved.find("Researcher")->field("manage")->setter_removed);
    CHECK(evolved.find("Researcher")->field("manage")->inherited);
    CHECK_FALSE(evolved.find("Director")->field("manage"));
    CHECK(oo::find_inconsistent_objects(instances, evolved, mod1) == std::set<std::string>{"r4", "r6"});

    const auto java = oo::render_skeleton(evolved);
    CHECK(java.find("public class Director extends Manager") != std::string::npos);
}

TEST_CASE("deleting a class blocks its constructor and lifts its subclasses") {
    auto m = example();
    auto cm = oo::emit_class_model(m);
    auto instances = oo::instantiate(cm, m);
    auto evolved = oo::evolve_class_model(oo::evolve_class_model(cm, mod1), mod2);
    CHECK(evolved.find("Manager")->constructor_blocked);
    CHECK(evolved.find("Researcher")->extends == "Person");
    CHECK(evolved.find("Director")->extends == "Person");
    CHECK(evolved.find("Person")->field("manage"));
    CHECK_FALSE(evolved.find_interface("IManagerVersusTrainee"));
    CHECK(oo::find_inconsistent_objects(instances, evolved, mod2) == std::set<std::string>{"r3", "r4"});
    CHECK(oo::render_skeleton(evolved).find("throw") != std::string::npos);
}

TEST_CASE("class model JSON is stable") {
    auto m = example();
    auto cm = oo::emit_class_model(m);
    auto instances = oo::instantiate(cm, m);
    const auto json = oo::to_json(cm, instances);
    CHECK(json.find("\"schema\": \"1\"") != std::string::npos);
    CHECK(json == oo::to_json(cm, instances));
}

// --- relational view ---------------------------------------------------------

TEST_CASE("Person and StudyAmong tables") {
    auto ddl = sql::emit_ddl(example());
    const auto* person = ddl.schema.find("Person");
    REQUIRE(person);
    std::vector<std::pair<std::string, sql::ColumnKind>> cols;
    for (const auto& c : person->columns) cols.emplace_back(c.name, c.kind);
    CHECK(cols == std::vector<std::pair<std::string, sql::ColumnKind>>{
                      {"IDPerson", sql::ColumnKind::Id},
                      {"SCPerson", sql::ColumnKind::SubclassLink},
                      {"DISManagerTraineePhdStudent", sql::ColumnKind::Discriminator},
                      {"REFwork", sql::ColumnKind::Reference}});
    CHECK(person->column("REFwork")->target_table == "Department");

    const auto* sa = ddl.schema.find("StudyAmong");
    REQUIRE(sa);
    CHECK(sa->kind == sql::TableSchema::Kind::Association);
    CHECK(sa->primary_key == std::vector<std::string>{"IDTrainee", "IDDepartment"});
    CHECK(sa->columns[0].target_table == "Trainee");
    CHECK(sa->columns[1].target_table == "Department");
    CHECK(ddl.ddl.find("CREATE TABLE StudyAmong\n(IDTrainee INTEGER REFERENCES Trainee,\n "
                       "IDDepartment INTEGER REFERENCES Department,\n PRIMARY KEY (IDTrainee, IDDepartment));") !=
          std::string::npos);
    CHECK(ddl.ddl.find("-- create trigger disjoint_") != std::string::npos);
}

TEST_CASE("rows follow the class chains") {
    auto m = example();
    auto ddl = sql::emit_ddl(m);
    auto db = sql::populate(m, ddl.schema);
    const auto& person = db.tables.at("Person");
    REQUIRE(person.size() == 8);
    sql::Row r4 = person[3];
    CHECK(r4.at("IDPerson") == "r4");
    CHECK(r4.at("SCPerson") == "r4_1");
    CHECK(r4.at("DISManagerTraineePhdStudent") == "manager");
    CHECK_FALSE(r4.at("REFwork"));
    CHECK(db.tables.at("Manager")[3].at("IDManager") == "r6_1");
    CHECK(db.tables.at("Manager")[3].at("SCManager") == "r6_2");
    CHECK(db.tables.at("Researcher").size() == 2);
    CHECK(sql::check_integrity(db, ddl.schema).empty());
    CHECK(sql::reconstruct_facts(db, ddl.schema) == sql::fact_keys(m));
    CHECK(sql::root_of(db, ddl.schema, "r8_2") == "r8");
    CHECK(sql::render_inserts(db, ddl.schema).find(
              "INSERT INTO Person (IDPerson, SCPerson, DISManagerTraineePhdStudent, REFwork) VALUES "
              "('r4', 'r4_1', 'manager', NULL);") != std::string::npos);
}

TEST_CASE("broken links are reported by the integrity check") {
    auto m = example();
    auto ddl = sql::emit_ddl(m);
    auto db = sql::populate(m, ddl.schema);
    db.tables["Researcher"].clear();
    db.tables["Manager"][0]["REFmanage"] = "v99";
    auto problems = sql::check_integrity(db, ddl.schema);
    CHECK(problems.size() == 3);
}

TEST_CASE("queries and constraints for the two changes") {
    auto m = example();
    CHECK(sql::emit_inconsistency_query(mod1, m) ==
          "SELECT * from Manager where REFmanage IS NOT NULL and DISResearcherDirector != director");
    CHECK(sql::emit_evolution_constraints(mod1, m) ==
          "ALTER TABLE Manager ADD CONSTRAINT chk_manage_domain_Director\n"
          " CHECK(REFmanage IS NULL or DISResearcherDirector = director)");
    CHECK(sql::emit_inconsistency_query(mod2, m) == "SELECT * FROM Manager where SCManager IS NULL");
    CHECK(sql::emit_evolution_constraints(mod2, m) ==
          "ALTER TABLE Manager ADD CONSTRAINT chk_no_Manager\n CHECK(SCManager IS NOT NULL)");

    auto ddl = sql::emit_ddl(m);
    auto db = sql::populate(m, ddl.schema);
    CHECK(sql::eval_inconsistency(db, mod1, m) == std::set<std::string>{"r4", "r6"});
    CHECK(sql::eval_inconsistency(db, mod2, m) == std::set<std::string>{"r3", "r4"});
    CHECK(sql::eval_constraint_violations(db, mod1, m) == std::set<std::string>{"r4", "r6"});
    CHECK(sql::eval_constraint_violations(db, mod2, m) == std::set<std::string>{"r3", "r4"});
}

TEST_CASE("deeper and wider domain changes") {
    auto m = load(":A a owl:Class . :B a owl:Class . :C a owl:Class . :D a owl:Class . :E a owl:Class .\n"
                  ":B rdfs:subClassOf :A . :C rdfs:subClassOf :B . :D rdfs:subClassOf :A .\n"
                  ":p a owl:ObjectProperty, owl:FunctionalProperty ; rdfs:domain :A ; rdfs:range :E .\n"
                  ":q a owl:ObjectProperty ; rdfs:domain :B .\n"
                  ":a a :A . :b a :B . :c a :C . :d a :D . :e a :E .\n"
                  ":a :p :e . :b :p :e . :c :p :e . :d :p :e . :b :q :e . :c :q :e .");
    CHECK(sql::emit_inconsistency_query(ChangeDomain{"p", "C"}, m) ==
          "SELECT * from A where REFp IS NOT NULL and (DISBD != b or SCA NOT IN "
          "(SELECT IDB FROM B where DISC = c))");
    auto ddl = sql::emit_ddl(m);
    auto db = sql::populate(m, ddl.schema);
    CHECK(sql::eval_inconsistency(db, ChangeDomain{"p", "C"}, m) == std::set<std::string>{"a", "b", "d"});
    CHECK(sql::emit_inconsistency_query(ChangeDomain{"p", "A"}, m) == "SELECT * from A where REFp IS NOT NULL and 1 = 0");
    CHECK(sql::eval_inconsistency(db, ChangeDomain{"p", "E"}, m) == std::set<std::string>{"a", "b", "c", "d"});
    CHECK(sql::emit_inconsistency_query(ChangeDomain{"q", "C"}, m) ==
          "SELECT * from Q where IDB NOT IN (SELECT IDB FROM B where DISC = c)");
    CHECK(sql::eval_inconsistency(db, ChangeDomain{"q", "C"}, m) == std::set<std::string>{"b"});
    CHECK_THROWS_AS(sql::emit_inconsistency_query(ChangeDomain{"nope", "C"}, m), sql::UnsupportedOp);
}

TEST_CASE("NULL is a value distinct from every string") {
    sql::Database db;
    sql::Row row{{"x", std::nullopt}, {"y", "v"}};
    auto eq = sql::Expr{sql::Compare{"x", true, "v"}};
    auto ne = sql::Expr{sql::Compare{"x", false, "v"}};
    CHECK_FALSE(sql::eval(eq, row, db));
    CHECK(sql::eval(ne, row, db));
    CHECK(sql::eval(sql::negate(eq), row, db) != sql::eval(eq, row, db));
    sql::Expr both{sql::Junction{true, {eq, sql::Expr{sql::IsNull{"y", true}}}}};
    CHECK(sql::render(sql::negate(both)) == "x != v or y IS NULL");
    CHECK(sql::eval(sql::negate(both), row, db) == !sql::eval(both, row, db));
}

TEST_CASE("populate rejects facts the tables cannot hold") {
    auto m = load(":A a owl:Class . :B a owl:Class .\n"
                  ":p a owl:ObjectProperty, owl:FunctionalProperty ; rdfs:domain :A .\n"
                  ":x a :B . :x :p :y .");
    CHECK_THROWS_AS(sql::populate(m, sql::emit_ddl(m).schema), sql::PopulationError);
}
