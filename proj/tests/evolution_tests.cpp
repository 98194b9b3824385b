#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ontorep/evolution.hpp"
#include "ontorep/ttl_parser.hpp"

using namespace ontorep;

namespace {

OntologyModel load(const std::string& text) { return build_model(parse_document(text)); }

OntologyModel example() {
    std::ifstream in(ONTOREP_DATA_DIR "/example.ttl");
    std::ostringstream s;
    s << in.rdbuf();
    return load(s.str());
}

Iri ex(const char* local) { return Iri::in("", ns::base, local); }

using Names = std::set<std::string>;

}  // namespace

TEST_CASE("ops file format") {
    auto ops = parse_ops("# two changes\nchange-domain manage Director\n\n  delete-class Manager   # gone\n");
    REQUIRE(ops.size() == 2);
    CHECK(ops[0] == EvolutionOp{ChangeDomain{"manage", "Director"}});
    CHECK(ops[1] == EvolutionOp{DeleteClass{"Manager"}});
    CHECK(parse_ops("").empty());
    CHECK(to_string(ops[0]) == "change-domain manage Director");
    CHECK(to_string(ops[1]) == "delete-class Manager");

    auto iri = parse_ops("delete-class <http://example.org/onto#Manager>\ndelete-class http://example.org/onto#Manager");
    CHECK(std::get<DeleteClass>(iri[0]).cls == "http://example.org/onto#Manager");
    CHECK(iri[0] == iri[1]);
    CHECK(local_name("http://example.org/onto#Manager") == "Manager");
    CHECK(local_name(":Manager") == "Manager");
}

TEST_CASE("malformed ops name their line") {
    try {
        parse_ops("delete-class A\nrename A B\n");
        FAIL("expected OpSyntaxError");
    } catch (const OpSyntaxError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_ops("change-domain p"), OpSyntaxError);
    CHECK_THROWS_AS(parse_ops("delete-class"), OpSyntaxError);
}

TEST_CASE("a domain change only touches the property") {
    auto m = example();
    auto applied = apply_op(m, ChangeDomain{"manage", "Director"});
    CHECK(applied.warnings.empty());
    CHECK(applied.model.find_property_named("manage")->domain == ex("Director"));
    CHECK(applied.model.classes.size() == m.classes.size());
    CHECK(applied.model.abox == m.abox);
    CHECK(m.find_property_named("manage")->domain == ex("Manager"));
}

TEST_CASE("deleting Manager lifts its subclasses to Person") {
    auto m1 = apply_op(example(), ChangeDomain{"manage", "Director"}).model;
    auto applied = apply_op(m1, DeleteClass{"Manager"});
    const auto& m2 = applied.model;
    CHECK_FALSE(m2.find_class_named("Manager"));
    CHECK(m2.find_class_named("Researcher")->supers == std::vector<Iri>{ex("Person")});
    CHECK(m2.find_class_named("Director")->supers == std::vector<Iri>{ex("Person")});
    CHECK(m2.find_class_named("Trainee")->disjoint_with.empty());
    CHECK(m2.abox == m1.abox);
    CHECK(validate_tbox(m2).empty());
    REQUIRE(applied.warnings.size() == 1);
    CHECK(applied.warnings[0].code == "evolution-drop");

    auto check = check_abox(m2);
    int undeclared = 0;
    for (const auto& f : check) undeclared += f.code == "undeclared-class";
    CHECK(undeclared == 2);
}

TEST_CASE("deleting a class re-targets properties that pointed at it") {
    auto m = load(":A a owl:Class . :B a owl:Class . :C a owl:Class . :B rdfs:subClassOf :A .\n"
                  ":p a owl:ObjectProperty ; rdfs:domain :B ; rdfs:range :B .\n"
                  ":q a owl:ObjectProperty ; rdfs:domain :C .\n"
                  ":A rdfs:subClassOf [ a owl:Restriction ; owl:onProperty :q ; owl:someValuesFrom :C ] .");
    auto b = apply_op(m, DeleteClass{"B"});
    CHECK(b.model.find_property_named("p")->domain == ex("A"));
    CHECK(b.model.find_property_named("p")->range == ex("A"));
    CHECK(b.warnings.size() == 2);
    auto c = apply_op(m, DeleteClass{"C"});
    CHECK_FALSE(c.model.find_property_named("q")->domain);
    CHECK(c.model.find_class_named("A")->restrictions.empty());
    std::vector<std::string> codes;
    for (const auto& w : c.warnings) codes.push_back(w.code);
    CHECK(codes == std::vector<std::string>{"evolution-drop", "evolution-retarget"});
}

TEST_CASE("deleting an unused leaf is silent") {
    auto m = load(":A a owl:Class . :B a owl:Class . :B rdfs:subClassOf :A . :x a :A .");
    auto applied = apply_op(m, DeleteClass{"B"});
    CHECK(applied.warnings.empty());
    CHECK(applied.model.classes.size() == 1);
    CHECK(detect(m, {DeleteClass{"B"}}).ops[0].merged.empty());
}

TEST_CASE("unknown names are rejected") {
    auto m = example();
    CHECK_THROWS_AS(apply_op(m, DeleteClass{"Boss"}), UnknownEntity);
    CHECK_THROWS_AS(apply_op(m, ChangeDomain{"lead", "Director"}), UnknownEntity);
    CHECK_THROWS_AS(apply_op(m, ChangeDomain{"manage", "Boss"}), UnknownEntity);
    CHECK_THROWS_AS(detect(m, {DeleteClass{"Manager"}, DeleteClass{"Manager"}}), UnknownEntity);
}

TEST_CASE("detect on the two changes") {
    auto report = detect(example(), {ChangeDomain{"manage", "Director"}, DeleteClass{"Manager"}});
    REQUIRE(report.ops.size() == 2);
    for (const char* b : backend_names) {
        CHECK(report.ops[0].backends.at(b) == Names{"r4", "r6"});
        CHECK(report.ops[1].backends.at(b) == Names{"r3", "r4"});
    }
    CHECK(report.ops[0].merged == Names{"r4", "r6"});
    CHECK(report.ops[1].merged == Names{"r3", "r4"});
    CHECK(report.agreement());
    CHECK(report.any_inconsistent());
    CHECK(report.ops[1].sql_query == "SELECT * FROM Manager where SCManager IS NULL");
    CHECK_FALSE(report.final_model.find_class_named("Manager"));
}

TEST_CASE("the order of ops matters") {
    auto m = example();
    auto forward = detect(m, {ChangeDomain{"manage", "Director"}, DeleteClass{"Researcher"}});
    auto backward = detect(m, {DeleteClass{"Researcher"}, ChangeDomain{"manage", "Director"}});
    CHECK(forward.ops[1].merged == Names{"r5", "r6"});
    CHECK(backward.ops[0].merged == Names{"r5", "r6"});
    CHECK(forward.ops[0].merged == Names{"r4", "r6"});
}

TEST_CASE("no ops means an empty report") {
    auto report = detect(example(), {});
    CHECK(report.ops.empty());
    CHECK(report.agreement());
    CHECK_FALSE(report.any_inconsistent());
    CHECK(to_json(report) == "{\n  \"schema\": \"1\",\n  \"ops\": []\n}\n");
}

TEST_CASE("an ill-formed ontology is refused") {
    auto m = load(":A a owl:Class . :B a owl:Class . :A rdfs:subClassOf :B . :B rdfs:subClassOf :A .");
    CHECK_THROWS_AS(detect(m, {DeleteClass{"A"}}), ModelError);
}

TEST_CASE("report JSON") {
    auto report = detect(example(), {ChangeDomain{"manage", "Director"}, DeleteClass{"Manager"}});
    auto j = nlohmann::json::parse(to_json(report));
    CHECK(j["schema"] == "1");
    REQUIRE(j["ops"].size() == 2);
    CHECK(j["ops"][0]["op"] == "change-domain manage Director");
    CHECK(j["ops"][0]["backends"]["sql"] == nlohmann::json::array({"r4", "r6"}));
    CHECK(j["ops"][1]["merged"] == nlohmann::json::array({"r3", "r4"}));
    CHECK(j["ops"][1]["agreement"] == true);
    CHECK(j["ops"][1]["artifacts"]["sql_constraint"] ==
          "ALTER TABLE Manager ADD CONSTRAINT chk_no_Manager\n CHECK(SCManager IS NOT NULL)");
    CHECK(to_json(report) == to_json(detect(example(), {ChangeDomain{"manage", "Director"}, DeleteClass{"Manager"}})));
}
