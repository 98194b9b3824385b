#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ontorep/cli.hpp"

namespace fs = std::filesystem;
using ontorep::cli::run;

namespace {

const std::string example = ONTOREP_DATA_DIR "/example.ttl";
const std::string mods = ONTOREP_DATA_DIR "/mods.evo";

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

/// A fresh directory under the system temp dir, removed afterwards.
struct Scratch {
    fs::path dir;
    Scratch() {
        static int n = 0;
        dir = fs::temp_directory_path() / ("onto-multirep-test-" + std::to_string(::getpid()) + "-" + std::to_string(n++));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }
    std::string out() const { return (dir / "out").string(); }
    std::string write(const std::string& name, const std::string& text) const {
        std::ofstream(dir / name) << text;
        return (dir / name).string();
    }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("check on the example succeeds") {
    auto r = call({"check", example});
    CHECK(r.code == 0);
    CHECK(r.out == "0 error(s), 0 warning(s)\n");
    CHECK(r.err.empty());

    auto j = call({"check", example, "--format", "json"});
    CHECK(j.code == 0);
    auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["errors"] == 0);
    CHECK(parsed["findings"].empty());
}

TEST_CASE("check reports errors with exit code 1") {
    Scratch s;
    auto bad = s.write("bad.ttl", ":A a owl:Class .\n:p a owl:ObjectProperty ; rdfs:domain :A .\n:x :p :y .\n");
    auto r = call({"check", bad});
    CHECK(r.code == 1);
    CHECK(r.out.find("error [domain-violation] (ir) {x}") != std::string::npos);
    CHECK(r.out.find("\033[") == std::string::npos);
    CHECK(call({"check", bad, "--infer"}).code == 0);
}

TEST_CASE("restriction severity can be raised") {
    Scratch s;
    auto f = s.write("r.ttl", ":T a owl:Class . :K a owl:Class . :s a owl:ObjectProperty .\n"
                               ":T rdfs:subClassOf [ a owl:Restriction ; owl:onProperty :s ; owl:someValuesFrom :K ] .\n"
                               ":t a :T .\n");
    CHECK(call({"check", f}).code == 0);
    CHECK(call({"check", f, "--restriction-severity", "error"}).code == 1);
}

TEST_CASE("evolve on the two changes writes the report and exits 1") {
    Scratch s;
    auto r = call({"evolve", example, "--ops", mods, "--out", s.out()});
    CHECK(r.code == 1);
    auto report = nlohmann::json::parse(slurp(fs::path(s.out()) / "example.report.json"));
    CHECK(report["schema"] == "1");
    CHECK(report["ops"][0]["merged"] == nlohmann::json::array({"r4", "r6"}));
    CHECK(report["ops"][1]["merged"] == nlohmann::json::array({"r3", "r4"}));
    CHECK(report["ops"][0]["agreement"] == true);
    CHECK(report["ops"][1]["agreement"] == true);
    CHECK(slurp(fs::path(s.out()) / "example.evolved.types").find("Researcher <= Person;") != std::string::npos);
    CHECK(r.out.find("  sql: {r3, r4}\n") != std::string::npos);
}

TEST_CASE("evolve with nothing to report exits 0") {
    Scratch s;
    auto ops = s.write("none.evo", "# nothing\n");
    CHECK(call({"evolve", example, "--ops", ops, "--out", s.out()}).code == 0);
    auto leaf = s.write("leaf.evo", "change-domain work Person\n");
    CHECK(call({"evolve", example, "--ops", leaf, "--out", s.out()}).code == 0);
}

TEST_CASE("disagreement between the views outranks findings") {
    ontorep::EvolutionReport report;
    CHECK(ontorep::cli::evolve_exit_code(report) == 0);
    ontorep::OpReport r;
    r.agreement = true;
    r.merged = {"x"};
    report.ops.push_back(r);
    CHECK(ontorep::cli::evolve_exit_code(report) == 1);
    r.agreement = false;
    r.merged.clear();
    report.ops.push_back(r);
    CHECK(ontorep::cli::evolve_exit_code(report) == 2);
}

TEST_CASE("emit writes the selected views") {
    Scratch s;
    auto r = call({"emit", "--target", "sql", example, "--out", s.out()});
    CHECK(r.code == 0);
    const auto sql = slurp(fs::path(s.out()) / "example.sql");
    CHECK(sql.find("CREATE TABLE StudyAmong") != std::string::npos);
    CHECK_FALSE(fs::exists(fs::path(s.out()) / "example.types"));

    CHECK(call({"emit", "--target", "types", "--target", "oo", example, "--out", s.out()}).code == 0);
    CHECK(fs::exists(fs::path(s.out()) / "example.types"));
    CHECK(fs::exists(fs::path(s.out()) / "example.oo.json"));
    CHECK(fs::exists(fs::path(s.out()) / "example.java.txt"));

    CHECK(call({"emit", "--target", "sql", "--ops", mods, example, "--out", s.out()}).code == 0);
    const auto with_ops = slurp(fs::path(s.out()) / "example.sql");
    CHECK(with_ops.find("SELECT * FROM Manager where SCManager IS NULL;") != std::string::npos);
    CHECK(with_ops.find("ALTER TABLE Manager ADD CONSTRAINT chk_manage_domain_Director") != std::string::npos);
}

TEST_CASE("outputs are byte-identical across runs") {
    Scratch a, b;
    for (const auto* s : {&a, &b}) {
        call({"emit", "--target", "types", "--target", "oo", "--target", "sql", example, "--out", s->out()});
        call({"evolve", example, "--ops", mods, "--out", s->out()});
    }
    for (const char* f : {"example.types", "example.oo.json", "example.java.txt", "example.sql", "example.report.json"})
        CHECK_MESSAGE(slurp(fs::path(a.out()) / f) == slurp(fs::path(b.out()) / f), f);
}

TEST_CASE("parse prints canonical triples") {
    auto r = call({"parse", example});
    CHECK(r.code == 0);
    CHECK(r.out.find(":r8 :manage :v8 .") != std::string::npos);
    CHECK(call({"parse", example}).out == r.out);
}

TEST_CASE("usage errors exit 64") {
    CHECK(call({}).code == 64);
    CHECK(call({"frobnicate"}).code == 64);
    CHECK(call({"emit", example}).code == 64);                       // no target
    CHECK(call({"emit", "--target", "xml", example}).code == 64);    // unknown target
    CHECK(call({"evolve", example}).code == 64);                     // no ops
    CHECK(call({"check", example, "--strict", "--infer"}).code == 64);
    CHECK(call({"--help"}).code == 0);
}

TEST_CASE("bad input exits 65 and writes nothing") {
    Scratch s;
    auto broken = s.write("broken.ttl", ":a :p .\n");
    auto r = call({"emit", "--target", "sql", broken, "--out", s.out()});
    CHECK(r.code == 65);
    CHECK(r.err.find("broken.ttl:1:") != std::string::npos);
    CHECK_FALSE(fs::exists(s.out()));

    CHECK(call({"check", (s.dir / "missing.ttl").string()}).code == 65);
    auto ops = s.write("bad.evo", "rename Manager Boss\n");
    auto e = call({"evolve", example, "--ops", ops, "--out", s.out()});
    CHECK(e.code == 65);
    CHECK(e.err.find(":1:") != std::string::npos);
    auto unknown = s.write("unknown.evo", "delete-class Boss\n");
    CHECK(call({"evolve", example, "--ops", unknown, "--out", s.out()}).code == 65);
    CHECK_FALSE(fs::exists(s.out()));
}
