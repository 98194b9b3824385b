#include "ontorep/cli.hpp"

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ontorep/evolution.hpp"
#include "ontorep/oo_model.hpp"
#include "ontorep/sql_backend.hpp"
#include "ontorep/ttl_parser.hpp"
#include "ontorep/typesys.hpp"

namespace ontorep::cli {

namespace fs = std::filesystem;

namespace {

/// Bad input files: missing, unreadable or ill-formed.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::string input;
    std::vector<std::string> targets;
    std::string ops;
    std::string out_dir = "./out";
    bool infer = false;
    bool strict = false;
    std::string restriction_severity = "warning";
    std::string format = "text";
    bool save = false;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// Outputs are collected first and written only when the command succeeds.
using Outputs = std::vector<std::pair<std::string, std::string>>;

void write_outputs(const RunConfig& cfg, const Outputs& files) {
    if (files.empty()) return;
    fs::create_directories(cfg.out_dir);
    for (const auto& [name, text] : files) {
        std::ofstream f(fs::path(cfg.out_dir) / name, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write '" + name + "' under " + cfg.out_dir);
        f << text;
    }
}

std::string stem(const RunConfig& cfg) { return fs::path(cfg.input).stem().string(); }

bool color_enabled(std::ostream& out) {
    const char* env = std::getenv("ONTO_MULTIREP_COLOR");
    if (env && std::string(env) == "0") return false;
    if (env && std::string(env) == "1") return true;
    return &out == &std::cout && isatty(STDOUT_FILENO);
}

std::string colored(const Finding& f, bool color) {
    std::string text = render(f);
    if (!color) return text;
    const char* c = f.severity == Severity::Error ? "\033[31m" : "\033[33m";
    return c + text + "\033[0m";
}

OntologyModel load(const RunConfig& cfg) {
    OntologyModel m = build_model(parse_document(read_file(cfg.input)));
    return cfg.infer ? infer_domain_types(m) : m;
}

int cmd_parse(const RunConfig& cfg, std::ostream& out) {
    std::string text = serialize(parse_document(read_file(cfg.input)));
    if (cfg.save) write_outputs(cfg, {{stem(cfg) + ".ttl", text}});
    else out << text;
    return exit_code::ok;
}

int cmd_check(const RunConfig& cfg, std::ostream& out) {
    OntologyModel m = load(cfg);
    CheckConfig cc;
    cc.mode = cfg.infer ? CheckConfig::Mode::Infer : CheckConfig::Mode::Strict;
    cc.restriction_severity = cfg.restriction_severity == "error" ? Severity::Error : Severity::Warning;

    std::vector<Finding> findings = m.build_warnings;
    for (auto& f : validate_tbox(m)) findings.push_back(std::move(f));
    for (auto& f : check_abox(m, cc)) findings.push_back(std::move(f));

    size_t errors = 0;
    for (const auto& f : findings) errors += f.severity == Severity::Error;
    if (cfg.format == "json") {
        nlohmann::ordered_json j;
        j["schema"] = "1";
        j["errors"] = errors;
        j["warnings"] = findings.size() - errors;
        auto arr = nlohmann::ordered_json::array();
        for (const auto& f : findings) {
            std::vector<std::string> subjects;
            for (const auto& s : f.subjects) subjects.push_back(s.local);
            arr.push_back({{"severity", to_string(f.severity)},
                           {"code", f.code},
                           {"backend", f.backend},
                           {"subjects", subjects},
                           {"message", f.message}});
        }
        j["findings"] = std::move(arr);
        out << j.dump(2) << "\n";
    } else {
        bool color = color_enabled(out);
        for (const auto& f : findings) out << colored(f, color) << "\n";
        out << errors << " error(s), " << findings.size() - errors << " warning(s)\n";
    }
    return errors ? exit_code::findings : exit_code::ok;
}

int cmd_emit(const RunConfig& cfg, std::ostream& out) {
    OntologyModel m = load(cfg);
    std::vector<EvolutionOp> ops;
    if (!cfg.ops.empty()) ops = parse_ops(read_file(cfg.ops));

    Outputs files;
    const std::string base = stem(cfg);
    std::set<std::string> targets(cfg.targets.begin(), cfg.targets.end());
    if (targets.count("types")) files.emplace_back(base + ".types", types::emit_types(m).render());
    if (targets.count("oo")) {
        oo::ClassModel cm = oo::emit_class_model(m);
        auto instances = oo::instantiate(cm, m);
        files.emplace_back(base + ".oo.json", oo::to_json(cm, instances));
        files.emplace_back(base + ".java.txt", oo::render_skeleton(cm));
    }
    if (targets.count("sql")) {
        auto ddl = sql::emit_ddl(m);
        auto db = sql::populate(m, ddl.schema);
        std::string text = ddl.ddl + "\n-- rows\n" + sql::render_inserts(db, ddl.schema);
        for (const auto& op : ops) {
            text += "\n-- " + to_string(op) + "\n";
            text += sql::emit_inconsistency_query(op, m) + ";\n";
            text += sql::emit_evolution_constraints(op, m) + ";\n";
        }
        files.emplace_back(base + ".sql", text);
    }
    write_outputs(cfg, files);
    for (const auto& f : files) out << "wrote " << (fs::path(cfg.out_dir) / f.first).string() << "\n";
    return exit_code::ok;
}

std::string set_text(const std::set<std::string>& s) {
    std::string out = "{";
    for (auto it = s.begin(); it != s.end(); ++it) out += (it == s.begin() ? "" : ", ") + *it;
    return out + "}";
}

int cmd_evolve(const RunConfig& cfg, std::ostream& out) {
    OntologyModel m = load(cfg);
    auto ops = parse_ops(read_file(cfg.ops));
    EvolutionReport report = detect(m, ops);

    const std::string json = to_json(report);
    const std::string base = stem(cfg);
    write_outputs(cfg, {{base + ".report.json", json}, {base + ".evolved.types", types::emit_types(report.final_model).render()}});

    if (cfg.format == "json") {
        out << json;
    } else {
        for (const auto& r : report.ops) {
            out << to_string(r.op) << "\n";
            for (const char* b : backend_names) out << "  " << b << ": " << set_text(r.backends.at(b)) << "\n";
            out << "  agreement: " << (r.agreement ? "yes" : "no") << "\n";
            out << "  query: " << r.sql_query << "\n";
        }
    }
    return evolve_exit_code(report);
}

}  // namespace

int evolve_exit_code(const EvolutionReport& report) {
    if (!report.agreement()) return exit_code::disagreement;
    return report.any_inconsistent() ? exit_code::findings : exit_code::ok;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Compile an OWL/N3 ontology into a type system, a class model and a relational schema",
                 "onto-multirep"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_input = [&](CLI::App* sub) {
        sub->add_option("input", cfg.input, "Turtle file")->required();
    };
    auto add_model_flags = [&](CLI::App* sub) {
        auto* strict = sub->add_flag("--strict", cfg.strict, "Closed world: every fact needs a declared class (default)");
        sub->add_flag("--infer", cfg.infer, "Add the types implied by domains and ranges first")->excludes(strict);
    };

    auto* parse = app.add_subcommand("parse", "Print the canonical triples");
    add_input(parse);
    parse->add_flag("--save", cfg.save, "Write <stem>.ttl under --out instead of printing");
    parse->add_option("--out", cfg.out_dir, "Output directory");

    auto* check = app.add_subcommand("check", "Check the ontology and its facts");
    add_input(check);
    add_model_flags(check);
    check->add_option("--restriction-severity", cfg.restriction_severity, "Severity of a missing someValuesFrom value")
        ->check(CLI::IsMember({"warning", "error"}));
    check->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));

    auto* emit = app.add_subcommand("emit", "Write the selected views");
    add_input(emit);
    add_model_flags(emit);
    emit->add_option("--target", cfg.targets, "types, oo or sql (repeatable)")
        ->required()
        ->allow_extra_args(false)
        ->check(CLI::IsMember({"types", "oo", "sql"}));
    emit->add_option("--ops", cfg.ops, "Evolution ops whose queries go into the SQL file");
    emit->add_option("--out", cfg.out_dir, "Output directory");

    auto* evolve = app.add_subcommand("evolve", "Find the individuals each evolution op makes inconsistent");
    add_input(evolve);
    add_model_flags(evolve);
    evolve->add_option("--ops", cfg.ops, "Evolution ops file")->required();
    evolve->add_option("--out", cfg.out_dir, "Output directory");
    evolve->add_option("--format", cfg.format)->check(CLI::IsMember({"text", "json"}));

    std::vector<std::string> argv_store{"onto-multirep"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_code::usage;
    }

    try {
        if (parse->parsed()) return cmd_parse(cfg, out);
        if (check->parsed()) return cmd_check(cfg, out);
        if (emit->parsed()) return cmd_emit(cfg, out);
        return cmd_evolve(cfg, out);
    } catch (const SyntaxError& e) {
        err << cfg.input << ":" << e.line() << ":" << e.col() << ": " << e.what() << "\n";
        return exit_code::input;
    } catch (const OpSyntaxError& e) {
        err << cfg.ops << ":" << e.line() << ": " << e.what() << "\n";
        return exit_code::input;
    } catch (const InputError& e) {
        err << e.what() << "\n";
        return exit_code::input;
    } catch (const UnknownPrefix& e) {
        err << cfg.input << ": " << e.what() << "\n";
        return exit_code::input;
    } catch (const ModelError& e) {
        err << cfg.input << ": " << e.what() << "\n";
        return exit_code::input;
    } catch (const UnknownEntity& e) {
        err << cfg.ops << ": " << e.what() << "\n";
        return exit_code::input;
    } catch (const sql::PopulationError& e) {
        err << cfg.input << ": facts do not fit the schema: " << e.what() << "\n";
        return exit_code::input;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return exit_code::internal;
    }
}

}  // namespace ontorep::cli
