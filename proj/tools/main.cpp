#include <CLI11.hpp>

#include "hk/dsl.hpp"
#include "hk/session.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return buf.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_text(const std::string& text, const hk::SessionConfig& cfg, bool json) {
    hk::SessionAst ast;
    try {
        ast = hk::parse_session(text);
    } catch (const hk::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    }
    hk::SessionResult result = hk::run_session(ast, cfg);
    std::cout << (json ? hk::render_json(result) : hk::render_text(result));
    return result.exit_code;
}

struct CommonFlags {
    bool json = false;
    hk::SessionConfig cfg;

    void attach(CLI::App* cmd) {
        cmd->add_flag("--json", json, "emit the JSON report instead of text");
        cmd->add_option("--arity", cfg.arity, "closure sweep cap")->check(CLI::Range(0, 16));
        cmd->add_option("--degree", cfg.degree, "spanning-monomial degree cap")
            ->check(CLI::Range(0, 8));
        cmd->add_option("--jobs", cfg.jobs, "worker threads (0 = runtime default)")
            ->check(CLI::Range(0, 256));
        cmd->add_option("--sc", cfg.structure_constants,
                        "structure-constants JSON for `lie` commands");
    }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact calculus of scaling structures on graded charts"};
    app.require_subcommand(1);

    std::string file = "-";
    std::string lie_sub;
    bool show_ast = false;
    CommonFlags run_flags, parse_flags, lie_flags;
    CommonFlags focus_flags[4];
    const char* focus_heads[4] = {"check", "bracket", "jacobiator", "bv"};

    CLI::App* cmd_run = app.add_subcommand("run", "execute a session file");
    cmd_run->add_option("file", file, "session file ('-' for stdin)")->required();
    run_flags.attach(cmd_run);

    CLI::App* cmd_parse = app.add_subcommand("parse", "parse a session file without running it");
    cmd_parse->add_option("file", file, "session file ('-' for stdin)")->required();
    cmd_parse->add_flag("--ast", show_ast, "print the statement tree");

    CLI::App* focus_cmds[4];
    for (int i = 0; i < 4; ++i) {
        focus_cmds[i] = app.add_subcommand(
            focus_heads[i], std::string("run a session, reporting only `") + focus_heads[i] +
                                "` commands");
        focus_cmds[i]->add_option("file", file, "session file ('-' for stdin)")->required();
        focus_flags[i].attach(focus_cmds[i]);
    }

    CLI::App* cmd_lie = app.add_subcommand("lie", "run one built-in construction");
    cmd_lie->add_option("sub", lie_sub, "jacobi | killing | cocycle3 | jacobi4 | algebroid")
        ->required()
        ->check(CLI::IsMember({"jacobi", "killing", "cocycle3", "jacobi4", "algebroid"}));
    lie_flags.attach(cmd_lie);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) return run_text(read_input(file), run_flags.cfg, run_flags.json);
        if (cmd_parse->parsed()) {
            try {
                hk::SessionAst ast = hk::parse_session(read_input(file));
                if (show_ast) std::cout << hk::ast_str(ast);
                return 0;
            } catch (const hk::ParseError& e) {
                std::cerr << "parse error: " << e.what() << "\n";
                return 2;
            }
        }
        for (int i = 0; i < 4; ++i)
            if (focus_cmds[i]->parsed()) {
                focus_flags[i].cfg.only = focus_heads[i];
                return run_text(read_input(file), focus_flags[i].cfg, focus_flags[i].json);
            }
        if (cmd_lie->parsed())
            return run_text("lie " + lie_sub + ";", lie_flags.cfg, lie_flags.json);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
