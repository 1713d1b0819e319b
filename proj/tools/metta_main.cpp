#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "metta/interpreter.hpp"
#include "metta/reader.hpp"
#include "metta/space.hpp"
#include "metta/stdlib.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;  // usage / parse / IO errors
constexpr int kExitErrorAtom = 2;

struct Options {
    int max_depth = 1000;
    bool typecheck = false;
    bool quiet = false;
};

bool any_error_atom(const std::vector<metta::Interpreter::DirectiveOutput>& outputs) {
    for (const auto& d : outputs)
        for (const auto& a : d.results)
            if (a.is_error()) return true;
    return false;
}

int cmd_run(const std::string& path, const Options& opt) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "metta: cannot open file: " << path << "\n";
        return kExitUsage;
    }
    std::stringstream buf;
    buf << in.rdbuf();

    std::vector<metta::ProgramItem> items;
    try {
        items = metta::parse_program(buf.str());
    } catch (const metta::ParseError& e) {
        std::cerr << "metta: " << path << ": " << e.what() << "\n";
        return kExitUsage;
    }

    metta::AtomSpace space;
    metta::StdEnv env = metta::StdEnv::standard(space, std::cout);
    metta::Interpreter interp(space, env,
                              metta::EvalConfig{opt.max_depth, opt.typecheck});
    auto outputs = interp.run_program(items);
    for (const auto& d : outputs) std::cout << metta::format_results(d.results) << "\n";
    return any_error_atom(outputs) ? kExitErrorAtom : kExitOk;
}

int cmd_repl(const Options& opt) {
    metta::AtomSpace space;
    metta::StdEnv env = metta::StdEnv::standard(space, std::cout);
    metta::Interpreter interp(space, env,
                              metta::EvalConfig{opt.max_depth, opt.typecheck});

    if (!opt.quiet) {
        std::cout << "metta repl — enter a form to evaluate it.\n"
                  << "Commands: :add <form>  :load <file>  :space  :quit\n";
    }

    std::string line;
    while (true) {
        if (!opt.quiet) std::cout << "metta> " << std::flush;
        if (!std::getline(std::cin, line)) break;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        std::string trimmed = line.substr(start);

        try {
            if (trimmed[0] == ':') {
                std::istringstream cmd(trimmed);
                std::string word;
                cmd >> word;
                if (word == ":quit") break;
                if (word == ":space") {
                    std::cout << space.dump();
                } else if (word == ":add") {
                    std::string rest;
                    std::getline(cmd, rest);
                    space.add(metta::parse_atom(rest));
                } else if (word == ":load") {
                    std::string path;
                    cmd >> path;
                    std::ifstream in(path, std::ios::binary);
                    if (!in) {
                        std::cout << "error: cannot open file: " << path << "\n";
                        continue;
                    }
                    std::stringstream buf;
                    buf << in.rdbuf();
                    auto outputs = interp.run_program(metta::parse_program(buf.str()));
                    for (const auto& d : outputs)
                        std::cout << metta::format_results(d.results) << "\n";
                } else {
                    std::cout << "error: unknown command " << word << "\n";
                }
                continue;
            }

            // Bare input is a directive; a leading `!` is accepted and
            // equivalent.
            for (const auto& item : metta::parse_program(trimmed)) {
                std::vector<metta::Atom> results;
                for (auto& r : interp.run_program({metta::ProgramItem{item.atom, true, {}}}))
                    results = std::move(r.results);
                std::cout << metta::format_results(results) << "\n";
            }
        } catch (const metta::ParseError& e) {
            std::cout << "error: " << e.what() << "\n";
        }
    }
    return kExitOk;
}

int env_max_depth() {
    if (const char* v = std::getenv("METTA_MAX_DEPTH")) {
        int parsed = std::atoi(v);
        if (parsed >= 1) return parsed;
    }
    return 1000;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MeTTa interpreter"};
    app.require_subcommand(1);

    Options opt;
    opt.max_depth = env_max_depth();

    std::string file;
    CLI::App* run = app.add_subcommand("run", "Run a .metta script");
    run->add_option("file", file, "script path")->required();
    CLI::App* repl = app.add_subcommand("repl", "Interactive session");

    for (CLI::App* sub : {run, repl}) {
        sub->add_option("--max-depth", opt.max_depth, "evaluation depth budget")
            ->check(CLI::PositiveNumber);
        sub->add_flag("--typecheck", opt.typecheck, "check directives against declared types");
        sub->add_flag("--quiet", opt.quiet, "suppress banner and prompt");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (run->parsed()) return cmd_run(file, opt);
    return cmd_repl(opt);
}
