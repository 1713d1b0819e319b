#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include "test_support.hpp"

namespace {

struct CommandResult {
    int exit_code = -1;
    std::string output;
};

// Run a shell command capturing stdout (stderr folded in).
CommandResult run_command(const std::string& cmd) {
    CommandResult result;
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        result.output.append(buf.data(), n);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string cli() { return std::string(METTA_CLI_PATH); }

std::string corpus(const std::string& name) { return metta::test::corpus_path(name); }

std::string expected_text(const std::string& name) {
    return metta::test::read_file(corpus(name));
}

}  // namespace

TEST_CASE("metta run reproduces the golden outputs") {
    for (const char* name : {"robot", "socrates", "peano_add", "reverse_add", "fritz",
                             "plato", "humans", "vec_types", "self_mod"}) {
        auto r = run_command(cli() + " run " + corpus(std::string(name) + ".metta"));
        CHECK(r.exit_code == 0);
        CHECK(r.output == expected_text(std::string(name) + ".expected"));
    }
}

TEST_CASE("exit codes: missing file, parse error, error atom") {
    CHECK(run_command(cli() + " run /nonexistent/nope.metta").exit_code == 1);

    auto parse_err = run_command("echo '(unbalanced' > /tmp/metta_bad.metta && " + cli() +
                                 " run /tmp/metta_bad.metta");
    CHECK(parse_err.exit_code == 1);

    auto loop = run_command(cli() + " run " + corpus("loop.metta"));
    CHECK(loop.exit_code == 2);
    CHECK(loop.output == "[(Error (loop) StackOverflow)]\n");

    CHECK(run_command(cli() + " bogus-subcommand").exit_code == 1);
}

TEST_CASE("script output is stable across runs") {
    std::string cmd = cli() + " run " + corpus("fritz.metta");
    auto a = run_command(cmd);
    auto b = run_command(cmd);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    CHECK(a.output == expected_text("fritz.expected"));
}

TEST_CASE("--max-depth and METTA_MAX_DEPTH control the budget") {
    // The addition needs three chain steps; a budget of 2 cuts it off.
    auto shallow =
        run_command(cli() + " run " + corpus("peano_add.metta") + " --max-depth 2");
    CHECK(shallow.exit_code == 2);
    CHECK(shallow.output.find("StackOverflow") != std::string::npos);

    auto via_env =
        run_command("METTA_MAX_DEPTH=2 " + cli() + " run " + corpus("peano_add.metta"));
    CHECK(via_env.exit_code == 2);

    // An explicit flag wins over the environment.
    auto flag_wins = run_command("METTA_MAX_DEPTH=2 " + cli() + " run " +
                                 corpus("peano_add.metta") + " --max-depth 1000");
    CHECK(flag_wins.exit_code == 0);
}

TEST_CASE("--typecheck rejects ill-typed directives") {
    auto r = run_command("printf '(: f (-> Number Number))\\n! (f \"str\")\\n' > "
                         "/tmp/metta_tc.metta && " +
                         cli() + " run /tmp/metta_tc.metta --typecheck");
    CHECK(r.exit_code == 2);
    CHECK(r.output == "[(Error \"str\" Number)]\n");

    // Without the flag the directive simply stays unreduced, and an
    // undeclared argument is gradually accepted either way.
    auto ok = run_command(cli() + " run /tmp/metta_tc.metta");
    CHECK(ok.exit_code == 0);
    CHECK(ok.output == "[(f \"str\")]\n");
}

TEST_CASE("repl evaluates bare forms and honors meta-commands") {
    std::string input =
        ":add (Sam is a frog)\\n"
        "(match &self ($x is a frog) $x)\\n"
        "(+ 2 3)\\n"
        "! (+ 4 4)\\n"
        ":space\\n"
        ":quit\\n";
    auto r = run_command("printf '" + input + "' | " + cli() + " repl --quiet");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "[Sam]\n[5]\n[8]\n(Sam is a frog)\n");
}

TEST_CASE("repl :load matches running the concatenated file") {
    auto loaded = run_command("printf ':load " + corpus("humans.metta") +
                              "\\n(match &self (is-a $x Human) $x)\\n:quit\\n' | " + cli() +
                              " repl --quiet");
    CHECK(loaded.exit_code == 0);
    CHECK(loaded.output == "[Plato, Socrates]\n[Plato, Socrates]\n");
}

TEST_CASE("repl reports parse errors and continues") {
    auto r = run_command("printf '(oops\\n(+ 1 1)\\n:quit\\n' | " + cli() + " repl --quiet");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("error") != std::string::npos);
    CHECK(r.output.find("[2]") != std::string::npos);
}
