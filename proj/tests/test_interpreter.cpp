#include <doctest.h>

#include <chrono>

#include "test_support.hpp"

using namespace metta;
using metta::test::AtomGen;
using metta::test::eval_in;
using metta::test::peano;

namespace {

Atom P(const char* src) { return parse_atom(src); }

const char* kPeano =
    "(= (add (S $x) $y) (add $x (S $y)))\n"
    "(= (add Z $x) $x)\n";

const char* kFritz =
    "(= (croaks Fritz) True)\n"
    "(= (eat_flies Fritz) True)\n"
    "(= (frog $x) (and (croaks $x) (eat_flies $x)))\n"
    "(= (green $x) (frog $x))\n";

}  // namespace

TEST_CASE("peano addition follows the paper trace") {
    CHECK(eval_in(kPeano, "(add (S Z) (S Z))") == std::vector<std::string>{"(S (S Z))"});
    // The intermediate form of the trace reduces the same way.
    CHECK(eval_in(kPeano, "(add Z (S (S Z)))") == std::vector<std::string>{"(S (S Z))"});
    // Unmatched expressions are normal forms.
    CHECK(eval_in(kPeano, "(S (S Z))") == std::vector<std::string>{"(S (S Z))"});
}

TEST_CASE("peano oracle on a small grid") {
    AtomSpace space;
    StdEnv env = StdEnv::standard(space);
    Interpreter interp(space, env);
    for (const auto& item : parse_program(kPeano)) space.add(item.atom);
    for (int m = 0; m <= 4; ++m)
        for (int n = 0; n <= 4; ++n) {
            Atom call = Atom::expr({Atom::sym("add"), peano(m), peano(n)});
            auto rs = interp.evaluate(call);
            REQUIRE(rs.size() == 1);
            CHECK(rs[0].atom == peano(m + n));
        }
}

TEST_CASE("fritz: functional, unreduced and logic-style answers") {
    CHECK(eval_in(kFritz, "(green Fritz)") == std::vector<std::string>{"True"});
    CHECK(eval_in(kFritz, "(green Sam)") ==
          std::vector<std::string>{"(and (croaks Sam) (eat_flies Sam))"});
    CHECK(eval_in(kFritz, "(if (green $x) $x (no-answer))") ==
          std::vector<std::string>{"Fritz"});
}

TEST_CASE("evaluation through match and equality chaining") {
    CHECK(eval_in("(Implies (Human $x) (Mortal $x))\n",
                  "(match &self (Implies (Human Socrates) $y) (Concluding $y))") ==
          std::vector<std::string>{"(Concluding (Mortal Socrates))"});
    // match results are evaluated further.
    CHECK(eval_in("(source 7)\n(= (bump $n) (+ $n 1))\n",
                  "(match &self (source $n) (bump $n))") == std::vector<std::string>{"8"});
}

TEST_CASE("symbols evaluate through equality queries") {
    CHECK(eval_in("(= x 5)\n", "x") == std::vector<std::string>{"5"});
    CHECK(eval_in("(= x 5)\n", "(+ x 2)") == std::vector<std::string>{"7"});
    CHECK(eval_in("", "plain-symbol") == std::vector<std::string>{"plain-symbol"});
}

TEST_CASE("non-determinism multiplies through") {
    CHECK(eval_in("(= (coin) Heads)\n(= (coin) Tails)\n", "(coin)") ==
          std::vector<std::string>{"Heads", "Tails"});
    // Cartesian product of child results, left-to-right order.
    CHECK(eval_in("(= (coin) Heads)\n(= (coin) Tails)\n", "(pair (coin) (coin))") ==
          std::vector<std::string>{"(pair Heads Heads)", "(pair Heads Tails)",
                                   "(pair Tails Heads)", "(pair Tails Tails)"});
}

TEST_CASE("grounded atoms and variables evaluate to themselves") {
    CHECK(eval_in("", "42") == std::vector<std::string>{"42"});
    CHECK(eval_in("", "$free") == std::vector<std::string>{"$free"});
    CHECK(eval_in("", "()") == std::vector<std::string>{"()"});
    CHECK(eval_in("", "\"text\"") == std::vector<std::string>{"\"text\""});
}

TEST_CASE("divergence is cut by the depth budget") {
    auto t0 = std::chrono::steady_clock::now();
    auto rs = eval_in("(= (loop) (loop))\n", "(loop)");
    auto elapsed = std::chrono::steady_clock::now() - t0;
    REQUIRE(rs.size() == 1);
    CHECK(rs[0] == "(Error (loop) StackOverflow)");
    CHECK(std::chrono::duration_cast<std::chrono::seconds>(elapsed).count() < 5);

    // A growing loop also surfaces a single error result.
    auto grow = eval_in("(= (f) (g (f)))\n", "(f)", EvalConfig{60, false});
    REQUIRE(grow.size() == 1);
    CHECK(grow[0].find("StackOverflow") != std::string::npos);
}

TEST_CASE("error atoms are never evaluated further") {
    CHECK(eval_in("(= (Error a b) Gotcha)\n", "(Error a b)") ==
          std::vector<std::string>{"(Error a b)"});
}

TEST_CASE("run_program stores facts before later directives") {
    auto lines = metta::test::run_source("(n 1)\n! (match &self (n $x) $x)\n(n 2)\n"
                                         "! (match &self (n $x) $x)\n");
    CHECK(lines == std::vector<std::string>{"[1]", "[1, 2]"});
}

TEST_CASE("run_program keeps going after an error result") {
    auto lines = metta::test::run_source("(= (loop) (loop))\n! (loop)\n! (+ 1 2)\n");
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "[(Error (loop) StackOverflow)]");
    CHECK(lines[1] == "[3]");
}

TEST_CASE("determinism: identical runs, identical output") {
    std::string src = metta::test::read_file(metta::test::corpus_path("fritz.metta"));
    CHECK(metta::test::run_source(src) == metta::test::run_source(src));
}

TEST_CASE("typechecked directives fail before evaluation") {
    std::string decls =
        "(: Nat Type)\n(: Z Nat)\n(: S (-> Nat Nat))\n"
        "(: Vec (-> $t Nat Type))\n(: Cons (-> $t (Vec $t $x) (Vec $t (S $x))))\n"
        "(: Nil (Vec $t Z))\n";
    auto lines = metta::test::run_source(decls + "! (Cons 0 0)\n! (Cons 0 Nil)\n",
                                         EvalConfig{1000, true});
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "[(Error 0 (Vec Number $x))]");
    CHECK(lines[1] == "[(Cons 0 Nil)]");
}

namespace {

// Rule shapes for the idempotence property: symbol-headed left sides,
// right sides rewritten into a disjoint constructor alphabet so chains
// stay short and the result count stays bounded.
Atom constructorize(const Atom& a) {
    if (a.is_symbol()) return Atom::sym("k_" + a.as_symbol().name);
    if (!a.is_expression()) return a;
    std::vector<Atom> out;
    for (const Atom& c : a.children()) out.push_back(constructorize(c));
    return Atom::expr(std::move(out));
}

}  // namespace

TEST_CASE("normal-form idempotence on random programs") {
    AtomGen gen(0x1DEA);
    int checked = 0;
    for (int rep = 0; rep < 120; ++rep) {
        AtomSpace space;
        StdEnv env = StdEnv::standard(space);
        Interpreter interp(space, env, EvalConfig{40, false});
        int rules = gen.pick(0, 6);
        for (int i = 0; i < rules; ++i) {
            std::vector<Atom> lhs{Atom::sym(gen.symbol_name())};
            int arity = gen.pick(0, 2);
            for (int k = 0; k < arity; ++k) lhs.push_back(gen.atom(1));
            space.add(Atom::expr(
                {Atom::sym("="), Atom::expr(std::move(lhs)), constructorize(gen.atom(2))}));
        }
        for (int i = 0; i < 4; ++i) {
            Atom start = gen.atom(2);
            for (const EvalResult& r : interp.evaluate(start)) {
                if (contains_variable(r.atom)) continue;
                auto again = interp.evaluate(r.atom);
                REQUIRE(again.size() == 1);
                CHECK(again[0].atom == r.atom);
                ++checked;
            }
        }
    }
    CHECK(checked > 200);
}
