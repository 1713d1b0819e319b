#include <doctest.h>

#include <map>

#include "test_support.hpp"

using namespace metta;
using metta::test::AtomGen;

namespace {

Atom abcde() {
    return Atom::expr({Atom::sym("A"), Atom::expr({Atom::sym("B"), Atom::sym("C"), Atom::sym("D")}),
                       Atom::sym("E")});
}

}  // namespace

TEST_CASE("structural equality") {
    Atom ab1 = Atom::expr({Atom::sym("A"), Atom::sym("B")});
    Atom ab2 = Atom::expr({Atom::sym("A"), Atom::sym("B")});
    CHECK(atoms_equal(ab1, ab2));

    Atom wide = abcde();
    Atom narrow = Atom::expr(
        {Atom::sym("A"), Atom::expr({Atom::sym("B"), Atom::sym("C")}), Atom::sym("E")});
    CHECK_FALSE(atoms_equal(wide, narrow));

    CHECK(atoms_equal(Atom::integer(10), Atom::integer(10)));
    CHECK_FALSE(atoms_equal(Atom::integer(10), Atom::floating(10.0)));
}

TEST_CASE("variables compare by name and scope") {
    CHECK(Atom::var("x") == Atom::var("x"));
    CHECK_FALSE(Atom::var("x") == Atom::var("x", 7));
    CHECK_FALSE(Atom::var("x") == Atom::var("y"));
    CHECK_FALSE(Atom::var("x") == Atom::sym("x"));
}

TEST_CASE("grounded equality by variant") {
    CHECK(atoms_equal(Atom::text("point"), Atom::text("point")));
    CHECK_FALSE(atoms_equal(Atom::text("10"), Atom::integer(10)));
    CHECK(atoms_equal(Atom::exec(ExecFn{"match", true, 3}), Atom::exec(ExecFn{"match", false, 0})));
    AtomSpace s1, s2;
    CHECK(atoms_equal(Atom::space_ref(&s1), Atom::space_ref(&s1)));
    CHECK_FALSE(atoms_equal(Atom::space_ref(&s1), Atom::space_ref(&s2)));
}

TEST_CASE("render canonical text") {
    CHECK(render(abcde()) == "(A (B C D) E)");
    CHECK(render(Atom::var("x")) == "$x");
    CHECK(render(Atom::var("x", 42)) == "$x");  // scope is hidden
    Atom point = Atom::expr(
        {Atom::text("point"), Atom::expr({Atom::integer(10), Atom::integer(10)})});
    CHECK(render(point) == "(\"point\" (10 10))");
    CHECK(render(Atom::expr({})) == "()");
    CHECK(render(Atom::floating(10.0)) == "10.0");
    CHECK(render(Atom::integer(-3)) == "-3");
    CHECK(render(Atom::text("a\"b\\c")) == "\"a\\\"b\\\\c\"");
}

TEST_CASE("equality is an equivalence relation") {
    AtomGen gen(0xA70);
    std::vector<Atom> pool;
    for (int i = 0; i < 60; ++i) pool.push_back(gen.atom(3));
    // Seed duplicates so symmetry/transitivity see positive cases.
    for (int i = 0; i < 20; ++i) pool.push_back(pool[gen.pick(0, 59)]);

    for (const Atom& a : pool) CHECK(atoms_equal(a, a));
    for (int i = 0; i < 400; ++i) {
        const Atom& a = pool[gen.pick(0, (int)pool.size() - 1)];
        const Atom& b = pool[gen.pick(0, (int)pool.size() - 1)];
        const Atom& c = pool[gen.pick(0, (int)pool.size() - 1)];
        CHECK(atoms_equal(a, b) == atoms_equal(b, a));
        if (atoms_equal(a, b) && atoms_equal(b, c)) CHECK(atoms_equal(a, c));
    }
}

TEST_CASE("render is injective on scope-zero atoms") {
    AtomGen gen(0xBEEF);
    std::map<std::string, Atom> by_render;
    for (int i = 0; i < 800; ++i) {
        Atom a = gen.atom(3);
        auto [it, inserted] = by_render.emplace(render(a), a);
        if (!inserted) CHECK(atoms_equal(it->second, a));
    }
}
