#include "metta/types.hpp"

#include "metta/unify.hpp"

namespace metta {

namespace {

bool is_undefined(const Atom& a) { return a.is_symbol(kUndefinedType); }

// An arrow type (-> P1 .. Pn R) with at least one parameter slot.
bool is_arrow(const Atom& a) {
    return a.is_expression() && a.children().size() >= 2 &&
           a.children().front().is_symbol("->");
}

// The dynamic type unifies with anything: each %Undefined% occurrence
// is replaced by a fresh variable before ordinary unification.
Atom undefined_to_fresh(const AtomSpace& space, const Atom& a) {
    if (is_undefined(a)) return Atom::var("_dyn", space.fresh_generation());
    if (!a.is_expression()) return a;
    std::vector<Atom> out;
    out.reserve(a.children().size());
    for (const auto& c : a.children()) out.push_back(undefined_to_fresh(space, c));
    return Atom::expr(std::move(out));
}

std::optional<Bindings> unify_types(const AtomSpace& space, const Atom& expected,
                                    const Atom& actual, const Bindings& seed) {
    return unify(undefined_to_fresh(space, expected), undefined_to_fresh(space, actual), seed);
}

// Declared `(: subject T)` entries, freshly renamed per lookup by the
// query machinery itself.
std::vector<Atom> declared_types(const AtomSpace& space, const Atom& subject) {
    Atom tvar = Atom::var("t", space.fresh_generation());
    Atom pattern = Atom::expr({Atom::sym(":"), subject, tvar});
    std::vector<Atom> out;
    for (const Bindings& b : space.query(pattern)) {
        Atom t = apply_bindings(tvar, b);
        if (t == tvar) continue;  // (: x $y) declarations with a free type
        out.push_back(std::move(t));
    }
    return out;
}

// Enumerate all consistent (arrow, argument-type combination) typings
// of an application, left-to-right deterministic. `sink` receives the
// substituted result type.
void arrow_typings(const AtomSpace& space, const std::vector<Atom>& arrows,
                   const std::vector<std::vector<Atom>>& arg_types,
                   const std::function<void(Atom)>& sink) {
    std::size_t n = arg_types.size();
    for (const Atom& arrow : arrows) {
        const auto& cs = arrow.children();  // [-> P1 .. Pn R]
        if (cs.size() != n + 2) continue;
        // Depth-first over argument type combinations.
        std::vector<std::size_t> pick(n, 0);
        std::function<void(std::size_t, Bindings)> step = [&](std::size_t i, Bindings b) {
            if (i == n) {
                sink(apply_bindings(cs.back(), b));
                return;
            }
            for (const Atom& t : arg_types[i]) {
                auto u = unify_types(space, cs[i + 1], t, b);
                if (u) step(i + 1, std::move(*u));
            }
        };
        step(0, Bindings{});
    }
}

}  // namespace

std::vector<Atom> type_of(const AtomSpace& space, const Atom& a) {
    if (a.is_variable()) return {undefined_type()};
    if (a.is_grounded()) {
        switch (static_cast<GroundedKind>(a.as_grounded().value.index())) {
            case GroundedKind::Integer:
            case GroundedKind::Float:
                return {Atom::sym("Number")};
            case GroundedKind::Text:
                return {Atom::sym("String")};
            default:
                return {undefined_type()};
        }
    }
    if (a.is_symbol()) {
        std::vector<Atom> declared = declared_types(space, a);
        if (!declared.empty()) return declared;
        if (a.is_symbol("True") || a.is_symbol("False")) return {Atom::sym("Bool")};
        return {undefined_type()};
    }

    // Expression. The empty tuple and non-applications are dynamic.
    const auto& cs = a.children();
    if (cs.empty()) return {undefined_type()};

    std::vector<Atom> head_types = type_of(space, cs.front());
    std::vector<Atom> arrows;
    for (const Atom& t : head_types)
        if (is_arrow(t)) arrows.push_back(t);
    if (arrows.empty()) return {undefined_type()};

    std::vector<std::vector<Atom>> arg_types;
    for (std::size_t i = 1; i < cs.size(); ++i) arg_types.push_back(type_of(space, cs[i]));

    std::vector<Atom> out;
    arrow_typings(space, arrows, arg_types, [&](Atom t) { out.push_back(std::move(t)); });
    return out;
}

namespace {

// Re-derive a readable diagnosis from the first declared arrow: walk
// the arguments greedily and report the first parameter slot that
// admits none of the argument's types.
TypeError diagnose(const AtomSpace& space, const Atom& app, const Atom& arrow,
                   const std::vector<std::vector<Atom>>& arg_types) {
    const auto& cs = arrow.children();
    const auto& args = app.children();
    if (cs.size() != arg_types.size() + 2)
        return TypeError{app, arrow, undefined_type()};
    Bindings b;
    for (std::size_t i = 0; i < arg_types.size(); ++i) {
        bool ok = false;
        for (const Atom& t : arg_types[i]) {
            auto u = unify_types(space, cs[i + 1], t, b);
            if (u) {
                b = std::move(*u);
                ok = true;
                break;
            }
        }
        if (!ok)
            return TypeError{args[i + 1], apply_bindings(cs[i + 1], b),
                             arg_types[i].empty() ? undefined_type() : arg_types[i].front()};
    }
    return TypeError{app, arrow, undefined_type()};
}

std::optional<TypeError> check_rec(const AtomSpace& space, const Atom& a) {
    if (!a.is_expression()) return std::nullopt;
    // Innermost first.
    for (const Atom& c : a.children()) {
        auto err = check_rec(space, c);
        if (err) return err;
    }
    const auto& cs = a.children();
    if (cs.empty()) return std::nullopt;

    std::vector<Atom> head_types = type_of(space, cs.front());
    std::vector<Atom> arrows;
    for (const Atom& t : head_types)
        if (is_arrow(t)) arrows.push_back(t);
    if (arrows.empty()) return std::nullopt;  // not a typed application

    std::vector<std::vector<Atom>> arg_types;
    for (std::size_t i = 1; i < cs.size(); ++i) arg_types.push_back(type_of(space, cs[i]));

    bool any = false;
    arrow_typings(space, arrows, arg_types, [&](Atom) { any = true; });
    if (any) return std::nullopt;
    return diagnose(space, a, arrows.front(), arg_types);
}

}  // namespace

std::optional<TypeError> check_atom(const AtomSpace& space, const Atom& a) {
    return check_rec(space, a);
}

}  // namespace metta
