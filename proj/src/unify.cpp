#include "metta/unify.hpp"

namespace metta {

Atom walk(const Atom& a, const Bindings& b) {
    Atom cur = a;
    while (cur.is_variable()) {
        const Atom* bound = b.lookup(var_key(cur.as_variable()));
        if (!bound) break;
        cur = *bound;
    }
    return cur;
}

bool occurs(const VarKey& v, const Atom& t, const Bindings& b) {
    Atom w = walk(t, b);
    if (w.is_variable()) return var_key(w.as_variable()) == v;
    if (!w.is_expression()) return false;
    for (const auto& c : w.children())
        if (occurs(v, c, b)) return true;
    return false;
}

namespace {

bool unify_rec(const Atom& a, const Atom& b, Bindings& s) {
    Atom x = walk(a, s);
    Atom y = walk(b, s);

    if (x.is_variable() && y.is_variable()) {
        VarKey kx = var_key(x.as_variable());
        VarKey ky = var_key(y.as_variable());
        if (kx == ky) return true;
        // Link the two variables; the greater key points at the lesser
        // so caller-side names stay the representatives.
        if (ky < kx)
            s.bind(kx, y);
        else
            s.bind(ky, x);
        return true;
    }
    if (x.is_variable()) {
        VarKey k = var_key(x.as_variable());
        if (occurs(k, y, s)) return false;
        s.bind(k, y);
        return true;
    }
    if (y.is_variable()) {
        VarKey k = var_key(y.as_variable());
        if (occurs(k, x, s)) return false;
        s.bind(k, x);
        return true;
    }

    if (x.data().index() != y.data().index()) return false;
    if (x.is_symbol()) return x.as_symbol().name == y.as_symbol().name;
    if (x.is_grounded()) return grounded_equal(x.as_grounded().value, y.as_grounded().value);

    const auto& cx = x.children();
    const auto& cy = y.children();
    if (cx.size() != cy.size()) return false;
    for (std::size_t i = 0; i < cx.size(); ++i)
        if (!unify_rec(cx[i], cy[i], s)) return false;
    return true;
}

}  // namespace

std::optional<Bindings> unify(const Atom& a, const Atom& b, const Bindings& seed) {
    Bindings s = seed;
    if (!unify_rec(a, b, s)) return std::nullopt;
    return s;
}

Atom apply_bindings(const Atom& a, const Bindings& b) {
    if (b.empty()) return a;
    if (a.is_variable()) {
        Atom w = walk(a, b);
        if (w.is_variable()) return w;
        return apply_bindings(w, b);
    }
    if (!a.is_expression()) return a;
    bool changed = false;
    std::vector<Atom> out;
    out.reserve(a.children().size());
    for (const auto& c : a.children()) {
        Atom r = apply_bindings(c, b);
        if (!r.same_node(c)) changed = true;
        out.push_back(std::move(r));
    }
    if (!changed) return a;
    return Atom::expr(std::move(out));
}

Atom fresh_rename(const Atom& a, std::uint32_t generation) {
    if (a.is_variable()) {
        const auto& v = a.as_variable();
        if (v.scope == generation) return a;
        return Atom::var(v.name, generation);
    }
    if (!a.is_expression()) return a;
    bool changed = false;
    std::vector<Atom> out;
    out.reserve(a.children().size());
    for (const auto& c : a.children()) {
        Atom r = fresh_rename(c, generation);
        if (!r.same_node(c)) changed = true;
        out.push_back(std::move(r));
    }
    if (!changed) return a;
    return Atom::expr(std::move(out));
}

}  // namespace metta
