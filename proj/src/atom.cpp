#include "metta/atom.hpp"

#include <charconv>
#include <cmath>

namespace metta {

Atom Atom::sym(std::string name) { return Atom(Symbol{std::move(name)}); }

Atom Atom::var(std::string name, std::uint32_t scope) {
    return Atom(Variable{std::move(name), scope});
}

Atom Atom::integer(std::int64_t v) { return Atom(Grounded{GroundedValue{v}}); }

Atom Atom::floating(double v) { return Atom(Grounded{GroundedValue{v}}); }

Atom Atom::text(std::string v) { return Atom(Grounded{GroundedValue{std::move(v)}}); }

Atom Atom::space_ref(AtomSpace* space, std::string name) {
    return Atom(Grounded{GroundedValue{SpaceRef{space, std::move(name)}}});
}

Atom Atom::exec(ExecFn fn) { return Atom(Grounded{GroundedValue{std::move(fn)}}); }

Atom Atom::expr(std::vector<Atom> children) {
    return Atom(Expression{std::move(children)});
}

bool Atom::is_error() const {
    if (!is_expression()) return false;
    const auto& cs = children();
    return !cs.empty() && cs.front().is_symbol("Error");
}

bool grounded_equal(const GroundedValue& a, const GroundedValue& b) {
    if (a.index() != b.index()) return false;
    switch (static_cast<GroundedKind>(a.index())) {
        case GroundedKind::Integer:
            return std::get<std::int64_t>(a) == std::get<std::int64_t>(b);
        case GroundedKind::Float:
            return std::get<double>(a) == std::get<double>(b);
        case GroundedKind::Text:
            return std::get<std::string>(a) == std::get<std::string>(b);
        case GroundedKind::Space:
            return std::get<SpaceRef>(a).space == std::get<SpaceRef>(b).space;
        case GroundedKind::Exec:
            return std::get<ExecFn>(a).name == std::get<ExecFn>(b).name;
    }
    return false;
}

bool atoms_equal(const Atom& a, const Atom& b) {
    if (a.same_node(b)) return true;
    if (a.data().index() != b.data().index()) return false;
    if (a.is_symbol()) return a.as_symbol().name == b.as_symbol().name;
    if (a.is_variable()) {
        const auto& va = a.as_variable();
        const auto& vb = b.as_variable();
        return va.name == vb.name && va.scope == vb.scope;
    }
    if (a.is_grounded()) return grounded_equal(a.as_grounded().value, b.as_grounded().value);
    const auto& ca = a.children();
    const auto& cb = b.children();
    if (ca.size() != cb.size()) return false;
    for (std::size_t i = 0; i < ca.size(); ++i)
        if (!atoms_equal(ca[i], cb[i])) return false;
    return true;
}

namespace {

std::string format_integer(std::int64_t v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Shortest round-trip form; always keeps a mark that this is a Float so
// 10.0 never prints the same as the integer 10.
std::string format_float(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    std::string s(buf, res.ptr);
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

std::string escape_text(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    out.push_back('"');
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void render_into(const Atom& a, std::string& out) {
    if (a.is_symbol()) {
        out += a.as_symbol().name;
    } else if (a.is_variable()) {
        out.push_back('$');
        out += a.as_variable().name;
    } else if (a.is_grounded()) {
        out += render_grounded(a.as_grounded().value);
    } else {
        out.push_back('(');
        const auto& cs = a.children();
        for (std::size_t i = 0; i < cs.size(); ++i) {
            if (i) out.push_back(' ');
            render_into(cs[i], out);
        }
        out.push_back(')');
    }
}

}  // namespace

std::string render_grounded(const GroundedValue& v) {
    switch (static_cast<GroundedKind>(v.index())) {
        case GroundedKind::Integer:
            return format_integer(std::get<std::int64_t>(v));
        case GroundedKind::Float:
            return format_float(std::get<double>(v));
        case GroundedKind::Text:
            return escape_text(std::get<std::string>(v));
        case GroundedKind::Space:
            return std::get<SpaceRef>(v).name;
        case GroundedKind::Exec:
            return std::get<ExecFn>(v).name;
    }
    return {};
}

std::string render(const Atom& a) {
    std::string out;
    render_into(a, out);
    return out;
}

bool contains_variable(const Atom& a) {
    if (a.is_variable()) return true;
    if (!a.is_expression()) return false;
    for (const auto& c : a.children())
        if (contains_variable(c)) return true;
    return false;
}

}  // namespace metta
