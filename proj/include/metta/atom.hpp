#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace metta {

class AtomSpace;

// Named host operation. Equality is by name; `lazy` ops receive their
// arguments unevaluated, eager ops receive evaluated arguments.
struct ExecFn {
    std::string name;
    bool lazy = false;
    int arity = 0;
};

// Handle to a live space (e.g. the program's own space, spelled &self).
// Identity is the pointer; `name` is only the printable form.
struct SpaceRef {
    AtomSpace* space = nullptr;
    std::string name = "&self";
};

// Host-level payloads an atom can wrap. Integer and Float are distinct
// variants with no implicit coercion.
using GroundedValue = std::variant<std::int64_t, double, std::string, SpaceRef, ExecFn>;

enum class GroundedKind { Integer = 0, Float, Text, Space, Exec };

// The universal term: symbol, variable, grounded value, or expression
// (ordered tuple of atoms). Atoms are immutable values; copies share
// structure and are safe to move across threads.
class Atom {
public:
    struct Symbol {
        std::string name;
    };
    // Variables carry a scope id so knowledge-base entries can be renamed
    // per query without gensym suffixes leaking into printed output.
    struct Variable {
        std::string name;
        std::uint32_t scope = 0;
    };
    struct Grounded {
        GroundedValue value;
    };
    struct Expression {
        std::vector<Atom> children;
    };
    using Data = std::variant<Symbol, Variable, Grounded, Expression>;

    Atom() : Atom(expr({})) {}

    static Atom sym(std::string name);
    static Atom var(std::string name, std::uint32_t scope = 0);
    static Atom integer(std::int64_t v);
    static Atom floating(double v);
    static Atom text(std::string v);
    static Atom space_ref(AtomSpace* space, std::string name = "&self");
    static Atom exec(ExecFn fn);
    static Atom expr(std::vector<Atom> children);

    const Data& data() const { return *data_; }

    bool is_symbol() const { return std::holds_alternative<Symbol>(*data_); }
    bool is_variable() const { return std::holds_alternative<Variable>(*data_); }
    bool is_grounded() const { return std::holds_alternative<Grounded>(*data_); }
    bool is_expression() const { return std::holds_alternative<Expression>(*data_); }

    const Symbol& as_symbol() const { return std::get<Symbol>(*data_); }
    const Variable& as_variable() const { return std::get<Variable>(*data_); }
    const Grounded& as_grounded() const { return std::get<Grounded>(*data_); }
    const Expression& as_expression() const { return std::get<Expression>(*data_); }

    bool is_symbol(std::string_view name) const {
        return is_symbol() && as_symbol().name == name;
    }
    const std::vector<Atom>& children() const { return as_expression().children; }

    // True for expressions headed by the reserved symbol Error.
    bool is_error() const;

    // Raw identity shortcut used by the structural comparison.
    bool same_node(const Atom& other) const { return data_ == other.data_; }

private:
    explicit Atom(Data d) : data_(std::make_shared<const Data>(std::move(d))) {}
    std::shared_ptr<const Data> data_;
};

// Structural equality. Variables compare equal iff name and scope both
// match; grounded values by variant and value (ExecFn by name, SpaceRef
// by handle identity).
bool atoms_equal(const Atom& a, const Atom& b);

inline bool operator==(const Atom& a, const Atom& b) { return atoms_equal(a, b); }
inline bool operator!=(const Atom& a, const Atom& b) { return !atoms_equal(a, b); }

bool grounded_equal(const GroundedValue& a, const GroundedValue& b);

// Canonical text form: variables with a leading `$` (scope hidden),
// expressions as space-separated children in parentheses, text in
// double quotes with `\"` and `\\` escaped.
std::string render(const Atom& a);

std::string render_grounded(const GroundedValue& v);

// Does the atom contain any variable at all?
bool contains_variable(const Atom& a);

}  // namespace metta
