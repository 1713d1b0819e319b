#include "metta/stdlib.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <variant>

#include "metta/types.hpp"
#include "metta/unify.hpp"

namespace metta {

const StdOp* StdEnv::find(std::string_view name) const {
    auto it = ops_.find(name);
    return it == ops_.end() ? nullptr : &it->second;
}

void StdEnv::register_op(StdOp op) {
    std::string name = op.meta.name;
    ops_.insert_or_assign(std::move(name), std::move(op));
}

AtomSpace* StdEnv::resolve_space(const Atom& a) const {
    if (a.is_symbol("&self")) return self_;
    if (a.is_grounded())
        if (const SpaceRef* ref = std::get_if<SpaceRef>(&a.as_grounded().value))
            return ref->space;
    return nullptr;
}

namespace {

using Number = std::variant<std::int64_t, double>;

std::optional<Number> as_number(const Atom& a) {
    if (!a.is_grounded()) return std::nullopt;
    const GroundedValue& v = a.as_grounded().value;
    if (const auto* i = std::get_if<std::int64_t>(&v)) return Number{*i};
    if (const auto* d = std::get_if<double>(&v)) return Number{*d};
    return std::nullopt;
}

double to_double(const Number& n) {
    return std::holds_alternative<std::int64_t>(n)
               ? static_cast<double>(std::get<std::int64_t>(n))
               : std::get<double>(n);
}

// Wrapping int64 arithmetic (well-defined on overflow).
std::int64_t int_arith(char op, std::int64_t a, std::int64_t b) {
    auto ua = static_cast<std::uint64_t>(a);
    auto ub = static_cast<std::uint64_t>(b);
    std::uint64_t r = 0;
    switch (op) {
        case '+': r = ua + ub; break;
        case '-': r = ua - ub; break;
        case '*': r = ua * ub; break;
    }
    return static_cast<std::int64_t>(r);
}

ExecOutcome unreduced() { return ExecOutcome{false, {}}; }

ExecOutcome single(Atom a, Bindings b, bool reduce = true) {
    return ExecOutcome{true, {{std::move(a), std::move(b), reduce}}};
}

ExecOutcome op_arith(char which, const std::vector<Atom>& args, const Atom& candidate,
                     const Bindings& b) {
    auto x = as_number(args[0]);
    auto y = as_number(args[1]);
    if (!x || !y) return unreduced();
    bool both_int =
        std::holds_alternative<std::int64_t>(*x) && std::holds_alternative<std::int64_t>(*y);
    if (both_int) {
        std::int64_t xi = std::get<std::int64_t>(*x);
        std::int64_t yi = std::get<std::int64_t>(*y);
        if (which == '/') {
            if (yi == 0) return single(make_error(candidate, "DivByZero"), b);
            if (yi == -1 && xi == std::numeric_limits<std::int64_t>::min())
                return single(Atom::integer(xi), b);  // wraps
            return single(Atom::integer(xi / yi), b);
        }
        return single(Atom::integer(int_arith(which, xi, yi)), b);
    }
    double xd = to_double(*x);
    double yd = to_double(*y);
    switch (which) {
        case '+': return single(Atom::floating(xd + yd), b);
        case '-': return single(Atom::floating(xd - yd), b);
        case '*': return single(Atom::floating(xd * yd), b);
        case '/': return single(Atom::floating(xd / yd), b);
    }
    return unreduced();
}

ExecOutcome op_compare(char which, const std::vector<Atom>& args, const Bindings& b) {
    auto x = as_number(args[0]);
    auto y = as_number(args[1]);
    if (!x || !y) return unreduced();
    double xd = to_double(*x);
    double yd = to_double(*y);
    bool r = false;
    switch (which) {
        case '<': r = xd < yd; break;
        case '>': r = xd > yd; break;
        case '=': r = xd == yd; break;
    }
    return single(Atom::sym(r ? "True" : "False"), b);
}

std::optional<bool> as_bool(const Atom& a) {
    if (a.is_symbol("True")) return true;
    if (a.is_symbol("False")) return false;
    return std::nullopt;
}

ExecOutcome op_match(Interpreter& interp, const std::vector<Atom>& args, const Bindings& b) {
    AtomSpace* target = interp.env().resolve_space(args[0]);
    if (!target) return unreduced();
    const Atom& pattern = args[1];
    const Atom& tmpl = args[2];

    std::vector<Bindings> matches;
    if (pattern.is_expression() && !pattern.children().empty() &&
        pattern.children().front().is_symbol(",")) {
        std::span<const Atom> subs{pattern.children().data() + 1,
                                   pattern.children().size() - 1};
        if (subs.empty()) return unreduced();
        matches = target->query_conj(subs);
    } else {
        matches = target->query(pattern);
    }

    ExecOutcome outcome;
    for (const Bindings& q : matches) {
        auto merged = merge_bindings(b, q);
        if (!merged) continue;
        outcome.results.push_back({apply_bindings(tmpl, q), std::move(*merged), true});
    }
    return outcome;
}

ExecOutcome op_if(Interpreter& interp, const std::vector<Atom>& args, const Atom& candidate,
                  const Bindings& b, int depth) {
    ExecOutcome outcome;
    std::vector<Atom> unreduced_seen;
    for (EvalResult& cond : interp.evaluate(args[0], b, depth - 1)) {
        if (cond.atom.is_error()) {
            outcome.results.push_back({std::move(cond.atom), std::move(cond.bindings), false});
            continue;
        }
        auto truth = as_bool(cond.atom);
        if (!truth) {
            // Non-boolean condition: this branch of the `if` stays
            // unreduced. Identical unreduced forms collapse into one
            // result so normal forms stay idempotent.
            Atom whole = apply_bindings(candidate, cond.bindings);
            bool dup = false;
            for (const Atom& seen : unreduced_seen)
                if (atoms_equal(seen, whole)) dup = true;
            if (dup) continue;
            unreduced_seen.push_back(whole);
            outcome.results.push_back({std::move(whole), std::move(cond.bindings), false});
            continue;
        }
        const Atom& branch = *truth ? args[1] : args[2];
        outcome.results.push_back(
            {apply_bindings(branch, cond.bindings), std::move(cond.bindings), true});
    }
    return outcome;
}

}  // namespace

StdEnv StdEnv::standard(AtomSpace& self_space, std::ostream& out) {
    StdEnv env;
    env.self_ = &self_space;
    env.out_ = &out;

    env.register_op({ExecFn{"match", true, 3},
                     [](Interpreter& interp, const std::vector<Atom>& args, const Atom&,
                        const Bindings& b, int) { return op_match(interp, args, b); }});

    env.register_op({ExecFn{"add-atom", true, 2},
                     [](Interpreter& interp, const std::vector<Atom>& args, const Atom&,
                        const Bindings& b, int) {
                         AtomSpace* target = interp.env().resolve_space(args[0]);
                         if (!target) return unreduced();
                         target->add(args[1]);
                         return single(Atom::expr({}), b);
                     }});

    env.register_op({ExecFn{"remove-atom", true, 2},
                     [](Interpreter& interp, const std::vector<Atom>& args, const Atom&,
                        const Bindings& b, int) {
                         AtomSpace* target = interp.env().resolve_space(args[0]);
                         if (!target) return unreduced();
                         bool removed = target->remove(args[1]);
                         return single(Atom::sym(removed ? "True" : "False"), b);
                     }});

    env.register_op({ExecFn{"if", true, 3},
                     [](Interpreter& interp, const std::vector<Atom>& args, const Atom& cand,
                        const Bindings& b, int depth) {
                         return op_if(interp, args, cand, b, depth);
                     }});

    env.register_op({ExecFn{"quote", true, 1},
                     [](Interpreter&, const std::vector<Atom>&, const Atom&, const Bindings&,
                        int) { return unreduced(); }});

    env.register_op({ExecFn{"get-type", true, 1},
                     [](Interpreter& interp, const std::vector<Atom>& args, const Atom&,
                        const Bindings& b, int) {
                         ExecOutcome outcome;
                         for (Atom& t : type_of(interp.space(), args[0]))
                             outcome.results.push_back({std::move(t), b, false});
                         return outcome;
                     }});

    for (char op : {'+', '-', '*', '/'})
        env.register_op({ExecFn{std::string(1, op), false, 2},
                         [op](Interpreter&, const std::vector<Atom>& args, const Atom& cand,
                              const Bindings& b, int) { return op_arith(op, args, cand, b); }});

    env.register_op({ExecFn{"<", false, 2},
                     [](Interpreter&, const std::vector<Atom>& args, const Atom&,
                        const Bindings& b, int) { return op_compare('<', args, b); }});
    env.register_op({ExecFn{">", false, 2},
                     [](Interpreter&, const std::vector<Atom>& args, const Atom&,
                        const Bindings& b, int) { return op_compare('>', args, b); }});
    env.register_op({ExecFn{"==", false, 2},
                     [](Interpreter&, const std::vector<Atom>& args, const Atom&,
                        const Bindings& b, int) { return op_compare('=', args, b); }});

    env.register_op({ExecFn{"and", false, 2},
                     [](Interpreter&, const std::vector<Atom>& args, const Atom&,
                        const Bindings& b, int) {
                         auto x = as_bool(args[0]);
                         auto y = as_bool(args[1]);
                         if (!x || !y) return unreduced();
                         return single(Atom::sym(*x && *y ? "True" : "False"), b);
                     }});
    env.register_op({ExecFn{"or", false, 2},
                     [](Interpreter&, const std::vector<Atom>& args, const Atom&,
                        const Bindings& b, int) {
                         auto x = as_bool(args[0]);
                         auto y = as_bool(args[1]);
                         if (!x || !y) return unreduced();
                         return single(Atom::sym(*x || *y ? "True" : "False"), b);
                     }});
    env.register_op({ExecFn{"not", false, 1},
                     [](Interpreter&, const std::vector<Atom>& args, const Atom&,
                        const Bindings& b, int) {
                         auto x = as_bool(args[0]);
                         if (!x) return unreduced();
                         return single(Atom::sym(*x ? "False" : "True"), b);
                     }});

    env.register_op({ExecFn{"println", false, 1},
                     [](Interpreter& interp, const std::vector<Atom>& args, const Atom&,
                        const Bindings& b, int) {
                         interp.env().out() << render(args[0]) << "\n";
                         return single(Atom::expr({}), b);
                     }});

    return env;
}

}  // namespace metta
