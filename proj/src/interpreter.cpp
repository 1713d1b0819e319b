#include "metta/interpreter.hpp"

#include "metta/stdlib.hpp"
#include "metta/types.hpp"
#include "metta/unify.hpp"

namespace metta {

Atom make_error(const Atom& subject, const std::string& tag) {
    return make_error(subject, Atom::sym(tag));
}

Atom make_error(const Atom& subject, const Atom& detail) {
    return Atom::expr({Atom::sym("Error"), subject, detail});
}

std::optional<Bindings> merge_bindings(const Bindings& base, const Bindings& extra) {
    Bindings merged = base;
    for (const auto& [k, v] : extra) {
        auto u = unify(Atom::var(k.name, k.scope), v, merged);
        if (!u) return std::nullopt;
        merged = std::move(*u);
    }
    return merged;
}

std::string format_results(const std::vector<Atom>& results) {
    std::string out = "[";
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (i) out += ", ";
        out += render(results[i]);
    }
    out += "]";
    return out;
}

Interpreter::Interpreter(AtomSpace& space, StdEnv& env, EvalConfig cfg)
    : space_(space), env_(env), cfg_(cfg) {}

std::vector<EvalResult> Interpreter::evaluate(const Atom& a) {
    return evaluate(a, Bindings{}, cfg_.max_depth);
}

std::vector<EvalResult> Interpreter::evaluate(const Atom& a, const Bindings& seed, int depth) {
    std::vector<EvalResult> out;
    eval_into(a, seed, depth, out);
    return out;
}

void Interpreter::eval_into(const Atom& a, const Bindings& seed, int depth,
                            std::vector<EvalResult>& out) {
    Atom cur = apply_bindings(a, seed);
    if (depth <= 0) {
        out.push_back({make_error(cur, "StackOverflow"), seed});
        return;
    }
    if (cur.is_error()) {
        out.push_back({cur, seed});
        return;
    }
    if (cur.is_variable() || cur.is_grounded()) {
        out.push_back({std::move(cur), seed});
        return;
    }
    if (cur.is_symbol()) {
        const std::string& name = cur.as_symbol().name;
        if (name == "&self") {
            out.push_back({Atom::space_ref(env_.self_space()), seed});
            return;
        }
        if (const StdOp* op = env_.find(name)) {
            out.push_back({Atom::exec(op->meta), seed});
            return;
        }
        eval_candidate(cur, seed, depth, out);
        return;
    }
    eval_expression(cur, seed, depth, out);
}

void Interpreter::eval_expression(const Atom& e, const Bindings& seed, int depth,
                                  std::vector<EvalResult>& out) {
    const auto& children = e.children();
    if (children.empty()) {
        out.push_back({e, seed});
        return;
    }

    // Structural recursion into children does not consume the depth
    // budget; only chain steps (equality-query results and host results
    // evaluated further) do. Atoms are finite trees, so child
    // evaluation terminates without it.
    std::vector<EvalResult> head_results = evaluate(children.front(), seed, depth);

    // Result sets of the argument positions; computed once, on first
    // need, and shared by every non-lazy head result. Errors coming out
    // of a child short-circuit: they are emitted directly instead of
    // being combined into candidates.
    bool rest_ready = false;
    std::vector<std::vector<EvalResult>> rest;
    auto ensure_rest = [&]() {
        if (rest_ready) return;
        rest_ready = true;
        rest.resize(children.size());
        for (std::size_t i = 1; i < children.size(); ++i) {
            for (EvalResult& r : evaluate(children[i], seed, depth)) {
                if (r.atom.is_error())
                    out.push_back(std::move(r));
                else
                    rest[i].push_back(std::move(r));
            }
        }
    };

    for (const EvalResult& head : head_results) {
        if (head.atom.is_error()) {
            out.push_back(head);
            continue;
        }

        const ExecFn* fn = nullptr;
        if (head.atom.is_grounded())
            fn = std::get_if<ExecFn>(&head.atom.as_grounded().value);

        if (fn && fn->lazy) {
            Atom whole = apply_bindings(e, head.bindings);
            if (static_cast<int>(children.size()) - 1 != fn->arity) {
                out.push_back({whole, head.bindings});
                continue;
            }
            const StdOp* op = env_.find(fn->name);
            if (!op) {
                out.push_back({whole, head.bindings});
                continue;
            }
            std::vector<Atom> args(whole.children().begin() + 1, whole.children().end());
            ExecOutcome outcome = op->fn(*this, args, whole, head.bindings, depth);
            if (!outcome.applies) {
                out.push_back({whole, head.bindings});
                continue;
            }
            for (HostResult& hr : outcome.results) {
                if (hr.reduce_further)
                    eval_into(hr.atom, hr.bindings, depth - 1, out);
                else
                    out.push_back({apply_bindings(hr.atom, hr.bindings), hr.bindings});
            }
            continue;
        }

        // Eager path: cartesian product of argument results,
        // left-to-right, bindings merged via unification of shared
        // variables; a conflict discards that branch.
        ensure_rest();
        std::vector<Atom> picked(children.size());
        picked[0] = head.atom;
        std::function<void(std::size_t, const Bindings&)> combine =
            [&](std::size_t i, const Bindings& acc) {
                if (i == children.size()) {
                    Atom candidate = apply_bindings(Atom::expr(picked), acc);
                    eval_candidate(candidate, acc, depth, out);
                    return;
                }
                for (const EvalResult& r : rest[i]) {
                    auto merged = merge_bindings(acc, r.bindings);
                    if (!merged) continue;
                    picked[i] = r.atom;
                    combine(i + 1, *merged);
                }
            };
        combine(1, head.bindings);
    }
}

void Interpreter::eval_candidate(const Atom& candidate, const Bindings& b, int depth,
                                 std::vector<EvalResult>& out) {
    // Grounded executable head: run the host operation; arguments
    // outside its domain leave the candidate unreduced.
    if (candidate.is_expression() && !candidate.children().empty() &&
        candidate.children().front().is_grounded()) {
        if (const ExecFn* fn =
                std::get_if<ExecFn>(&candidate.children().front().as_grounded().value)) {
            const StdOp* op = env_.find(fn->name);
            if (!op || static_cast<int>(candidate.children().size()) - 1 != fn->arity) {
                out.push_back({candidate, b});
                return;
            }
            std::vector<Atom> args(candidate.children().begin() + 1,
                                   candidate.children().end());
            ExecOutcome outcome = op->fn(*this, args, candidate, b, depth);
            if (!outcome.applies) {
                out.push_back({candidate, b});
                return;
            }
            for (HostResult& hr : outcome.results) {
                if (hr.reduce_further)
                    eval_into(hr.atom, hr.bindings, depth - 1, out);
                else
                    out.push_back({apply_bindings(hr.atom, hr.bindings), hr.bindings});
            }
            return;
        }
    }

    // Equality-query chaining: evaluate e by querying (= e $r) and
    // reducing every $r further; an empty query means e is a normal
    // form and evaluates to itself.
    Atom rvar = Atom::var("r", space_.fresh_generation());
    Atom pattern = Atom::expr({Atom::sym("="), candidate, rvar});
    std::vector<Bindings> matches = space_.query(pattern);
    if (matches.empty()) {
        out.push_back({candidate, b});
        return;
    }
    VarKey rkey = var_key(rvar.as_variable());
    for (const Bindings& q : matches) {
        Atom result = apply_bindings(rvar, q);
        Bindings merged = b;
        bool consistent = true;
        for (const auto& [k, v] : q) {
            if (k == rkey) continue;
            auto u = unify(Atom::var(k.name, k.scope), v, merged);
            if (!u) {
                consistent = false;
                break;
            }
            merged = std::move(*u);
        }
        if (!consistent) continue;
        eval_into(result, merged, depth - 1, out);
    }
}

std::vector<Interpreter::DirectiveOutput> Interpreter::run_program(
    const std::vector<ProgramItem>& items) {
    std::vector<DirectiveOutput> output;
    for (const ProgramItem& item : items) {
        if (!item.is_directive) {
            space_.add(item.atom);
            continue;
        }
        DirectiveOutput dir{item.atom, {}};
        if (cfg_.typecheck_enabled) {
            if (auto err = check_atom(space_, item.atom)) {
                dir.results.push_back(make_error(err->subject, err->expected));
                output.push_back(std::move(dir));
                continue;
            }
        }
        for (EvalResult& r : evaluate(item.atom)) dir.results.push_back(std::move(r.atom));
        output.push_back(std::move(dir));
    }
    return output;
}

}  // namespace metta
