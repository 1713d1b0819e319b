#pragma once

#include <string>
#include <vector>

#include "metta/atom.hpp"
#include "metta/bindings.hpp"
#include "metta/reader.hpp"
#include "metta/space.hpp"

namespace metta {

class StdEnv;

struct EvalConfig {
    int max_depth = 1000;
    bool typecheck_enabled = false;
};

// One branch of a (non-deterministic) evaluation: the reduced atom and
// the variable knowledge accumulated while reducing it. The atom is
// always fully substituted under its own bindings.
struct EvalResult {
    Atom atom;
    Bindings bindings;
};

// Evaluates atoms by equality-query chaining over a space, with
// grounded execution dispatched through a StdEnv registry. Reduction of
// an expression is children-first: the head is evaluated first (lazy
// grounded heads take over with unevaluated arguments), remaining
// children are evaluated and recombined as a cartesian product of their
// result sets with merged bindings, and each candidate is either
// executed (grounded head) or chased through `(= candidate $r)` queries
// until nothing reduces. Unmatched expressions evaluate to themselves.
class Interpreter {
public:
    Interpreter(AtomSpace& space, StdEnv& env, EvalConfig cfg = {});

    std::vector<EvalResult> evaluate(const Atom& a);
    std::vector<EvalResult> evaluate(const Atom& a, const Bindings& seed, int depth);

    struct DirectiveOutput {
        Atom directive;
        std::vector<Atom> results;
    };

    // Process items in order: non-directives are added to the space
    // before later items run; directives are evaluated against the
    // space as it stands at that point. Evaluation errors become Error
    // atoms in the output and never abort subsequent items.
    std::vector<DirectiveOutput> run_program(const std::vector<ProgramItem>& items);

    AtomSpace& space() { return space_; }
    StdEnv& env() { return env_; }
    const EvalConfig& config() const { return cfg_; }

private:
    void eval_into(const Atom& a, const Bindings& seed, int depth,
                   std::vector<EvalResult>& out);
    void eval_candidate(const Atom& candidate, const Bindings& b, int depth,
                        std::vector<EvalResult>& out);
    void eval_expression(const Atom& e, const Bindings& seed, int depth,
                         std::vector<EvalResult>& out);

    AtomSpace& space_;
    StdEnv& env_;
    EvalConfig cfg_;
};

// (Error <atom> <tag>) — reserved shape; never evaluated further.
Atom make_error(const Atom& subject, const std::string& tag);
Atom make_error(const Atom& subject, const Atom& detail);

// Merge `extra` into `base` by unifying shared variables; nullopt on a
// genuine conflict (that cartesian-product branch is discarded).
std::optional<Bindings> merge_bindings(const Bindings& base, const Bindings& extra);

// The CLI / golden-test line format: results comma-separated inside
// brackets, in evaluation order.
std::string format_results(const std::vector<Atom>& results);

}  // namespace metta
