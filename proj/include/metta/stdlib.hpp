#pragma once

#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "metta/atom.hpp"
#include "metta/bindings.hpp"
#include "metta/interpreter.hpp"
#include "metta/space.hpp"

namespace metta {

// One branch produced by a host operation. `reduce_further` sends the
// atom back through the interpreter (match templates, if branches);
// results that must stand as-is (types, quoted forms) clear it.
struct HostResult {
    Atom atom;
    Bindings bindings;
    bool reduce_further = true;
};

// applies == false means the arguments were outside the operation's
// domain: the whole candidate is returned unreduced.
struct ExecOutcome {
    bool applies = true;
    std::vector<HostResult> results;
};

// Host implementation. For lazy ops `args` are the unevaluated argument
// atoms (bindings already applied); for eager ops they are the
// evaluated ones. `candidate` is the whole expression being executed.
using HostFn = std::function<ExecOutcome(Interpreter& interp, const std::vector<Atom>& args,
                                         const Atom& candidate, const Bindings& bindings,
                                         int depth)>;

struct StdOp {
    ExecFn meta;
    HostFn fn;
};

// The grounded standard library: a registry of named host operations
// plus the `&self` space. Symbols naming registered ops resolve to
// grounded ExecFn atoms during evaluation; every registered name
// renders back to itself.
class StdEnv {
public:
    // Registry with match/add-atom/remove-atom/if/quote/get-type,
    // arithmetic and comparisons, boolean logic, and println.
    static StdEnv standard(AtomSpace& self_space, std::ostream& out = std::cout);

    const StdOp* find(std::string_view name) const;
    void register_op(StdOp op);

    AtomSpace* self_space() const { return self_; }

    // `&self` (or a grounded SpaceRef) names a live space; anything
    // else resolves to nothing.
    AtomSpace* resolve_space(const Atom& a) const;

    std::ostream& out() { return *out_; }

private:
    std::map<std::string, StdOp, std::less<>> ops_;
    AtomSpace* self_ = nullptr;
    std::ostream* out_ = nullptr;
};

}  // namespace metta
