#pragma once

#include <optional>
#include <string>
#include <vector>

#include "metta/atom.hpp"
#include "metta/space.hpp"

namespace metta {

// Reserved spelling of the dynamic type; undeclared subjects carry it
// and it unifies with anything.
inline const char* kUndefinedType = "%Undefined%";

inline Atom undefined_type() { return Atom::sym(kUndefinedType); }

struct TypeError {
    Atom subject;   // innermost offending subatom
    Atom expected;  // parameter type, with earlier bindings applied
    Atom actual;
};

// All possible types of `a`, in deterministic order. Symbols yield
// their `(: x T)` declarations (insertion order) or the dynamic type;
// grounded numbers/text yield Number/String; variables are dynamic.
// For an application (f a1 .. an), every arrow type of f of matching
// arity is unified parameter-by-parameter against each combination of
// argument types; the substituted result types are collected.
// Declarations are consulted from the space, freshly renamed per use.
std::vector<Atom> type_of(const AtomSpace& space, const Atom& a);

// Gradual check: ok (nullopt) iff every application subexpression whose
// head has at least one declared arrow type admits a consistent typing.
// Atoms touching only the dynamic type always pass. The returned error
// describes the innermost failing application.
std::optional<TypeError> check_atom(const AtomSpace& space, const Atom& a);

}  // namespace metta
