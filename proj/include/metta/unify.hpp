#pragma once

#include <optional>

#include "metta/atom.hpp"
#include "metta/bindings.hpp"

namespace metta {

// Two-sided unification. On success the returned bindings extend `seed`
// and apply_bindings(a) equals apply_bindings(b) under them. Failure is
// an ordinary result, not an error. Callers unifying atoms from
// different patterns must give them disjoint scope ids first (see
// fresh_rename); same-named variables in two patterns are different
// variables.
std::optional<Bindings> unify(const Atom& a, const Atom& b, const Bindings& seed = {});

// Replace every bound variable in `a`, recursively, until no bound
// variable remains. Unbound variables are left intact.
Atom apply_bindings(const Atom& a, const Bindings& b);

// Give every variable in `a` scope id = `generation`, keeping names, so
// same-named variables inside `a` stay identified with each other while
// becoming distinct from any other pattern's variables.
Atom fresh_rename(const Atom& a, std::uint32_t generation);

// Chase a variable through the substitution until it reaches a non
// variable or an unbound variable. Only the top of the chain is
// resolved; nested occurrences are left for apply_bindings.
Atom walk(const Atom& a, const Bindings& b);

// Does variable `v` occur in `t` after full resolution through `b`?
bool occurs(const VarKey& v, const Atom& t, const Bindings& b);

}  // namespace metta
