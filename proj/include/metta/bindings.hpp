#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "metta/atom.hpp"

namespace metta {

// Identity of a variable: name plus renaming generation.
struct VarKey {
    std::string name;
    std::uint32_t scope = 0;

    friend bool operator<(const VarKey& a, const VarKey& b) {
        if (a.scope != b.scope) return a.scope < b.scope;
        return a.name < b.name;
    }
    friend bool operator==(const VarKey& a, const VarKey& b) {
        return a.scope == b.scope && a.name == b.name;
    }
};

inline VarKey var_key(const Atom::Variable& v) { return VarKey{v.name, v.scope}; }

// A consistent map from variables to atoms. The substitution is
// triangular: a bound atom may itself contain bound variables, and
// resolution chases until a fixpoint. The occurs check performed at
// insertion time keeps that chase finite.
class Bindings {
public:
    using Map = std::map<VarKey, Atom>;

    bool empty() const { return map_.empty(); }
    std::size_t size() const { return map_.size(); }

    const Atom* lookup(const VarKey& k) const {
        auto it = map_.find(k);
        return it == map_.end() ? nullptr : &it->second;
    }

    // Unchecked insert; unify() is responsible for the occurs check.
    void bind(VarKey k, Atom value) { map_.insert_or_assign(std::move(k), std::move(value)); }

    Map::const_iterator begin() const { return map_.begin(); }
    Map::const_iterator end() const { return map_.end(); }

    friend bool operator==(const Bindings& a, const Bindings& b) {
        if (a.map_.size() != b.map_.size()) return false;
        auto ia = a.map_.begin();
        auto ib = b.map_.begin();
        for (; ia != a.map_.end(); ++ia, ++ib) {
            if (!(ia->first == ib->first)) return false;
            if (!atoms_equal(ia->second, ib->second)) return false;
        }
        return true;
    }

private:
    Map map_;
};

}  // namespace metta
