#include "metta/space.hpp"

#include <algorithm>

namespace metta {

namespace {

void collect_vars_rec(const Atom& a, std::vector<VarKey>& out) {
    if (a.is_variable()) {
        VarKey k = var_key(a.as_variable());
        if (std::find(out.begin(), out.end(), k) == out.end()) out.push_back(k);
        return;
    }
    if (!a.is_expression()) return;
    for (const auto& c : a.children()) collect_vars_rec(c, out);
}

}  // namespace

std::vector<VarKey> collect_variables(const Atom& a) {
    std::vector<VarKey> out;
    collect_vars_rec(a, out);
    return out;
}

Bindings project_bindings(const Atom& pattern, const Bindings& full) {
    Bindings out;
    for (const VarKey& k : collect_variables(pattern)) {
        Atom v = Atom::var(k.name, k.scope);
        Atom resolved = apply_bindings(v, full);
        if (resolved.is_variable() && var_key(resolved.as_variable()) == k) continue;
        out.bind(k, std::move(resolved));
    }
    return out;
}

bool AtomSpace::index_key_for(const Atom& a, IndexKey& key) {
    if (!a.is_expression()) return false;
    const auto& cs = a.children();
    if (cs.empty() || !cs.front().is_symbol()) return false;
    key.head = cs.front().as_symbol().name;
    key.arity = cs.size();
    return true;
}

void AtomSpace::add(Atom a) {
    std::size_t seq = entries_.size();
    bool has_vars = contains_variable(a);
    IndexKey key;
    if (index_key_for(a, key))
        index_[key].push_back(seq);
    else
        overflow_.push_back(seq);
    entries_.push_back({std::move(a), true, has_vars});
    ++live_count_;
}

bool AtomSpace::remove(const Atom& a) {
    IndexKey key;
    std::vector<std::size_t>* bucket;
    if (index_key_for(a, key)) {
        auto it = index_.find(key);
        if (it == index_.end()) return false;
        bucket = &it->second;
    } else {
        bucket = &overflow_;
    }
    for (auto it = bucket->begin(); it != bucket->end(); ++it) {
        Entry& e = entries_[*it];
        if (e.alive && atoms_equal(e.atom, a)) {
            e.alive = false;
            bucket->erase(it);
            --live_count_;
            return true;
        }
    }
    return false;
}

void AtomSpace::for_each_candidate(const Atom& pattern,
                                   const std::function<void(std::size_t)>& fn) const {
    if (!index_enabled_) {
        for (std::size_t seq = 0; seq < entries_.size(); ++seq)
            if (entries_[seq].alive) fn(seq);
        return;
    }
    IndexKey key;
    if (index_key_for(pattern, key)) {
        // Bucket plus overflow (stored variables and variable-headed
        // expressions can still match), merged back into insertion order.
        static const std::vector<std::size_t> kEmpty;
        auto it = index_.find(key);
        const std::vector<std::size_t>& bucket = it == index_.end() ? kEmpty : it->second;
        std::size_t i = 0, j = 0;
        while (i < bucket.size() || j < overflow_.size()) {
            std::size_t seq;
            if (j >= overflow_.size() || (i < bucket.size() && bucket[i] < overflow_[j]))
                seq = bucket[i++];
            else
                seq = overflow_[j++];
            if (entries_[seq].alive) fn(seq);
        }
        return;
    }
    if (pattern.is_expression() && !pattern.children().empty()) {
        // Non-symbol head: any stored expression of that arity (plus
        // anything unindexed) could match; scan everything in order.
        for (std::size_t seq = 0; seq < entries_.size(); ++seq)
            if (entries_[seq].alive) fn(seq);
        return;
    }
    if (pattern.is_variable()) {
        for (std::size_t seq = 0; seq < entries_.size(); ++seq)
            if (entries_[seq].alive) fn(seq);
        return;
    }
    // Symbols, grounded atoms and the empty expression can only match a
    // stored atom of the same shape or a stored bare variable, all of
    // which live in the overflow list.
    for (std::size_t seq : overflow_)
        if (entries_[seq].alive) fn(seq);
}

bool AtomSpace::match_entry(std::size_t seq, const Atom& pattern, Bindings& out) const {
    const Entry& e = entries_[seq];
    Atom stored = e.has_vars ? fresh_rename(e.atom, fresh_generation()) : e.atom;
    std::optional<Bindings> s = unify(pattern, stored);
    if (!s) return false;
    out = project_bindings(pattern, *s);
    return true;
}

std::vector<Bindings> AtomSpace::query(const Atom& pattern) const {
    std::vector<Bindings> results;
    for_each_candidate(pattern, [&](std::size_t seq) {
        Bindings b;
        if (match_entry(seq, pattern, b)) results.push_back(std::move(b));
    });
    return results;
}

std::vector<Bindings> AtomSpace::query_conj(std::span<const Atom> subpatterns) const {
    std::vector<Bindings> states{Bindings{}};
    for (const Atom& sp : subpatterns) {
        std::vector<Bindings> next;
        for (const Bindings& state : states) {
            Atom p = apply_bindings(sp, state);
            for_each_candidate(p, [&](std::size_t seq) {
                Bindings step;
                if (!match_entry(seq, p, step)) return;
                // Fold the step into the accumulated state; a conflict
                // would mean the projection re-bound a state variable,
                // which cannot happen since `p` was already substituted.
                Bindings merged = state;
                for (const auto& [k, v] : step) {
                    auto u = unify(Atom::var(k.name, k.scope), v, merged);
                    if (!u) return;
                    merged = std::move(*u);
                }
                next.push_back(std::move(merged));
            });
        }
        states = std::move(next);
    }
    // Project onto the union of the subpatterns' variables.
    std::vector<Atom> all(subpatterns.begin(), subpatterns.end());
    Atom whole = Atom::expr(std::move(all));
    std::vector<Bindings> results;
    results.reserve(states.size());
    for (const Bindings& s : states) results.push_back(project_bindings(whole, s));
    return results;
}

std::vector<Atom> AtomSpace::atoms() const {
    std::vector<Atom> out;
    out.reserve(live_count_);
    for (const Entry& e : entries_)
        if (e.alive) out.push_back(e.atom);
    return out;
}

std::size_t AtomSpace::count(const Atom& a) const {
    std::size_t n = 0;
    for (const Entry& e : entries_)
        if (e.alive && atoms_equal(e.atom, a)) ++n;
    return n;
}

std::string AtomSpace::dump() const {
    std::string out;
    for (const Entry& e : entries_) {
        if (!e.alive) continue;
        out += render(e.atom);
        out.push_back('\n');
    }
    return out;
}

}  // namespace metta
