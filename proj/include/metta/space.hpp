#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "metta/atom.hpp"
#include "metta/bindings.hpp"
#include "metta/unify.hpp"

namespace metta {

// An indexed, insertion-ordered multiset of atoms supporting unification
// queries and mutation. Expression atoms with a symbol head live in a
// (head name, arity) bucket; everything else (symbols, grounded atoms,
// variables, variable- or non-symbol-headed expressions) lives in an
// unindexed overflow list. Duplicates are distinct occurrences.
//
// Concurrency contract: many concurrent readers OR one writer; mutating
// during an active query is forbidden.
class AtomSpace {
public:
    AtomSpace() = default;
    AtomSpace(const AtomSpace&) = delete;
    AtomSpace& operator=(const AtomSpace&) = delete;
    // Transferable between threads (handles into the old location go
    // stale, as with any container move).
    AtomSpace(AtomSpace&& other) noexcept
        : entries_(std::move(other.entries_)),
          index_(std::move(other.index_)),
          overflow_(std::move(other.overflow_)),
          live_count_(other.live_count_),
          index_enabled_(other.index_enabled_),
          generation_(other.generation_.load(std::memory_order_relaxed)) {}
    AtomSpace& operator=(AtomSpace&&) = delete;

    void add(Atom a);

    // Remove the oldest occurrence structurally equal to `a`; false if
    // none is present.
    bool remove(const Atom& a);

    // All bindings (over the caller's variables) under which some stored
    // atom unifies with `pattern`, in insertion order of the matched
    // atoms. Stored atoms are freshly renamed before unification, so
    // same-named variables on the two sides stay distinct; intermediate
    // renamed variables appear in results only when genuinely free.
    std::vector<Bindings> query(const Atom& pattern) const;

    // Conjunctive query: bindings satisfying all subpatterns at once,
    // computed left to right, each subpattern matched against possibly
    // different stored atoms. Result order is lexicographic in the
    // per-subpattern match orders. Requires at least one subpattern.
    std::vector<Bindings> query_conj(std::span<const Atom> subpatterns) const;

    std::size_t size() const { return live_count_; }

    // Live atoms in insertion order.
    std::vector<Atom> atoms() const;

    // Count of live occurrences structurally equal to `a`.
    std::size_t count(const Atom& a) const;

    // One atom per line, insertion order. Loading the text back with
    // parse_program (all items non-directive) round-trips bit-exactly.
    std::string dump() const;

    // Globally fresh renaming generation (monotone).
    std::uint32_t fresh_generation() const {
        return generation_.fetch_add(1, std::memory_order_relaxed) + 1;
    }

    // The index never changes results, only speed; disabling it forces
    // full scans (used by the equivalence and timing tests).
    void set_index_enabled(bool enabled) { index_enabled_ = enabled; }
    bool index_enabled() const { return index_enabled_; }

private:
    struct Entry {
        Atom atom;
        bool alive = true;
        bool has_vars = false;
    };

    struct IndexKey {
        std::string head;
        std::size_t arity;
        friend bool operator==(const IndexKey& a, const IndexKey& b) {
            return a.arity == b.arity && a.head == b.head;
        }
    };
    struct IndexKeyHash {
        std::size_t operator()(const IndexKey& k) const {
            return std::hash<std::string>{}(k.head) * 1315423911u ^ k.arity;
        }
    };

    // True if `a` belongs in an index bucket; fills `key` when so.
    static bool index_key_for(const Atom& a, IndexKey& key);

    // Invoke fn(seq) for every live candidate that could match
    // `pattern`, in ascending insertion order.
    void for_each_candidate(const Atom& pattern,
                            const std::function<void(std::size_t)>& fn) const;

    // Unify `pattern` against the (renamed) stored atom at `seq`;
    // returns the projected caller bindings on success.
    bool match_entry(std::size_t seq, const Atom& pattern, Bindings& out) const;

    std::vector<Entry> entries_;
    std::unordered_map<IndexKey, std::vector<std::size_t>, IndexKeyHash> index_;
    std::vector<std::size_t> overflow_;
    std::size_t live_count_ = 0;
    bool index_enabled_ = true;
    mutable std::atomic<std::uint32_t> generation_{0};
};

// Collect the variables of `a` in first-occurrence order, deduplicated.
std::vector<VarKey> collect_variables(const Atom& a);

// Restrict `full` to the variables of `pattern`, fully resolving each;
// variables that stay unbound are omitted.
Bindings project_bindings(const Atom& pattern, const Bindings& full);

}  // namespace metta
