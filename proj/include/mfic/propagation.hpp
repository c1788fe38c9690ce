#pragma once

#include <cstddef>
#include <vector>

#include "mfic/compression.hpp"

namespace mfic {

// Reversible per-variable value sets. Each domain is a sparse set (dense
// value array + position index + size); removals swap the value past the
// size boundary and push the variable on a trail, so restoring a level is
// exact and costs one increment per undone removal.
class DomainState {
public:
    explicit DomainState(const std::vector<std::vector<Value>>& domains);
    explicit DomainState(const Instance& inst);

    int n_vars() const { return static_cast<int>(doms_.size()); }
    int size(VarId x) const { return doms_[x].size; }
    bool contains(VarId x, Value v) const;
    bool fixed(VarId x) const { return doms_[x].size == 1; }
    Value value_at(VarId x, int i) const { return doms_[x].dense[i]; }
    Value sole_value(VarId x) const { return doms_[x].dense[0]; }
    std::vector<Value> values_sorted(VarId x) const;
    const std::vector<Value>& original_domain(VarId x) const { return doms_[x].original; }

    void remove(VarId x, Value v);  // v must be present

    void save_level();
    void restore_level();  // throws UnderflowError without a matching save
    int level() const { return static_cast<int>(marks_.size()); }

private:
    struct Dom {
        std::vector<Value> dense;
        std::vector<int> pos;  // value -> dense index
        int size = 0;
        std::vector<Value> original;
    };
    std::vector<Dom> doms_;
    std::vector<VarId> trail_;
    std::vector<std::size_t> marks_;
};

struct PropagationOutcome {
    enum class Status { fixpoint, wipeout };
    Status status = Status::fixpoint;
    VarId wipeout_var = -1;
    std::vector<Literal> removed;

    bool wiped() const { return status == Status::wipeout; }
};

class Propagator {
public:
    virtual ~Propagator() = default;
    virtual PropagationOutcome filter(DomainState& doms) = 0;
    virtual void save_level() = 0;
    virtual void restore_level() = 0;
    virtual const std::vector<VarId>& scope() const = 0;
};

// Simple tabular reduction with the STR2 bookkeeping: a permutation of
// tuple indices split at `limit` into valid / invalid, validity rechecked
// only against variables whose domain changed since the last call, and
// support collection dropped for variables already fully supported.
class Str2 final : public Propagator {
public:
    explicit Str2(TableConstraint table);  // table must be canonical

    PropagationOutcome filter(DomainState& doms) override;
    void save_level() override;
    void restore_level() override;
    const std::vector<VarId>& scope() const override { return table_.scope; }

    int limit() const { return limit_; }
    std::vector<int> valid_tuples() const;  // sorted indices, for inspection

private:
    TableConstraint table_;
    std::vector<int> position_;
    int limit_;
    std::vector<int> last_sizes_;  // per scope position; -1 before the first call
    struct Frame {
        int limit;
        std::vector<int> last_sizes;
    };
    std::vector<Frame> frames_;
    // per-call scratch, sized once
    std::vector<std::vector<char>> seen_;
    std::vector<int> caps_;
    std::vector<int> s_val_, s_sup_, found_;
    std::vector<char> done_;
};

// GAC on a compressed table. Entries are a sparse set under
// `entries_limit`; each entry keeps its own sparse set of sub-tuples under
// a per-entry limit. An entry whose itemset lost a literal is dropped
// without touching its sub-table; the default table rides along as a final
// pseudo-entry with an empty itemset. Sub-limit changes are trailed once
// per level, so backtracking only rewrites what a level touched.
class StrMfic final : public Propagator {
public:
    explicit StrMfic(const CompressedTable& ct);

    PropagationOutcome filter(DomainState& doms) override;
    void save_level() override;
    void restore_level() override;
    const std::vector<VarId>& scope() const override { return scope_; }

    int entries_limit() const { return entries_limit_; }
    int n_slots() const { return static_cast<int>(slots_.size()); }
    bool slot_is_default(int s) const { return slots_[s].itemset.empty(); }
    bool slot_valid(int s) const;
    int valid_sub_count(int s) const { return slots_[s].limit + 1; }

private:
    struct Slot {
        Itemset itemset;             // empty for the default pseudo-entry
        std::vector<int> item_pos;   // scope positions, parallel to itemset
        std::vector<int> sub_pos;    // scope positions of the sub columns
        std::vector<Tuple> sub_tuples;
        std::vector<int> order;      // permutation of sub-tuple indices
        int limit = -1;
        int trailed_level = -1;
    };

    void trail_limit(int slot);

    std::vector<VarId> scope_;
    int arity_;
    std::vector<Slot> slots_;
    std::vector<int> entry_position_;  // permutation of slot indices
    int entries_limit_;
    std::vector<int> last_sizes_;
    struct Frame {
        int entries_limit;
        std::vector<int> last_sizes;
        std::size_t trail_mark;
    };
    std::vector<Frame> frames_;
    std::vector<std::pair<int, int>> limit_trail_;  // (slot, old limit)
    // per-call scratch, sized once
    std::vector<std::vector<char>> seen_;
    std::vector<int> caps_;
    std::vector<int> s_val_, s_sup_, found_;
    std::vector<char> done_, val_mask_, sup_mask_;
};

// Greatest fixpoint of support filtering across all constraints, starting
// from the current domains. Reference semantics for the propagators.
// Throws TooLarge past 10^6 tuple checks.
std::vector<std::vector<Value>> gac_oracle(const Instance& inst, const DomainState& doms);

}  // namespace mfic
