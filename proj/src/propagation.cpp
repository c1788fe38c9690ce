#include "mfic/propagation.hpp"

#include <algorithm>
#include <numeric>

namespace mfic {

namespace {

// Empties the first undetermined scope variable (or the first one) to
// signal that the constraint has no valid tuple left.
void wipe_scope(DomainState& doms, const std::vector<VarId>& scope,
                const std::vector<int>& s_sup, PropagationOutcome& out) {
    const VarId x = scope[s_sup.empty() ? 0 : s_sup.front()];
    for (int p = doms.size(x) - 1; p >= 0; --p) {
        const Value v = doms.value_at(x, p);
        doms.remove(x, v);
        out.removed.push_back({x, v});
    }
    out.status = PropagationOutcome::Status::wipeout;
    out.wipeout_var = x;
}

// Removes every current value that did not get marked as supported.
// Returns true on wipeout.
bool remove_unsupported(DomainState& doms, const std::vector<VarId>& scope,
                        const std::vector<int>& s_sup, const std::vector<char>& done,
                        const std::vector<std::vector<char>>& seen,
                        const std::vector<int>& caps, PropagationOutcome& out) {
    for (int j : s_sup) {
        if (done[j]) continue;
        const VarId x = scope[j];
        for (int p = doms.size(x) - 1; p >= 0; --p) {
            const Value v = doms.value_at(x, p);
            if (v >= caps[j] || !seen[j][v]) {
                doms.remove(x, v);
                out.removed.push_back({x, v});
            }
        }
        if (doms.size(x) == 0) {
            out.status = PropagationOutcome::Status::wipeout;
            out.wipeout_var = x;
            return true;
        }
    }
    return false;
}

}  // namespace

// ---------------------------------------------------------------- DomainState

DomainState::DomainState(const std::vector<std::vector<Value>>& domains) {
    doms_.resize(domains.size());
    for (std::size_t x = 0; x < domains.size(); ++x) {
        std::vector<Value> vals = domains[x];
        std::sort(vals.begin(), vals.end());
        vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
        Dom& d = doms_[x];
        d.original = vals;
        d.dense = std::move(vals);
        d.size = static_cast<int>(d.dense.size());
        const Value max_v = d.dense.empty() ? -1 : d.dense.back();
        d.pos.assign(max_v + 1, -1);
        for (int i = 0; i < d.size; ++i) d.pos[d.dense[i]] = i;
    }
}

DomainState::DomainState(const Instance& inst) : DomainState(inst.domains) {}

bool DomainState::contains(VarId x, Value v) const {
    const Dom& d = doms_[x];
    if (v < 0 || v >= static_cast<Value>(d.pos.size())) return false;
    const int p = d.pos[v];
    return p >= 0 && p < d.size;
}

std::vector<Value> DomainState::values_sorted(VarId x) const {
    const Dom& d = doms_[x];
    std::vector<Value> out(d.dense.begin(), d.dense.begin() + d.size);
    std::sort(out.begin(), out.end());
    return out;
}

void DomainState::remove(VarId x, Value v) {
    Dom& d = doms_[x];
    const int p = d.pos[v];
    const int last = d.size - 1;
    const Value w = d.dense[last];
    d.dense[p] = w;
    d.pos[w] = p;
    d.dense[last] = v;
    d.pos[v] = last;
    --d.size;
    trail_.push_back(x);
}

void DomainState::save_level() { marks_.push_back(trail_.size()); }

void DomainState::restore_level() {
    if (marks_.empty()) throw UnderflowError("restore without matching save");
    const std::size_t mark = marks_.back();
    marks_.pop_back();
    while (trail_.size() > mark) {
        ++doms_[trail_.back()].size;  // the removed value still sits at dense[size]
        trail_.pop_back();
    }
}

// ----------------------------------------------------------------------- Str2

Str2::Str2(TableConstraint table) : table_(std::move(table)) {
    const int n = static_cast<int>(table_.tuples.size());
    position_.resize(n);
    std::iota(position_.begin(), position_.end(), 0);
    limit_ = n - 1;
    last_sizes_.assign(table_.arity(), -1);
    caps_.assign(table_.arity(), 0);
    for (const Tuple& t : table_.tuples)
        for (int j = 0; j < table_.arity(); ++j) caps_[j] = std::max(caps_[j], t[j] + 1);
    seen_.resize(table_.arity());
}

std::vector<int> Str2::valid_tuples() const {
    std::vector<int> out(position_.begin(), position_.begin() + (limit_ + 1));
    std::sort(out.begin(), out.end());
    return out;
}

void Str2::save_level() { frames_.push_back({limit_, last_sizes_}); }

void Str2::restore_level() {
    if (frames_.empty()) throw UnderflowError("restore without matching save");
    limit_ = frames_.back().limit;
    last_sizes_ = frames_.back().last_sizes;
    frames_.pop_back();
}

PropagationOutcome Str2::filter(DomainState& doms) {
    PropagationOutcome out;
    const int arity = table_.arity();
    s_val_.clear();
    s_sup_.clear();
    for (int j = 0; j < arity; ++j) {
        const VarId x = table_.scope[j];
        if (doms.size(x) != last_sizes_[j]) s_val_.push_back(j);
        if (doms.size(x) > 1) s_sup_.push_back(j);
    }
    if (s_val_.empty()) return out;  // nothing changed since the last call

    auto sync = [&] {
        for (int j = 0; j < arity; ++j) last_sizes_[j] = doms.size(table_.scope[j]);
    };

    // Partition out tuples that lost a value of a changed variable.
    int i = 0;
    while (i <= limit_) {
        const Tuple& t = table_.tuples[position_[i]];
        bool valid = true;
        for (int j : s_val_)
            if (!doms.contains(table_.scope[j], t[j])) {
                valid = false;
                break;
            }
        if (valid) {
            ++i;
        } else {
            std::swap(position_[i], position_[limit_]);
            --limit_;
        }
    }
    if (limit_ < 0) {
        wipe_scope(doms, table_.scope, s_sup_, out);
        sync();
        return out;
    }

    // Collect supported values; a variable drops out as soon as its whole
    // current domain is seen.
    done_.assign(arity, 0);
    found_.assign(arity, 0);
    int pending = static_cast<int>(s_sup_.size());
    for (int j : s_sup_) seen_[j].assign(caps_[j], 0);
    for (int idx = 0; idx <= limit_ && pending > 0; ++idx) {
        const Tuple& t = table_.tuples[position_[idx]];
        for (int j : s_sup_) {
            if (done_[j]) continue;
            const Value v = t[j];
            if (!seen_[j][v]) {
                seen_[j][v] = 1;
                if (++found_[j] == doms.size(table_.scope[j])) {
                    done_[j] = 1;
                    --pending;
                }
            }
        }
    }
    remove_unsupported(doms, table_.scope, s_sup_, done_, seen_, caps_, out);
    sync();
    return out;
}

// -------------------------------------------------------------------- StrMfic

StrMfic::StrMfic(const CompressedTable& ct) : scope_(ct.scope), arity_(ct.arity) {
    std::vector<int> pos_of;
    {
        VarId max_var = -1;
        for (VarId x : scope_) max_var = std::max(max_var, x);
        pos_of.assign(max_var + 1, -1);
        for (int j = 0; j < arity_; ++j) pos_of[scope_[j]] = j;
    }
    auto position = [&](VarId x) {
        if (x < 0 || x >= static_cast<int>(pos_of.size()) || pos_of[x] < 0)
            throw ScopeMismatch("entry variable outside the table scope");
        return pos_of[x];
    };

    for (const Entry& e : ct.entries) {
        if (static_cast<int>(e.itemset.size() + e.sub_scope.size()) != arity_)
            throw ScopeMismatch("entry variables do not partition the scope");
        Slot s;
        s.itemset = e.itemset;
        std::vector<char> used(arity_, 0);
        for (const Literal& lit : e.itemset) {
            const int p = position(lit.var);
            if (used[p]++) throw ScopeMismatch("entry variables do not partition the scope");
            s.item_pos.push_back(p);
        }
        for (VarId x : e.sub_scope) {
            const int p = position(x);
            if (used[p]++) throw ScopeMismatch("entry variables do not partition the scope");
            s.sub_pos.push_back(p);
        }
        s.sub_tuples = e.sub_tuples;
        slots_.push_back(std::move(s));
    }
    if (!ct.default_tuples.empty()) {
        Slot df;
        df.sub_pos.resize(arity_);
        std::iota(df.sub_pos.begin(), df.sub_pos.end(), 0);
        df.sub_tuples = ct.default_tuples;
        slots_.push_back(std::move(df));
    }
    for (Slot& s : slots_) {
        s.order.resize(s.sub_tuples.size());
        std::iota(s.order.begin(), s.order.end(), 0);
        s.limit = static_cast<int>(s.sub_tuples.size()) - 1;
    }
    entry_position_.resize(slots_.size());
    std::iota(entry_position_.begin(), entry_position_.end(), 0);
    entries_limit_ = static_cast<int>(slots_.size()) - 1;
    last_sizes_.assign(arity_, -1);
    caps_.assign(arity_, 0);
    for (const Slot& s : slots_) {
        for (std::size_t k = 0; k < s.itemset.size(); ++k)
            caps_[s.item_pos[k]] = std::max(caps_[s.item_pos[k]], s.itemset[k].val + 1);
        for (const Tuple& sub : s.sub_tuples)
            for (std::size_t c = 0; c < s.sub_pos.size(); ++c)
                caps_[s.sub_pos[c]] = std::max(caps_[s.sub_pos[c]], sub[c] + 1);
    }
    seen_.resize(arity_);
}

bool StrMfic::slot_valid(int s) const {
    for (int i = 0; i <= entries_limit_; ++i)
        if (entry_position_[i] == s) return true;
    return false;
}

void StrMfic::trail_limit(int s) {
    const int depth = static_cast<int>(frames_.size());
    if (depth == 0 || slots_[s].trailed_level >= depth) return;
    limit_trail_.push_back({s, slots_[s].limit});
    slots_[s].trailed_level = depth;
}

void StrMfic::save_level() {
    frames_.push_back({entries_limit_, last_sizes_, limit_trail_.size()});
}

void StrMfic::restore_level() {
    if (frames_.empty()) throw UnderflowError("restore without matching save");
    const Frame& f = frames_.back();
    while (limit_trail_.size() > f.trail_mark) {
        const auto [s, lim] = limit_trail_.back();
        limit_trail_.pop_back();
        slots_[s].limit = lim;
        slots_[s].trailed_level = -1;
    }
    entries_limit_ = f.entries_limit;
    last_sizes_ = f.last_sizes;
    frames_.pop_back();
}

PropagationOutcome StrMfic::filter(DomainState& doms) {
    PropagationOutcome out;
    s_val_.clear();
    s_sup_.clear();
    val_mask_.assign(arity_, 0);
    for (int j = 0; j < arity_; ++j) {
        const VarId x = scope_[j];
        if (doms.size(x) != last_sizes_[j]) {
            s_val_.push_back(j);
            val_mask_[j] = 1;
        }
        if (doms.size(x) > 1) s_sup_.push_back(j);
    }
    if (s_val_.empty()) return out;

    auto sync = [&] {
        for (int j = 0; j < arity_; ++j) last_sizes_[j] = doms.size(scope_[j]);
    };

    int i = 0;
    while (i <= entries_limit_) {
        const int si = entry_position_[i];
        Slot& s = slots_[si];
        bool item_ok = true;
        for (std::size_t k = 0; k < s.itemset.size(); ++k) {
            const int p = s.item_pos[k];
            if (val_mask_[p] && !doms.contains(scope_[p], s.itemset[k].val)) {
                item_ok = false;
                break;
            }
        }
        bool entry_ok = item_ok;
        if (item_ok) {
            // Itemset intact: partition this entry's sub-table.
            int r = 0;
            while (r <= s.limit) {
                const Tuple& sub = s.sub_tuples[s.order[r]];
                bool ok = true;
                for (std::size_t c = 0; c < s.sub_pos.size(); ++c) {
                    const int p = s.sub_pos[c];
                    if (val_mask_[p] && !doms.contains(scope_[p], sub[c])) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    ++r;
                } else {
                    trail_limit(si);
                    std::swap(s.order[r], s.order[s.limit]);
                    --s.limit;
                }
            }
            entry_ok = s.limit >= 0;
        }
        // A dead itemset literal kills the entry without a sub-table scan.
        if (entry_ok) {
            ++i;
        } else {
            std::swap(entry_position_[i], entry_position_[entries_limit_]);
            --entries_limit_;
        }
    }
    if (entries_limit_ < 0) {
        wipe_scope(doms, scope_, s_sup_, out);
        sync();
        return out;
    }

    // Supports come from itemset literals of valid entries, their valid
    // sub-tuples, and valid default tuples.
    done_.assign(arity_, 0);
    found_.assign(arity_, 0);
    int pending = static_cast<int>(s_sup_.size());
    sup_mask_.assign(arity_, 0);
    for (int j : s_sup_) {
        seen_[j].assign(caps_[j], 0);
        sup_mask_[j] = 1;
    }
    auto mark = [&](int j, Value v) {
        if (!seen_[j][v]) {
            seen_[j][v] = 1;
            if (++found_[j] == doms.size(scope_[j])) {
                done_[j] = 1;
                --pending;
            }
        }
    };
    for (int idx = 0; idx <= entries_limit_ && pending > 0; ++idx) {
        const Slot& s = slots_[entry_position_[idx]];
        for (std::size_t k = 0; k < s.itemset.size(); ++k) {
            const int p = s.item_pos[k];
            if (sup_mask_[p] && !done_[p]) mark(p, s.itemset[k].val);
        }
        bool need_rows = false;
        for (int p : s.sub_pos)
            if (sup_mask_[p] && !done_[p]) {
                need_rows = true;
                break;
            }
        if (!need_rows) continue;
        for (int r = 0; r <= s.limit && pending > 0; ++r) {
            const Tuple& sub = s.sub_tuples[s.order[r]];
            for (std::size_t c = 0; c < s.sub_pos.size(); ++c) {
                const int p = s.sub_pos[c];
                if (sup_mask_[p] && !done_[p]) mark(p, sub[c]);
            }
        }
    }
    remove_unsupported(doms, scope_, s_sup_, done_, seen_, caps_, out);
    sync();
    return out;
}

// ----------------------------------------------------------------- GAC oracle

std::vector<std::vector<Value>> gac_oracle(const Instance& inst, const DomainState& doms) {
    constexpr long long kCheckGuard = 1'000'000;
    long long checks = 0;

    std::vector<std::vector<Value>> cur(inst.n_vars());
    std::vector<std::vector<char>> in(inst.n_vars());
    for (VarId x = 0; x < inst.n_vars(); ++x) {
        cur[x] = doms.values_sorted(x);
        const Value max_v = cur[x].empty() ? -1 : cur[x].back();
        in[x].assign(max_v + 1, 0);
        for (Value v : cur[x]) in[x][v] = 1;
    }
    auto member = [&](VarId x, Value v) {
        return v >= 0 && v < static_cast<Value>(in[x].size()) && in[x][v];
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (const TableConstraint& c : inst.constraints) {
            const int arity = c.arity();
            std::vector<std::vector<char>> supported(arity);
            for (int j = 0; j < arity; ++j) {
                Value cap = 0;
                for (const Tuple& t : c.tuples) cap = std::max(cap, t[j] + 1);
                supported[j].assign(cap, 0);
            }
            for (const Tuple& t : c.tuples) {
                if (++checks > kCheckGuard) throw TooLarge("gac oracle guard exceeded");
                bool valid = true;
                for (int j = 0; j < arity; ++j)
                    if (!member(c.scope[j], t[j])) {
                        valid = false;
                        break;
                    }
                if (!valid) continue;
                for (int j = 0; j < arity; ++j) supported[j][t[j]] = 1;
            }
            for (int j = 0; j < arity; ++j) {
                const VarId x = c.scope[j];
                std::vector<Value> keep;
                for (Value v : cur[x]) {
                    if (v < static_cast<Value>(supported[j].size()) && supported[j][v]) {
                        keep.push_back(v);
                    } else {
                        in[x][v] = 0;
                        changed = true;
                    }
                }
                cur[x] = std::move(keep);
            }
        }
    }
    return cur;
}

}  // namespace mfic
