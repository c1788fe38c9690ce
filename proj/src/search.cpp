#include "mfic/search.hpp"

#include <chrono>
#include <functional>
#include <limits>
#include <memory>

namespace mfic {

VarId next_branch_var(const DomainState& doms, const SolveConfig& cfg) {
    VarId best = -1;
    int best_size = std::numeric_limits<int>::max();
    for (VarId x = 0; x < doms.n_vars(); ++x) {
        const int s = doms.size(x);
        if (s <= 1) continue;
        if (cfg.var_heuristic == SolveConfig::VarHeur::lex) return x;
        if (s < best_size) {
            best = x;
            best_size = s;
        }
    }
    return best;
}

SolveResult solve(const Instance& inst, const SolveConfig& cfg) {
    if (cfg.node_limit && *cfg.node_limit <= 0) throw Error("node limit must be positive");
    if (cfg.time_limit_s && *cfg.time_limit_s <= 0) throw Error("time limit must be positive");

    const auto start = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    SolveResult res;
    DomainState doms(inst);

    std::vector<std::unique_ptr<Propagator>> props;
    for (const TableConstraint& c : inst.constraints) {
        TableConstraint canon = canonicalize(c);
        if (cfg.propagator == SolveConfig::Prop::str2)
            props.push_back(std::make_unique<Str2>(std::move(canon)));
        else
            props.push_back(std::make_unique<StrMfic>(compress_table(canon, cfg.compression)));
    }
    std::vector<std::vector<int>> watchers(inst.n_vars());
    for (std::size_t i = 0; i < props.size(); ++i)
        for (VarId x : props[i]->scope()) watchers[x].push_back(static_cast<int>(i));

    // Constraint-oriented FIFO, re-seeded by removals until fixpoint.
    std::vector<int> queue;
    std::vector<char> queued(props.size(), 0);
    auto enqueue = [&](int ci) {
        if (!queued[ci]) {
            queued[ci] = 1;
            queue.push_back(ci);
        }
    };
    auto propagate = [&]() -> bool {
        bool ok = true;
        std::size_t head = 0;
        while (head < queue.size()) {
            const int ci = queue[head++];
            queued[ci] = 0;
            ++res.stats.filter_calls;
            const PropagationOutcome out = props[ci]->filter(doms);
            res.stats.removals += static_cast<long long>(out.removed.size());
            if (out.wiped()) {
                ok = false;
                break;
            }
            for (const Literal& lit : out.removed)
                for (int wi : watchers[lit.var])
                    if (wi != ci) enqueue(wi);
        }
        for (int ci : queue) queued[ci] = 0;
        queue.clear();
        return ok;
    };

    for (std::size_t i = 0; i < props.size(); ++i) enqueue(static_cast<int>(i));
    if (!propagate()) {
        res.status = SolveResult::Status::unsat;
        res.stats.wall_time_s = elapsed();
        return res;
    }

    bool limit_hit = false;
    auto found_enough = [&] {
        return cfg.mode == SolveConfig::Mode::first && res.stats.solution_count > 0;
    };

    std::function<void()> dfs = [&] {
        const VarId x = next_branch_var(doms, cfg);
        if (x < 0) {
            Assignment a(inst.n_vars());
            for (VarId y = 0; y < inst.n_vars(); ++y) a[y] = doms.sole_value(y);
            res.solutions.push_back(std::move(a));
            ++res.stats.solution_count;
            return;
        }
        const std::vector<Value> vals = doms.values_sorted(x);
        for (Value v : vals) {
            if (limit_hit || found_enough()) return;
            ++res.stats.nodes;
            if (cfg.node_limit && res.stats.nodes > *cfg.node_limit) {
                limit_hit = true;
                return;
            }
            if (cfg.time_limit_s && (res.stats.nodes & 1023) == 0 &&
                elapsed() > *cfg.time_limit_s) {
                limit_hit = true;
                return;
            }
            doms.save_level();
            for (auto& p : props) p->save_level();
            for (Value w : vals)
                if (w != v) doms.remove(x, w);
            for (int wi : watchers[x]) enqueue(wi);
            if (propagate())
                dfs();
            else
                ++res.stats.backtracks;
            for (auto& p : props) p->restore_level();
            doms.restore_level();
        }
    };
    dfs();

    res.stats.wall_time_s = elapsed();
    if (limit_hit)
        res.status = SolveResult::Status::limit_reached;
    else
        res.status = res.stats.solution_count > 0 ? SolveResult::Status::sat
                                                  : SolveResult::Status::unsat;
    return res;
}

}  // namespace mfic
