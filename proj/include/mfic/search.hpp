#pragma once

#include <optional>

#include "mfic/propagation.hpp"

namespace mfic {

struct SolveConfig {
    enum class Prop { str2, str_mfic };
    enum class VarHeur { min_dom, lex };
    enum class Mode { first, count_all };

    Prop propagator = Prop::str2;
    VarHeur var_heuristic = VarHeur::min_dom;
    Mode mode = Mode::first;
    std::optional<long long> node_limit;
    std::optional<double> time_limit_s;
    CompressionConfig compression;  // used when propagator == str_mfic
};

struct SolveStats {
    long long nodes = 0;
    long long backtracks = 0;
    long long filter_calls = 0;
    long long removals = 0;
    long long solution_count = 0;
    double wall_time_s = 0.0;
};

struct SolveResult {
    enum class Status { sat, unsat, limit_reached };

    Status status = Status::unsat;
    std::vector<Assignment> solutions;
    SolveStats stats;
};

// The unfixed variable to branch on, or -1 when all are fixed. min-dom
// picks the smallest current domain (ties to the smallest index).
VarId next_branch_var(const DomainState& doms, const SolveConfig& cfg);

// MAC backtracking search with d-way labeling: propagate to fixpoint at
// the root and after each assignment, backtrack on wipeout.
SolveResult solve(const Instance& inst, const SolveConfig& cfg = {});

}  // namespace mfic
