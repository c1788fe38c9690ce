#pragma once

#include <algorithm>
#include <vector>

#include "mfic/compression.hpp"
#include "mfic/mining.hpp"
#include "mfic/model.hpp"
#include "mfic/rng.hpp"

namespace fixtures {

using namespace mfic;

// The five-variable running example: scope (x0..x4), 11 tuples.
inline TableConstraint running_table() {
    TableConstraint t;
    t.scope = {0, 1, 2, 3, 4};
    t.tuples = {
        {0, 0, 0, 0, 2}, {0, 0, 0, 1, 2}, {0, 2, 0, 2, 0}, {0, 0, 1, 1, 2},
        {0, 0, 1, 2, 0}, {0, 0, 1, 3, 2}, {1, 0, 2, 1, 1}, {1, 0, 2, 3, 0},
        {1, 1, 2, 0, 1}, {1, 1, 2, 2, 2}, {1, 1, 2, 3, 0},
    };
    return t;
}

inline TableConstraint running_canonical() { return canonicalize(running_table()); }

inline Instance running_instance() {
    Instance inst;
    inst.domains = {{0, 1}, {0, 1, 2}, {0, 1, 2}, {0, 1, 2, 3}, {0, 1, 2}};
    inst.constraints = {running_canonical()};
    return inst;
}

// Index of a tuple in a canonical table; -1 when absent.
inline int tid_of(const TableConstraint& table, const Tuple& t) {
    const auto it = std::lower_bound(table.tuples.begin(), table.tuples.end(), t);
    if (it == table.tuples.end() || *it != t) return -1;
    return static_cast<int>(it - table.tuples.begin());
}

inline TidSet tids_of(const TableConstraint& table, const std::vector<Tuple>& ts) {
    TidSet out;
    for (const Tuple& t : ts) out.push_back(tid_of(table, t));
    std::sort(out.begin(), out.end());
    return out;
}

// The five-transaction A..E dataset, encoded as one variable per item
// (A=x0 .. E=x4, value 1 marks presence).
enum : VarId { A = 0, B = 1, C = 2, D = 3, E = 4 };

inline Literal item(VarId x) { return Literal{x, 1}; }

inline Itemset items(std::vector<VarId> vars) {
    std::sort(vars.begin(), vars.end());
    Itemset u;
    for (VarId x : vars) u.push_back(item(x));
    return u;
}

inline TransactionDB table1_db() {
    const std::vector<std::vector<VarId>> rows = {
        {C, D, E, A, B}, {E, B, C, D}, {E, C, D}, {D, A, C, E}, {E, C, A, B},
    };
    std::vector<std::vector<Literal>> lit_rows;
    for (const auto& row : rows) {
        std::vector<Literal> lits;
        for (VarId x : row) lits.push_back(item(x));
        lit_rows.push_back(std::move(lits));
    }
    return make_transaction_db(5, lit_rows);
}

// The six-row selection fixture: itemsets and covers as printed, including
// the two inconsistent rows (5 and 6).
inline std::vector<MinedPattern> printed_mfi_rows() {
    return {
        {{{0, 1}, {1, 1}, {2, 2}}, {8, 9, 10}},          // idx 1, area 9
        {{{0, 0}, {1, 0}, {2, 0}, {4, 2}}, {0, 1}},      // idx 2, area 8
        {{{0, 0}, {1, 0}, {2, 1}, {4, 2}}, {3, 5}},      // idx 3, area 8
        {{{0, 0}, {3, 2}, {4, 0}}, {2, 4}},              // idx 4, area 6
        {{{0, 1}, {1, 0}, {3, 1}, {4, 2}}, {1, 3}},      // idx 5, area 8
        {{{0, 0}, {2, 1}, {3, 3}, {4, 0}}, {7, 10}},     // idx 6, area 8
    };
}

// Compressed running table laid out entry-for-entry like the worked
// propagation example (e1..e4 plus a two-tuple default).
inline CompressedTable worked_compressed_fixture() {
    CompressedTable ct;
    ct.scope = {0, 1, 2, 3, 4};
    ct.arity = 5;
    ct.entries = {
        {{{0, 0}, {1, 0}, {2, 1}, {4, 2}}, {0, 1, 2, 4}, {3}, {{1}, {3}}},
        {{{0, 1}, {1, 1}, {2, 2}}, {0, 1, 2}, {3, 4}, {{0, 1}, {2, 2}, {3, 0}}},
        {{{0, 0}, {1, 0}, {2, 0}, {4, 2}}, {0, 1, 2, 4}, {3}, {{0}, {1}}},
        {{{0, 0}, {3, 2}, {4, 0}}, {0, 3, 4}, {1, 2}, {{2, 0}, {0, 1}}},
    };
    ct.default_tuples = {{1, 0, 2, 1, 1}, {1, 0, 2, 3, 0}};
    return ct;
}

// Small random tables / instances for property tests.
inline TableConstraint random_table(Rng& rng, int arity, int dom, int n_tuples) {
    TableConstraint t;
    for (int j = 0; j < arity; ++j) t.scope.push_back(j);
    for (int i = 0; i < n_tuples; ++i) {
        Tuple tp(arity);
        for (int j = 0; j < arity; ++j) tp[j] = static_cast<Value>(rng.below(dom));
        t.tuples.push_back(std::move(tp));
    }
    return canonicalize(t);
}

inline Instance random_instance(Rng& rng, int max_vars, int max_dom, int max_constraints,
                                int max_tuples) {
    Instance inst;
    const int n_vars = rng.range(2, max_vars);
    const int dom = rng.range(2, max_dom);
    for (int x = 0; x < n_vars; ++x) {
        std::vector<Value> d(dom);
        for (int v = 0; v < dom; ++v) d[v] = v;
        inst.domains.push_back(std::move(d));
    }
    const int n_cons = rng.range(1, max_constraints);
    for (int c = 0; c < n_cons; ++c) {
        const int arity = rng.range(2, std::min(4, n_vars));
        TableConstraint t;
        std::vector<VarId> pool(n_vars);
        for (int i = 0; i < n_vars; ++i) pool[i] = i;
        for (int i = 0; i < arity; ++i) {
            const int j = i + static_cast<int>(rng.below(n_vars - i));
            std::swap(pool[i], pool[j]);
            t.scope.push_back(pool[i]);
        }
        const int n_tuples = rng.range(1, max_tuples);
        for (int i = 0; i < n_tuples; ++i) {
            Tuple tp(arity);
            for (int j = 0; j < arity; ++j) tp[j] = static_cast<Value>(rng.below(dom));
            t.tuples.push_back(std::move(tp));
        }
        inst.constraints.push_back(canonicalize(t));
    }
    return inst;
}

inline std::vector<Itemset> itemsets_of(const std::vector<MinedPattern>& ps) {
    std::vector<Itemset> out;
    for (const auto& p : ps) out.push_back(p.itemset);
    return out;
}

}  // namespace fixtures
