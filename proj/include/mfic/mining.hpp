#pragma once

#include <compare>
#include <vector>

#include "mfic/model.hpp"

namespace mfic {

// A variable/value pair; the "item" of the transaction encoding.
struct Literal {
    VarId var;
    Value val;
    auto operator<=>(const Literal&) const = default;
};

// Sorted by (var, val); at most one literal per variable.
using Itemset = std::vector<Literal>;

// Strictly increasing tuple indices into the canonical table.
using TidSet = std::vector<int>;

// Vertical transaction layout of a table: one item per (variable, value)
// pair occurring in some tuple, one transaction per tuple.
struct TransactionDB {
    int arity = 0;
    int n_transactions = 0;
    std::vector<Literal> items;                  // sorted, distinct
    std::vector<TidSet> tid_lists;               // parallel to items
    std::vector<std::vector<int>> transactions;  // per tid: sorted item ids

    int item_id(const Literal& lit) const;  // -1 when absent
};

struct MinedPattern {
    Itemset itemset;
    TidSet cover;

    int freq() const { return static_cast<int>(cover.size()); }
};

bool operator==(const MinedPattern& a, const MinedPattern& b);

// Encodes a canonical table: item (x_j = v) gets the tid list of tuples
// whose j-th scope value is v.
TransactionDB to_transactions(const TableConstraint& table);

// General constructor for transaction rows that are not full tuples
// (at most one literal per variable per row).
TransactionDB make_transaction_db(int arity, const std::vector<std::vector<Literal>>& rows);

// Intersection of the tid lists of u's literals; empty if a literal is
// unknown to the database.
TidSet coverage(const TransactionDB& db, const Itemset& u);

// Closed frequent itemsets (no proper superset with the same cover),
// sorted by itemset. Throws InvalidThreshold if s_min < 1.
std::vector<MinedPattern> mine_closed(const TransactionDB& db, int s_min);

// Maximal frequent itemsets (no frequent proper superset), sorted by
// itemset. Throws InvalidThreshold if s_min < 1.
std::vector<MinedPattern> mine_maximal(const TransactionDB& db, int s_min);

// The min(k, total) closed patterns of highest frequency; ties broken by
// (higher freq, shorter itemset, lexicographic). Sorted in that order.
// Throws InvalidK if k < 1.
std::vector<MinedPattern> topk_closed(const TransactionDB& db, int k);

enum class PatternKind { frequent, closed, maximal };

// Exhaustive-enumeration reference for the three miners. Guarded to
// small databases; throws TooLarge above 24 items.
std::vector<MinedPattern> brute_force_patterns(const TransactionDB& db, int s_min,
                                               PatternKind kind);

}  // namespace mfic
