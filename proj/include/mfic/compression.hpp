#pragma once

#include <utility>
#include <vector>

#include "mfic/mining.hpp"

namespace mfic {

// A selected itemset plus the leftover fragments of the tuples it covers.
struct Entry {
    Itemset itemset;               // 1 <= |itemset| < arity
    std::vector<VarId> item_vars;  // variables of the itemset, itemset order
    std::vector<VarId> sub_scope;  // remaining scope variables, original scope order
    std::vector<Tuple> sub_tuples; // one per covered tuple, source index order; >= 2
};

// Lossless re-encoding of one table: non-overlapping entries plus the
// tuples no selected itemset covers.
struct CompressedTable {
    std::vector<VarId> scope;
    int arity = 0;
    std::vector<Entry> entries;       // selection order
    std::vector<Tuple> default_tuples;
};

struct CompressionConfig {
    enum class Smin { min, avg };
    enum class Metric { area, savings };

    double k_ratio = 0.4;          // top-k size as a fraction of the tuple count
    Smin smin_strategy = Smin::avg;
    Metric metric = Metric::area;
    int min_freq_floor = 2;        // an itemset must cover at least two tuples
};

struct CompressionStats {
    double c_tup_pct = 0.0;   // share of tuples sitting in entries
    double c_rate_pct = 0.0;  // cell-count reduction
    int n_itemsets = 0;
    double avg_len = 0.0;
    double avg_freq = 0.0;
    long long cells_before = 0;
    long long cells_after = 0;
};

// Scoring metrics.
long long area(const Itemset& u, int freq);              // |u| * f
long long savings(const Itemset& u, int freq);           // |u| * (f - 1)
double local_rate(int u_len, int freq, int arity);       // 1 - size_a / size_b
double global_rate(const std::vector<std::pair<int, int>>& selected, int arity,
                   int n_tuples);                        // saved cells / table cells

// Frequency threshold from the top-k closed patterns:
// k = max(1, ceil(k_ratio * n)), then min or floored mean of the returned
// frequencies, clamped to min_freq_floor. Throws EmptyDb.
int choose_smin(const TransactionDB& db, const CompressionConfig& cfg);

// Greedy non-overlapping selection: repeatedly take the best-scoring
// remaining pattern and discard everything whose cover intersects it.
// Ties break by higher frequency, then lexicographically smaller itemset.
std::vector<MinedPattern> select_patterns(std::vector<MinedPattern> mfis,
                                          CompressionConfig::Metric metric);

// Entry construction for an explicit selection (covers must be pairwise
// disjoint and consistent with the table).
CompressedTable build_compressed(const TableConstraint& table,
                                 const std::vector<MinedPattern>& selection);

// Full pipeline: choose_smin -> mine_maximal -> select_patterns -> entries.
// Tables with arity < 2 or fewer than 2 tuples come back uncompressed.
CompressedTable compress_table(const TableConstraint& table,
                               const CompressionConfig& cfg = {});

// Inverse of entry construction; result is canonical. Throws ScopeMismatch
// if an entry's variables do not partition the scope.
TableConstraint decompress(const CompressedTable& ct);

CompressionStats compression_stats(const TableConstraint& table, const CompressedTable& ct);

}  // namespace mfic
