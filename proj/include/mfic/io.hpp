#pragma once

#include <cstdint>
#include <string>

#include "mfic/compression.hpp"

namespace mfic {

// Instance documents: `var <name> <values...>` declarations followed by
// `table <names...>` blocks holding one tuple per line, closed by `end`.
// Blank lines and lines starting with '#' are skipped. See docs/FORMATS.md.
Instance parse_instance(const std::string& text);
std::string write_instance(const Instance& inst);

// Compressed-table documents: a `compressed <scope>` header, one
// `entry .. sub .. end` block per entry, then a `default .. end` block.
CompressedTable parse_compressed(const std::string& text);
std::string write_compressed(const CompressedTable& ct);

struct GenParams {
    int n_vars = 0;
    int dom_size = 0;
    int arity = 0;
    int n_constraints = 0;
    int tuples_per_constraint = 0;
    std::uint64_t seed = 0;
};

// Uniform random instance: distinct scope variables per constraint and
// tuples drawn without replacement from the scope's value product.
// Same seed, same instance, on every platform.
Instance gen_random(const GenParams& p);

struct StatsRow {
    std::string instance;
    std::string method;
    CompressionStats comp;
    std::string solved;  // sat | unsat | limit
    long long nodes = 0;
    double time_s = 0.0;
};

// CSV with the fixed header instance,method,c_tup_pct,c_rate_pct,
// n_itemsets,avg_len,avg_freq,solved,nodes,time_s (two decimal places).
std::string write_stats_csv(const std::vector<StatsRow>& rows);

}  // namespace mfic
