#include "mfic/compression.hpp"

#include <algorithm>
#include <cmath>

namespace mfic {

namespace {

void check_config(const CompressionConfig& cfg) {
    if (!(cfg.k_ratio > 0.0 && cfg.k_ratio <= 1.0))
        throw InvalidConfig("k_ratio must lie in (0, 1]");
    if (cfg.min_freq_floor < 2) throw InvalidConfig("min_freq_floor must be >= 2");
}

long long score_of(const MinedPattern& p, CompressionConfig::Metric metric) {
    return metric == CompressionConfig::Metric::area ? area(p.itemset, p.freq())
                                                     : savings(p.itemset, p.freq());
}

}  // namespace

long long area(const Itemset& u, int freq) {
    return static_cast<long long>(u.size()) * freq;
}

long long savings(const Itemset& u, int freq) {
    return static_cast<long long>(u.size()) * (freq - 1);
}

double local_rate(int u_len, int freq, int arity) {
    const double size_a = u_len + static_cast<double>(arity - u_len) * freq;
    const double size_b = static_cast<double>(arity) * freq;
    return 1.0 - size_a / size_b;
}

double global_rate(const std::vector<std::pair<int, int>>& selected, int arity,
                   int n_tuples) {
    long long saved = 0;
    for (const auto& [u_len, f] : selected)
        saved += static_cast<long long>(arity) * f -
                 (u_len + static_cast<long long>(arity - u_len) * f);
    return static_cast<double>(saved) / (static_cast<double>(arity) * n_tuples);
}

int choose_smin(const TransactionDB& db, const CompressionConfig& cfg) {
    check_config(cfg);
    if (db.n_transactions == 0) throw EmptyDb("cannot pick a threshold for an empty database");
    const int k = std::max(1, static_cast<int>(std::ceil(cfg.k_ratio * db.n_transactions)));
    const auto top = topk_closed(db, k);
    if (top.empty()) return cfg.min_freq_floor;
    int smin;
    if (cfg.smin_strategy == CompressionConfig::Smin::min) {
        smin = top.back().freq();  // sorted by descending frequency
    } else {
        long long sum = 0;
        for (const auto& p : top) sum += p.freq();
        smin = static_cast<int>(sum / static_cast<long long>(top.size()));
    }
    return std::max(smin, cfg.min_freq_floor);
}

std::vector<MinedPattern> select_patterns(std::vector<MinedPattern> mfis,
                                          CompressionConfig::Metric metric) {
    std::sort(mfis.begin(), mfis.end(), [&](const MinedPattern& a, const MinedPattern& b) {
        const long long sa = score_of(a, metric), sb = score_of(b, metric);
        if (sa != sb) return sa > sb;
        if (a.freq() != b.freq()) return a.freq() > b.freq();
        return a.itemset < b.itemset;
    });
    int max_tid = -1;
    for (const auto& p : mfis)
        if (!p.cover.empty()) max_tid = std::max(max_tid, p.cover.back());
    std::vector<char> covered(max_tid + 1, 0);
    // Walking the sorted list and keeping whatever is disjoint from the
    // selection so far removes exactly the patterns an eager overlap sweep
    // (quadratic in the pattern count) would, in linear cover work.
    std::vector<MinedPattern> selection;
    for (auto& p : mfis) {
        bool overlap = false;
        for (int tid : p.cover)
            if (covered[tid]) { overlap = true; break; }
        if (overlap) continue;
        for (int tid : p.cover) covered[tid] = 1;
        selection.push_back(std::move(p));
    }
    return selection;
}

CompressedTable build_compressed(const TableConstraint& table,
                                 const std::vector<MinedPattern>& selection) {
    const int arity = table.arity();
    CompressedTable ct;
    ct.scope = table.scope;
    ct.arity = arity;
    std::vector<char> covered(table.tuples.size(), 0);
    for (const MinedPattern& p : selection) {
        const int len = static_cast<int>(p.itemset.size());
        if (len < 1 || len >= arity)
            throw Error("entry itemset length must lie in [1, arity)");
        if (p.freq() < 2) throw Error("entry must cover at least two tuples");
        Entry e;
        e.itemset = p.itemset;
        std::vector<char> in_itemset(arity, 0);
        for (const Literal& lit : p.itemset) {
            e.item_vars.push_back(lit.var);
            const auto it = std::find(table.scope.begin(), table.scope.end(), lit.var);
            if (it == table.scope.end())
                throw ScopeMismatch("itemset variable outside the table scope");
            in_itemset[it - table.scope.begin()] = 1;
        }
        std::vector<int> sub_pos;
        for (int j = 0; j < arity; ++j)
            if (!in_itemset[j]) {
                e.sub_scope.push_back(table.scope[j]);
                sub_pos.push_back(j);
            }
        for (int tid : p.cover) {
            if (covered[tid]) throw Error("selection covers a tuple twice");
            covered[tid] = 1;
            const Tuple& t = table.tuples[tid];
            Tuple sub(sub_pos.size());
            for (std::size_t j = 0; j < sub_pos.size(); ++j) sub[j] = t[sub_pos[j]];
            e.sub_tuples.push_back(std::move(sub));
        }
        ct.entries.push_back(std::move(e));
    }
    for (std::size_t tid = 0; tid < table.tuples.size(); ++tid)
        if (!covered[tid]) ct.default_tuples.push_back(table.tuples[tid]);
    return ct;
}

CompressedTable compress_table(const TableConstraint& table, const CompressionConfig& cfg) {
    check_config(cfg);
    if (table.arity() < 2 || table.tuples.size() < 2) {
        CompressedTable ct;
        ct.scope = table.scope;
        ct.arity = table.arity();
        ct.default_tuples = table.tuples;
        return ct;
    }
    const TransactionDB db = to_transactions(table);
    const int smin = choose_smin(db, cfg);
    const auto mfis = mine_maximal(db, smin);
    const auto selection = select_patterns(mfis, cfg.metric);
    return build_compressed(table, selection);
}

TableConstraint decompress(const CompressedTable& ct) {
    std::vector<int> pos_of;  // var id -> scope position
    {
        VarId max_var = -1;
        for (VarId x : ct.scope) max_var = std::max(max_var, x);
        pos_of.assign(max_var + 1, -1);
        for (int j = 0; j < ct.arity; ++j) pos_of[ct.scope[j]] = j;
    }
    auto position = [&](VarId x) {
        if (x < 0 || x >= static_cast<int>(pos_of.size()) || pos_of[x] < 0)
            throw ScopeMismatch("entry variable outside the table scope");
        return pos_of[x];
    };

    TableConstraint out;
    out.scope = ct.scope;
    for (const Entry& e : ct.entries) {
        if (static_cast<int>(e.item_vars.size() + e.sub_scope.size()) != ct.arity)
            throw ScopeMismatch("entry variables do not partition the scope");
        std::vector<char> seen(ct.arity, 0);
        Tuple base(ct.arity, -1);
        for (std::size_t i = 0; i < e.itemset.size(); ++i) {
            const int j = position(e.item_vars[i]);
            if (seen[j]++) throw ScopeMismatch("entry variables do not partition the scope");
            base[j] = e.itemset[i].val;
        }
        std::vector<int> sub_pos;
        for (VarId x : e.sub_scope) {
            const int j = position(x);
            if (seen[j]++) throw ScopeMismatch("entry variables do not partition the scope");
            sub_pos.push_back(j);
        }
        for (const Tuple& sub : e.sub_tuples) {
            Tuple full = base;
            for (std::size_t j = 0; j < sub_pos.size(); ++j) full[sub_pos[j]] = sub[j];
            out.tuples.push_back(std::move(full));
        }
    }
    out.tuples.insert(out.tuples.end(), ct.default_tuples.begin(), ct.default_tuples.end());
    return canonicalize(out);
}

CompressionStats compression_stats(const TableConstraint& table, const CompressedTable& ct) {
    CompressionStats s;
    const int arity = table.arity();
    const long long n = static_cast<long long>(table.tuples.size());
    s.cells_before = arity * n;
    long long compressed = 0, len_sum = 0, freq_sum = 0;
    for (const Entry& e : ct.entries) {
        const long long len = static_cast<long long>(e.itemset.size());
        const long long f = static_cast<long long>(e.sub_tuples.size());
        s.cells_after += len + (arity - len) * f;
        compressed += f;
        len_sum += len;
        freq_sum += f;
    }
    s.cells_after += arity * static_cast<long long>(ct.default_tuples.size());
    s.n_itemsets = static_cast<int>(ct.entries.size());
    if (n > 0) {
        s.c_tup_pct = 100.0 * static_cast<double>(compressed) / static_cast<double>(n);
        s.c_rate_pct = 100.0 * (1.0 - static_cast<double>(s.cells_after) /
                                          static_cast<double>(s.cells_before));
    }
    if (s.n_itemsets > 0) {
        s.avg_len = static_cast<double>(len_sum) / s.n_itemsets;
        s.avg_freq = static_cast<double>(freq_sum) / s.n_itemsets;
    }
    return s;
}

}  // namespace mfic
