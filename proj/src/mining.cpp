#include "mfic/mining.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace mfic {

namespace {

TidSet intersect(const TidSet& a, const TidSet& b) {
    TidSet out;
    out.reserve(std::min(a.size(), b.size()));
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Per-item occurrence counts over the transactions of `cover`. An item
// belongs to the closure of `cover` iff its count equals |cover|.
std::vector<int> occurrence_counts(const TransactionDB& db, const TidSet& cover) {
    std::vector<int> cnt(db.items.size(), 0);
    for (int tid : cover)
        for (int it : db.transactions[tid]) ++cnt[it];
    return cnt;
}

Itemset to_itemset(const TransactionDB& db, const std::vector<int>& item_ids) {
    Itemset u;
    u.reserve(item_ids.size());
    for (int id : item_ids) u.push_back(db.items[id]);
    return u;
}

// Depth-first closed-itemset enumeration over the vertical layout using
// prefix-preserving closure extensions. `floor` is re-read per node so a
// caller can raise the frequency bar while the search runs (top-k).
struct ClosedEnumerator {
    const TransactionDB& db;
    int s_min;
    std::function<int()> floor;
    std::function<void(const std::vector<int>&, const TidSet&)> emit;

    void run() const {
        if (db.n_transactions == 0 || db.n_transactions < s_min) return;
        TidSet all(db.n_transactions);
        std::iota(all.begin(), all.end(), 0);
        const auto cnt = occurrence_counts(db, all);
        std::vector<int> root;
        for (int i = 0; i < static_cast<int>(db.items.size()); ++i)
            if (cnt[i] == db.n_transactions) root.push_back(i);
        if (!root.empty()) emit(root, all);
        dfs(root, all, -1);
    }

    void dfs(const std::vector<int>& current, const TidSet& cover, int core) const {
        const int n_items = static_cast<int>(db.items.size());
        for (int i = core + 1; i < n_items; ++i) {
            if (std::binary_search(current.begin(), current.end(), i)) continue;
            TidSet child = intersect(cover, db.tid_lists[i]);
            const int f = static_cast<int>(child.size());
            if (f < s_min || f < floor()) continue;
            const auto cnt = occurrence_counts(db, child);
            std::vector<int> closed;
            closed.reserve(current.size() + 1);
            bool prefix_ok = true;
            for (int j = 0; j < n_items; ++j) {
                if (cnt[j] != f) continue;
                if (j < i && !std::binary_search(current.begin(), current.end(), j)) {
                    prefix_ok = false;
                    break;
                }
                closed.push_back(j);
            }
            if (!prefix_ok) continue;
            emit(closed, child);
            dfs(closed, child, i);
        }
    }
};

struct RawPattern {
    std::vector<int> item_ids;
    TidSet cover;
};

std::vector<RawPattern> enumerate_closed(const TransactionDB& db, int s_min) {
    std::vector<RawPattern> out;
    ClosedEnumerator e{db, s_min, [] { return 1; },
                       [&](const std::vector<int>& ids, const TidSet& cover) {
                           out.push_back({ids, cover});
                       }};
    e.run();
    return out;
}

std::vector<MinedPattern> finish(const TransactionDB& db, std::vector<RawPattern> raw) {
    std::vector<MinedPattern> out;
    out.reserve(raw.size());
    for (auto& r : raw) out.push_back({to_itemset(db, r.item_ids), std::move(r.cover)});
    std::sort(out.begin(), out.end(),
              [](const MinedPattern& a, const MinedPattern& b) { return a.itemset < b.itemset; });
    return out;
}

}  // namespace

bool operator==(const MinedPattern& a, const MinedPattern& b) {
    return a.itemset == b.itemset && a.cover == b.cover;
}

int TransactionDB::item_id(const Literal& lit) const {
    const auto it = std::lower_bound(items.begin(), items.end(), lit);
    if (it == items.end() || *it != lit) return -1;
    return static_cast<int>(it - items.begin());
}

TransactionDB make_transaction_db(int arity, const std::vector<std::vector<Literal>>& rows) {
    TransactionDB db;
    db.arity = arity;
    db.n_transactions = static_cast<int>(rows.size());
    std::vector<Literal> all;
    for (const auto& row : rows) {
        std::vector<VarId> vars;
        for (const Literal& lit : row) vars.push_back(lit.var);
        std::sort(vars.begin(), vars.end());
        if (std::adjacent_find(vars.begin(), vars.end()) != vars.end())
            throw Error("transaction holds two literals of one variable");
        all.insert(all.end(), row.begin(), row.end());
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    db.items = std::move(all);
    db.tid_lists.resize(db.items.size());
    db.transactions.resize(rows.size());
    for (int tid = 0; tid < db.n_transactions; ++tid) {
        for (const Literal& lit : rows[tid]) {
            const int id = db.item_id(lit);
            db.tid_lists[id].push_back(tid);
            db.transactions[tid].push_back(id);
        }
        std::sort(db.transactions[tid].begin(), db.transactions[tid].end());
    }
    return db;
}

TransactionDB to_transactions(const TableConstraint& table) {
    std::vector<std::vector<Literal>> rows;
    rows.reserve(table.tuples.size());
    for (const Tuple& t : table.tuples) {
        std::vector<Literal> row;
        row.reserve(table.scope.size());
        for (std::size_t j = 0; j < table.scope.size(); ++j)
            row.push_back({table.scope[j], t[j]});
        rows.push_back(std::move(row));
    }
    return make_transaction_db(table.arity(), rows);
}

TidSet coverage(const TransactionDB& db, const Itemset& u) {
    TidSet cover(db.n_transactions);
    std::iota(cover.begin(), cover.end(), 0);
    for (const Literal& lit : u) {
        const int id = db.item_id(lit);
        if (id < 0) return {};
        cover = intersect(cover, db.tid_lists[id]);
        if (cover.empty()) return cover;
    }
    return cover;
}

std::vector<MinedPattern> mine_closed(const TransactionDB& db, int s_min) {
    if (s_min < 1) throw InvalidThreshold("s_min must be >= 1");
    return finish(db, enumerate_closed(db, s_min));
}

std::vector<MinedPattern> mine_maximal(const TransactionDB& db, int s_min) {
    if (s_min < 1) throw InvalidThreshold("s_min must be >= 1");
    auto closed = enumerate_closed(db, s_min);
    std::vector<RawPattern> maximal;
    for (auto& p : closed) {
        // Maximal iff no single-item extension stays frequent. Occurrence
        // counts over the cover give freq(P + {j}) for every item j at once.
        const auto cnt = occurrence_counts(db, p.cover);
        bool ok = true;
        for (int j = 0; j < static_cast<int>(db.items.size()) && ok; ++j) {
            if (cnt[j] >= s_min &&
                !std::binary_search(p.item_ids.begin(), p.item_ids.end(), j))
                ok = false;
        }
        if (ok) maximal.push_back(std::move(p));
    }
    return finish(db, std::move(maximal));
}

std::vector<MinedPattern> topk_closed(const TransactionDB& db, int k) {
    if (k < 1) throw InvalidK("k must be >= 1");
    struct Better {
        bool operator()(const MinedPattern& a, const MinedPattern& b) const {
            if (a.freq() != b.freq()) return a.freq() > b.freq();
            if (a.itemset.size() != b.itemset.size()) return a.itemset.size() < b.itemset.size();
            return a.itemset < b.itemset;
        }
    };
    std::set<MinedPattern, Better> best;
    ClosedEnumerator e{
        db, 1,
        [&]() -> int {
            // Once k patterns are held, subtrees that cannot reach the
            // current k-th frequency are skipped.
            return static_cast<int>(best.size()) == k ? std::prev(best.end())->freq() : 1;
        },
        [&](const std::vector<int>& ids, const TidSet& cover) {
            MinedPattern p{to_itemset(db, ids), cover};
            if (static_cast<int>(best.size()) < k) {
                best.insert(std::move(p));
            } else if (Better{}(p, *std::prev(best.end()))) {
                best.erase(std::prev(best.end()));
                best.insert(std::move(p));
            }
        }};
    e.run();
    return {best.begin(), best.end()};
}

std::vector<MinedPattern> brute_force_patterns(const TransactionDB& db, int s_min,
                                               PatternKind kind) {
    if (s_min < 1) throw InvalidThreshold("s_min must be >= 1");
    const int n_items = static_cast<int>(db.items.size());
    if (n_items > 24) throw TooLarge("brute force guard: more than 24 items");

    std::vector<RawPattern> frequent;
    std::vector<int> chosen;
    // Plain subset recursion; infrequent branches cannot recover since
    // covers only shrink.
    std::function<void(int, const TidSet&)> rec = [&](int i, const TidSet& cover) {
        if (i == n_items) {
            if (!chosen.empty()) frequent.push_back({chosen, cover});
            return;
        }
        rec(i + 1, cover);
        TidSet with = intersect(cover, db.tid_lists[i]);
        if (static_cast<int>(with.size()) >= s_min) {
            chosen.push_back(i);
            rec(i + 1, with);
            chosen.pop_back();
        }
    };
    TidSet all(db.n_transactions);
    std::iota(all.begin(), all.end(), 0);
    if (db.n_transactions >= s_min) rec(0, all);

    std::vector<RawPattern> kept;
    for (auto& p : frequent) {
        bool keep = true;
        if (kind != PatternKind::frequent) {
            for (int j = 0; j < n_items && keep; ++j) {
                if (std::binary_search(p.item_ids.begin(), p.item_ids.end(), j)) continue;
                const int ext = static_cast<int>(intersect(p.cover, db.tid_lists[j]).size());
                if (kind == PatternKind::closed && ext == static_cast<int>(p.cover.size()))
                    keep = false;
                if (kind == PatternKind::maximal && ext >= s_min) keep = false;
            }
        }
        if (keep) kept.push_back(std::move(p));
    }
    return finish(db, std::move(kept));
}

}  // namespace mfic
