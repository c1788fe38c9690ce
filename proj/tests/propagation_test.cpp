#include <memory>

#include "doctest.h"
#include "fixtures.hpp"
#include "mfic/propagation.hpp"

using namespace mfic;
using namespace fixtures;

namespace {

std::vector<std::vector<Value>> snapshot(const DomainState& doms) {
    std::vector<std::vector<Value>> out;
    for (VarId x = 0; x < doms.n_vars(); ++x) out.push_back(doms.values_sorted(x));
    return out;
}

// Round-robin fixpoint over a set of propagators; false on wipeout.
bool fixpoint(std::vector<std::unique_ptr<Propagator>>& props, DomainState& doms) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto& p : props) {
            const auto out = p->filter(doms);
            if (out.wiped()) return false;
            changed |= !out.removed.empty();
        }
    }
    return true;
}

std::vector<Literal> sorted_removals(PropagationOutcome out) {
    std::sort(out.removed.begin(), out.removed.end());
    return out.removed;
}

}  // namespace

TEST_SUITE("propagation") {

TEST_CASE("domain state removal and restore") {
    DomainState doms(std::vector<std::vector<Value>>{{0, 2, 5}, {1, 3}});
    CHECK(doms.size(0) == 3);
    CHECK(doms.contains(0, 5));
    CHECK_FALSE(doms.contains(0, 1));

    doms.save_level();
    doms.remove(0, 2);
    doms.remove(1, 3);
    CHECK(doms.values_sorted(0) == std::vector<Value>{0, 5});
    CHECK(doms.fixed(1));
    CHECK(doms.sole_value(1) == 1);

    doms.save_level();
    doms.remove(0, 0);
    CHECK(doms.values_sorted(0) == std::vector<Value>{5});
    doms.restore_level();
    CHECK(doms.values_sorted(0) == std::vector<Value>{0, 5});
    doms.restore_level();
    CHECK(doms.values_sorted(0) == std::vector<Value>{0, 2, 5});
    CHECK(doms.values_sorted(1) == std::vector<Value>{1, 3});

    CHECK_THROWS_AS(doms.restore_level(), UnderflowError);
}

TEST_CASE("str2 on the running table with full domains") {
    const auto inst = running_instance();
    DomainState doms(inst);
    Str2 prop(running_canonical());
    const auto out = prop.filter(doms);
    CHECK_FALSE(out.wiped());
    CHECK(out.removed.empty());
    CHECK(prop.limit() == 10);

    // Idempotence: nothing changed, so nothing happens.
    const auto again = prop.filter(doms);
    CHECK(again.removed.empty());
    CHECK_FALSE(again.wiped());
}

TEST_CASE("str2 reacts to x2 != 2") {
    const auto inst = running_instance();
    DomainState doms(inst);
    Str2 prop(running_canonical());
    REQUIRE_FALSE(prop.filter(doms).wiped());

    doms.remove(2, 2);
    const auto out = prop.filter(doms);
    CHECK_FALSE(out.wiped());
    CHECK(sorted_removals(out) == std::vector<Literal>{{0, 1}, {1, 1}, {4, 1}});
    CHECK(prop.limit() == 5);  // the six x0=0 tuples stay
    const auto table = running_canonical();
    CHECK(prop.valid_tuples() ==
          tids_of(table, {{0, 0, 0, 0, 2},
                          {0, 0, 0, 1, 2},
                          {0, 2, 0, 2, 0},
                          {0, 0, 1, 1, 2},
                          {0, 0, 1, 2, 0},
                          {0, 0, 1, 3, 2}}));
}

TEST_CASE("the root pass removes tuples with out-of-domain values") {
    // Ingest keeps such tuples; the first filter call drops them.
    TableConstraint t;
    t.scope = {0, 1};
    t.tuples = {{0, 0}, {0, 7}, {1, 1}};
    Instance inst;
    inst.domains = {{0, 1}, {0, 1}};
    inst.constraints = {canonicalize(t)};

    DomainState d1(inst);
    Str2 s2(canonicalize(t));
    CHECK_FALSE(s2.filter(d1).wiped());
    CHECK(s2.valid_tuples() == std::vector<int>{0, 2});

    DomainState d2(inst);
    CompressedTable ct;
    ct.scope = {0, 1};
    ct.arity = 2;
    ct.default_tuples = t.tuples;
    StrMfic mf(ct);
    CHECK_FALSE(mf.filter(d2).wiped());
    CHECK(mf.valid_sub_count(0) == 2);
    CHECK(snapshot(d1) == snapshot(d2));
}

TEST_CASE("str2 wipes out when the only tuple dies") {
    TableConstraint t;
    t.scope = {0, 1};
    t.tuples = {{0, 1}};
    Instance inst;
    inst.domains = {{0, 1}, {0, 1}};
    inst.constraints = {canonicalize(t)};
    DomainState doms(inst);
    Str2 prop(canonicalize(t));
    REQUIRE_FALSE(prop.filter(doms).wiped());
    doms.remove(1, 1);
    const auto out = prop.filter(doms);
    CHECK(out.wiped());
    CHECK(doms.size(out.wipeout_var) == 0);
}

TEST_CASE("str-mfic walks the worked compressed example") {
    const auto ct = worked_compressed_fixture();
    CHECK(decompress(ct).tuples == running_canonical().tuples);

    const auto inst = running_instance();
    DomainState doms(inst);
    StrMfic prop(ct);
    REQUIRE_FALSE(prop.filter(doms).wiped());
    CHECK(prop.entries_limit() == 4);  // four entries plus the default, all valid

    doms.save_level();
    prop.save_level();
    doms.remove(1, 0);  // the event x1 != 0
    const auto out = prop.filter(doms);
    CHECK_FALSE(out.wiped());

    // e2 and e4 survive; e1, e3 and the default drop.
    CHECK(prop.entries_limit() == 1);
    CHECK_FALSE(prop.slot_valid(0));
    CHECK(prop.slot_valid(1));
    CHECK_FALSE(prop.slot_valid(2));
    CHECK(prop.slot_valid(3));
    CHECK_FALSE(prop.slot_valid(4));
    CHECK(prop.slot_is_default(4));
    CHECK(prop.valid_sub_count(1) == 3);
    CHECK(prop.valid_sub_count(3) == 1);  // only (x1=2, x2=0) remains
    CHECK(prop.valid_sub_count(4) == 0);  // both default tuples invalid

    CHECK(sorted_removals(out) == std::vector<Literal>{{2, 1}, {3, 1}});
    CHECK(doms.values_sorted(2) == std::vector<Value>{0, 2});
    CHECK(doms.values_sorted(3) == std::vector<Value>{0, 2, 3});

    // Cross-check the fixpoint against the oracle on the plain table.
    Instance plain = inst;
    plain.constraints = {decompress(ct)};
    DomainState fresh(inst);
    fresh.remove(1, 0);
    const auto oracle = gac_oracle(plain, fresh);
    CHECK(snapshot(doms) == oracle);

    // Backtracking restores every limit.
    prop.restore_level();
    doms.restore_level();
    CHECK(prop.entries_limit() == 4);
    CHECK(prop.valid_sub_count(3) == 2);
    CHECK(prop.valid_sub_count(4) == 2);
    CHECK(doms.values_sorted(1) == std::vector<Value>{0, 1, 2});
    const auto noop = prop.filter(doms);
    CHECK(noop.removed.empty());
}

TEST_CASE("an entry dies without a sub-table scan when its itemset dies") {
    // The skipped entry contributes no supports, exactly like scanning
    // its decompressed tuples would.
    const auto ct = worked_compressed_fixture();
    const auto inst = running_instance();
    DomainState doms(inst);
    StrMfic prop(ct);
    REQUIRE_FALSE(prop.filter(doms).wiped());
    doms.remove(0, 0);  // kills e1, e3, e4 through their itemsets
    REQUIRE_FALSE(prop.filter(doms).wiped());
    CHECK_FALSE(prop.slot_valid(0));
    CHECK_FALSE(prop.slot_valid(2));
    CHECK_FALSE(prop.slot_valid(3));
    // Their sub-limits were left untouched.
    CHECK(prop.valid_sub_count(0) == 2);
    CHECK(prop.valid_sub_count(2) == 2);
    CHECK(prop.valid_sub_count(3) == 2);

    Instance plain = inst;
    plain.constraints = {decompress(ct)};
    DomainState fresh(inst);
    fresh.remove(0, 0);
    CHECK(snapshot(doms) == gac_oracle(plain, fresh));
}

TEST_CASE("restore without a save underflows") {
    Str2 s2(running_canonical());
    CHECK_THROWS_AS(s2.restore_level(), UnderflowError);
    StrMfic mf(worked_compressed_fixture());
    CHECK_THROWS_AS(mf.restore_level(), UnderflowError);
}

TEST_CASE("nested save/filter/restore equals a freshly built state") {
    Rng rng(53);
    for (int round = 0; round < 40; ++round) {
        const auto inst = random_instance(rng, 5, 4, 2, 25);
        DomainState doms(inst);
        std::vector<std::unique_ptr<Propagator>> props;
        for (const auto& c : inst.constraints) {
            if (round % 2 == 0)
                props.push_back(std::make_unique<Str2>(c));
            else
                props.push_back(std::make_unique<StrMfic>(compress_table(c)));
        }
        if (!fixpoint(props, doms)) continue;
        const auto base = snapshot(doms);

        const int depth = 5;
        int saved = 0;
        for (int d = 0; d < depth; ++d) {
            doms.save_level();
            for (auto& p : props) p->save_level();
            ++saved;
            const VarId x = static_cast<VarId>(rng.below(inst.n_vars()));
            if (doms.size(x) > 1) {
                const auto vals = doms.values_sorted(x);
                doms.remove(x, vals[rng.below(vals.size())]);
            }
            if (!fixpoint(props, doms)) break;
        }
        for (int d = 0; d < saved; ++d) {
            for (auto& p : props) p->restore_level();
            doms.restore_level();
        }
        CHECK(snapshot(doms) == base);

        // A rebuilt propagator set on the same domains behaves identically.
        std::vector<std::unique_ptr<Propagator>> fresh;
        for (const auto& c : inst.constraints) {
            if (round % 2 == 0)
                fresh.push_back(std::make_unique<Str2>(c));
            else
                fresh.push_back(std::make_unique<StrMfic>(compress_table(c)));
        }
        DomainState doms2(inst);
        REQUIRE(fixpoint(fresh, doms2));
        CHECK(snapshot(doms2) == base);
        if (round % 2 == 0) {
            for (std::size_t i = 0; i < props.size(); ++i) {
                auto* a = dynamic_cast<Str2*>(props[i].get());
                auto* b = dynamic_cast<Str2*>(fresh[i].get());
                CHECK(a->valid_tuples() == b->valid_tuples());
            }
        }
    }
}

TEST_CASE("gac oracle on the running instance") {
    const auto inst = running_instance();
    DomainState doms(inst);
    const auto full = gac_oracle(inst, doms);
    CHECK(full == snapshot(doms));  // everything supported

    doms.remove(1, 0);
    const auto after = gac_oracle(inst, doms);
    CHECK(after[0] == std::vector<Value>{0, 1});
    CHECK(after[1] == std::vector<Value>{1, 2});
    CHECK(after[2] == std::vector<Value>{0, 2});
    CHECK(after[3] == std::vector<Value>{0, 2, 3});
    CHECK(after[4] == std::vector<Value>{0, 1, 2});
}

TEST_CASE("gac oracle with an empty relation supports nothing") {
    Instance inst;
    inst.domains = {{0, 1}, {0, 1}};
    TableConstraint t;
    t.scope = {0, 1};
    inst.constraints = {canonicalize(t)};
    DomainState doms(inst);
    const auto got = gac_oracle(inst, doms);
    CHECK(got[0].empty());
    CHECK(got[1].empty());
}

TEST_CASE("gac oracle guard trips on oversized instances") {
    TableConstraint t;
    t.scope = {0, 1};
    for (Value a = 0; a < 1001; ++a)
        for (Value b = 0; b < 1000; ++b) t.tuples.push_back({a, b});
    Instance inst;
    std::vector<Value> dom_a(1001), dom_b(1000);
    for (int v = 0; v < 1001; ++v) dom_a[v] = v;
    for (int v = 0; v < 1000; ++v) dom_b[v] = v;
    inst.domains = {dom_a, dom_b};
    inst.constraints = {canonicalize(t)};
    DomainState doms(inst);
    CHECK_THROWS_AS(gac_oracle(inst, doms), TooLarge);
}

TEST_CASE("propagators agree with the oracle under random events") {
    Rng rng(59);
    for (int round = 0; round < 60; ++round) {
        const auto inst = random_instance(rng, 5, 4, 3, 30);
        // d_evt carries the raw events only, so the oracle is computed
        // from what the search would have done, not from filtered state.
        DomainState d_str2(inst), d_mfic(inst), d_evt(inst);
        std::vector<std::unique_ptr<Propagator>> p_str2, p_mfic;
        for (const auto& c : inst.constraints) {
            p_str2.push_back(std::make_unique<Str2>(c));
            p_mfic.push_back(std::make_unique<StrMfic>(compress_table(c)));
        }
        bool ok2 = fixpoint(p_str2, d_str2);
        bool okm = fixpoint(p_mfic, d_mfic);
        for (int ev = 0; ev < 6; ++ev) {
            CHECK(ok2 == okm);
            const auto oracle = gac_oracle(inst, d_evt);
            const bool oracle_wiped =
                std::any_of(oracle.begin(), oracle.end(),
                            [](const std::vector<Value>& d) { return d.empty(); });
            CHECK(oracle_wiped == !ok2);
            if (!ok2 || !okm) break;
            CHECK(snapshot(d_str2) == oracle);
            CHECK(snapshot(d_mfic) == oracle);

            // Events mimic search decisions: they never empty a domain
            // outright (only propagation may wipe out).
            VarId x = -1;
            for (int tries = 0; tries < 20 && x < 0; ++tries) {
                const VarId cand = static_cast<VarId>(rng.below(inst.n_vars()));
                if (d_str2.size(cand) >= 2) x = cand;
            }
            if (x < 0) break;
            const auto vals = d_str2.values_sorted(x);
            const Value v = vals[rng.below(vals.size())];
            d_str2.remove(x, v);
            d_mfic.remove(x, v);
            d_evt.remove(x, v);
            ok2 = fixpoint(p_str2, d_str2);
            okm = fixpoint(p_mfic, d_mfic);
        }
    }
}

}  // TEST_SUITE
