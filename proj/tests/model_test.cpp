#include "doctest.h"
#include "fixtures.hpp"

using namespace mfic;
using namespace fixtures;

TEST_SUITE("model") {

TEST_CASE("canonicalize dedups and sorts") {
    TableConstraint t;
    t.scope = {0, 1};
    t.tuples = {{1, 0}, {0, 1}, {1, 0}};
    const auto c = canonicalize(t);
    CHECK(c.tuples == std::vector<Tuple>{{0, 1}, {1, 0}});
    CHECK(c.scope == t.scope);
}

TEST_CASE("canonicalize keeps the running table's tuple set") {
    const auto c = running_canonical();
    CHECK(c.tuples.size() == 11);
    for (const Tuple& t : running_table().tuples) CHECK(tid_of(c, t) >= 0);
}

TEST_CASE("canonicalize on an empty table") {
    TableConstraint t;
    t.scope = {0, 1, 2};
    CHECK(canonicalize(t).tuples.empty());
}

TEST_CASE("canonicalize is idempotent") {
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        const auto t = random_table(rng, rng.range(2, 5), rng.range(2, 6), rng.range(0, 30));
        const auto once = canonicalize(t);
        const auto twice = canonicalize(once);
        CHECK(once.tuples == twice.tuples);
    }
}

TEST_CASE("canonicalize rejects ragged tuples") {
    TableConstraint t;
    t.scope = {0, 1, 2};
    t.tuples = {{0, 1}};
    CHECK_THROWS_AS(canonicalize(t), MalformedTuple);
}

TEST_CASE("satisfies on the running example") {
    const auto c = running_canonical();
    CHECK(satisfies({0, 0, 0, 0, 2}, c));
    CHECK_FALSE(satisfies({1, 2, 2, 0, 1}, c));
}

TEST_CASE("satisfies is false on an empty relation") {
    TableConstraint t;
    t.scope = {0, 1};
    CHECK_FALSE(satisfies({0, 0}, t));
}

TEST_CASE("every canonical tuple induces a satisfying assignment") {
    const auto c = running_canonical();
    for (const Tuple& t : c.tuples) {
        Assignment a(5);
        for (int j = 0; j < c.arity(); ++j) a[c.scope[j]] = t[j];
        CHECK(satisfies(a, c));
    }
}

TEST_CASE("satisfies agrees with a projection-and-membership scan") {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const int n_vars = rng.range(3, 6);
        const int dom = rng.range(2, 4);
        TableConstraint t;
        std::vector<VarId> pool(n_vars);
        for (int j = 0; j < n_vars; ++j) pool[j] = j;
        const int arity = rng.range(1, n_vars);
        for (int j = 0; j < arity; ++j) {
            const int k = j + static_cast<int>(rng.below(n_vars - j));
            std::swap(pool[j], pool[k]);
            t.scope.push_back(pool[j]);
        }
        for (int r = 0, n = rng.range(0, 10); r < n; ++r) {
            Tuple tp(arity);
            for (int j = 0; j < arity; ++j) tp[j] = static_cast<Value>(rng.below(dom));
            t.tuples.push_back(tp);
        }
        const auto c = canonicalize(t);
        Assignment a(n_vars);
        for (int j = 0; j < n_vars; ++j) a[j] = static_cast<Value>(rng.below(dom));
        bool expected = false;
        for (const Tuple& tp : c.tuples) {
            bool match = true;
            for (int j = 0; j < c.arity() && match; ++j) match = a[c.scope[j]] == tp[j];
            expected |= match;
        }
        CHECK(satisfies(a, c) == expected);
    }
}

TEST_CASE("is_solution on the running instance") {
    const auto inst = running_instance();
    CHECK(is_solution({0, 2, 0, 2, 0}, inst));
    CHECK_FALSE(is_solution({0, 0, 0, 0, 0}, inst));
}

TEST_CASE("is_solution with no constraints is domain membership") {
    Instance inst;
    inst.domains = {{0, 1}, {3, 5}};
    CHECK(is_solution({1, 5}, inst));
    CHECK_FALSE(is_solution({1, 4}, inst));
}

}  // TEST_SUITE
