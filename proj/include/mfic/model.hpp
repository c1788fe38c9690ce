#pragma once

#include <vector>

#include "mfic/errors.hpp"

namespace mfic {

using Value = int;  // domain element, non-negative
using VarId = int;  // 0-based variable index
using Tuple = std::vector<Value>;

// A positive table constraint: the ordered scope and the allowed tuples.
struct TableConstraint {
    std::vector<VarId> scope;
    std::vector<Tuple> tuples;

    int arity() const { return static_cast<int>(scope.size()); }
};

struct Instance {
    std::vector<std::vector<Value>> domains;  // per variable, sorted distinct values
    std::vector<TableConstraint> constraints;

    int n_vars() const { return static_cast<int>(domains.size()); }
};

// Complete assignment, indexed by VarId.
using Assignment = std::vector<Value>;

// Removes duplicate tuples and sorts the remainder lexicographically.
// Scope and the set of satisfying assignments are unchanged.
// Throws MalformedTuple if a tuple length differs from the arity.
TableConstraint canonicalize(const TableConstraint& table);

// True iff the projection of `assignment` onto c.scope is a tuple of c.
bool satisfies(const Assignment& assignment, const TableConstraint& c);

// True iff every value lies in its variable's domain and every constraint
// is satisfied.
bool is_solution(const Assignment& assignment, const Instance& inst);

}  // namespace mfic
