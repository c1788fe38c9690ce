#include "mfic/model.hpp"

#include <algorithm>

namespace mfic {

TableConstraint canonicalize(const TableConstraint& table) {
    const auto arity = table.scope.size();
    for (const Tuple& t : table.tuples)
        if (t.size() != arity)
            throw MalformedTuple("tuple length " + std::to_string(t.size()) +
                                 " does not match arity " + std::to_string(arity));
    TableConstraint out;
    out.scope = table.scope;
    out.tuples = table.tuples;
    std::sort(out.tuples.begin(), out.tuples.end());
    out.tuples.erase(std::unique(out.tuples.begin(), out.tuples.end()), out.tuples.end());
    return out;
}

bool satisfies(const Assignment& assignment, const TableConstraint& c) {
    Tuple proj(c.scope.size());
    for (std::size_t j = 0; j < c.scope.size(); ++j)
        proj[j] = assignment[c.scope[j]];
    for (const Tuple& t : c.tuples)
        if (t == proj) return true;
    return false;
}

bool is_solution(const Assignment& assignment, const Instance& inst) {
    if (assignment.size() != inst.domains.size()) return false;
    for (VarId x = 0; x < inst.n_vars(); ++x) {
        const auto& dom = inst.domains[x];
        if (!std::binary_search(dom.begin(), dom.end(), assignment[x])) return false;
    }
    for (const TableConstraint& c : inst.constraints)
        if (!satisfies(assignment, c)) return false;
    return true;
}

}  // namespace mfic
