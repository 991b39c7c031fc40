#pragma once

#include <algorithm>
#include <optional>
#include <vector>

namespace expsg {

// x_j - x_i <= bound
struct DifferenceConstraint {
    int i = 0;
    int j = 0;
    long long bound = 0;

    bool operator==(const DifferenceConstraint&) const = default;
};

// Integer feasibility of a conjunction of difference constraints by
// shortest-path relaxation; infeasible iff the constraint graph has a
// negative cycle.  The returned assignment is the shortest-path
// potential from a virtual source, shifted so the minimum value is 0.
inline std::optional<std::vector<long long>> solve_difference_system(
    const std::vector<DifferenceConstraint>& constraints, int num_vars) {
    std::vector<long long> dist(static_cast<size_t>(num_vars), 0);
    bool changed = true;
    for (int pass = 0; pass <= num_vars && changed; ++pass) {
        changed = false;
        for (const auto& c : constraints) {
            long long cand = dist[static_cast<size_t>(c.i)] + c.bound;
            if (cand < dist[static_cast<size_t>(c.j)]) {
                dist[static_cast<size_t>(c.j)] = cand;
                changed = true;
            }
        }
    }
    if (changed) return std::nullopt;  // still relaxing after n passes: negative cycle
    long long lo = *std::min_element(dist.begin(), dist.end());
    for (auto& v : dist) v -= lo;
    return dist;
}

// A conjunction of hard difference constraints plus disjunction groups
// (at least one constraint per group must hold).
struct ConstraintProblem {
    int num_vars = 0;
    std::vector<DifferenceConstraint> hard;
    std::vector<std::vector<DifferenceConstraint>> disjunctions;
    bool infeasible = false;  // some required-integral entry no assignment can fix
};

namespace detail {
inline std::optional<std::vector<long long>> disjunction_dfs(
    std::vector<DifferenceConstraint>& active,
    const std::vector<std::vector<DifferenceConstraint>>& groups, size_t depth, int num_vars) {
    auto sol = solve_difference_system(active, num_vars);
    if (!sol) return std::nullopt;
    if (depth == groups.size()) return sol;
    for (const auto& choice : groups[depth]) {
        active.push_back(choice);
        if (auto s = disjunction_dfs(active, groups, depth + 1, num_vars)) return s;
        active.pop_back();
    }
    return std::nullopt;
}
}  // namespace detail

// Depth-first branching over one choice per disjunction group, groups
// ordered smallest first, pruning each partial branch by feasibility of
// the accumulated difference system.
inline std::optional<std::vector<long long>> solve_with_disjunctions(const ConstraintProblem& p) {
    if (p.infeasible) return std::nullopt;
    std::vector<std::vector<DifferenceConstraint>> groups = p.disjunctions;
    std::stable_sort(groups.begin(), groups.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    std::vector<DifferenceConstraint> active = p.hard;
    return detail::disjunction_dfs(active, groups, 0, p.num_vars);
}

}  // namespace expsg
