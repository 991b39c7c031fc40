#pragma once

// Brute-force oracles kept independent of the library implementation
// paths they check.

#include <algorithm>
#include <cstdlib>
#include <set>
#include <vector>

#include "expsg/diffcon.hpp"

namespace oracles {

// Additive closure of {0} + gens inside [0, bound], grown by repeated
// sweeps rather than the library's sieve.
inline std::set<long> closure(const std::vector<long>& gens, long bound) {
    std::set<long> s{0};
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<long> snapshot(s.begin(), s.end());
        for (long x : snapshot)
            for (long g : gens) {
                long y = x + g;
                if (y <= bound && !s.count(y)) {
                    s.insert(y);
                    changed = true;
                }
            }
    }
    return s;
}

namespace detail {
inline bool box_dfs(const std::vector<expsg::DifferenceConstraint>& cs, std::vector<long>& x,
                    size_t next, long lo, long hi) {
    size_t n = x.size();
    if (next == n) return true;
    for (long v = lo; v <= hi; ++v) {
        x[next] = v;
        bool ok = true;
        for (const auto& c : cs) {
            size_t i = static_cast<size_t>(c.i), j = static_cast<size_t>(c.j);
            if (i > next || j > next) continue;  // endpoint not assigned yet
            if (x[j] - x[i] > c.bound) {
                ok = false;
                break;
            }
        }
        if (ok && box_dfs(cs, x, next + 1, lo, hi)) return true;
    }
    return false;
}
}  // namespace detail

// Exhaustive search for an integer solution of a difference-constraint
// system.  Solutions are shift invariant, so x_0 is pinned to 0 and the
// remaining variables range over [-(n-1)B, (n-1)B] where B is the
// largest |bound|; any feasible system has its shortest-path potential
// in that box.  Branches whose assigned prefix already violates a
// constraint are skipped; the enumeration is otherwise exhaustive.
inline bool box_feasible(const std::vector<expsg::DifferenceConstraint>& cs, int num_vars) {
    long b = 1;
    for (const auto& c : cs) b = std::max(b, std::abs(static_cast<long>(c.bound)));
    long radius = static_cast<long>(num_vars - 1) * b;
    std::vector<long> x(static_cast<size_t>(num_vars), 0);
    return detail::box_dfs(cs, x, 1, -radius, radius);
}

}  // namespace oracles
