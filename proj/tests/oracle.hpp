#pragma once

// Test-only brute-force isomorphism oracle: label-respecting permutation
// search with a full edge-set check. Independent of the production matcher.

#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "dct/pdg.hpp"

inline bool edges_equal_under(const dct::DependencyGraph& a, const dct::DependencyGraph& b,
                              const std::vector<int>& perm) {
    std::set<std::tuple<int, int, int, int>> ea, eb;
    for (const auto& e : a.edges)
        ea.insert({perm[static_cast<size_t>(e.src)], perm[static_cast<size_t>(e.dst)],
                   static_cast<int>(e.kind), e.slot});
    for (const auto& e : b.edges)
        eb.insert({e.src, e.dst, static_cast<int>(e.kind), e.slot});
    return ea == eb;
}

inline bool brute_force_extend(const dct::DependencyGraph& a, const dct::DependencyGraph& b,
                               std::vector<int>& perm, std::vector<bool>& used, size_t i) {
    if (i == a.nodes.size()) return edges_equal_under(a, b, perm);
    for (size_t j = 0; j < b.nodes.size(); ++j) {
        if (used[j]) continue;
        if (a.nodes[i].label != b.nodes[j].label) continue;
        perm[i] = static_cast<int>(j);
        used[j] = true;
        if (brute_force_extend(a, b, perm, used, i + 1)) return true;
        used[j] = false;
    }
    return false;
}

inline std::optional<std::vector<int>> brute_force_iso(const dct::DependencyGraph& a,
                                                       const dct::DependencyGraph& b) {
    if (a.nodes.size() != b.nodes.size() || a.edges.size() != b.edges.size())
        return std::nullopt;
    std::vector<int> perm(a.nodes.size(), -1);
    std::vector<bool> used(b.nodes.size(), false);
    if (brute_force_extend(a, b, perm, used, 0)) return perm;
    return std::nullopt;
}
