#pragma once

#include <chrono>
#include <optional>

#include "dct/pdg.hpp"

namespace dct {

// Witness for labeled-graph isomorphism: bijection preserving labels and
// edge kinds/slots in both directions.
struct NodeMapping {
    std::map<int, int> forward;
    std::map<int, int> backward;
};

enum class IsoStatus { Found, NotIsomorphic, Timeout };

struct IsoOptions {
    // Deterministic primary budget: total backtracking steps.
    long long max_steps = 2'000'000;
    // Steps spent after the first witness looking for one with more
    // name-equal variable pairs.
    long long improvement_steps = 200'000;
    // Wall-clock backstop.
    std::chrono::milliseconds timeout{5000};
};

struct IsoResult {
    IsoStatus status = IsoStatus::NotIsomorphic;
    std::optional<NodeMapping> mapping;

    bool found() const { return status == IsoStatus::Found; }
};

// Neighborhood-refinement pruning followed by backtracking search. Among
// label-equivalent witnesses the search prefers those maximizing variable
// pairs whose names match; deterministic for fixed inputs.
IsoResult isomorphic(const DependencyGraph& a, const DependencyGraph& b,
                     const IsoOptions& opts = {});

// Variables paired through corresponding operand slots of mapped nodes.
// A variable pairs with at most one counterpart; conflicting votes leave
// both variables unmatched. Returns pairs sorted by the first key.
std::vector<std::pair<std::string, std::string>> variable_correspondence(
    const NodeMapping& m, const DependencyGraph& a, const DependencyGraph& b);

// Name-equal pairs (base names, scope qualifiers stripped) under a witness.
int count_name_matches(const NodeMapping& m, const DependencyGraph& a,
                       const DependencyGraph& b);

}  // namespace dct
