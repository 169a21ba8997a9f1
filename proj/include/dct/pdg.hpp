#pragma once

#include <map>
#include <string>
#include <vector>

#include "dct/c_ast.hpp"

namespace dct {

enum class EdgeKind { Data, Control };

struct PdgNode {
    int id;
    std::string label;
};

struct PdgEdge {
    int src;
    int dst;
    EdgeKind kind;
    // Data: operand position on dst, -1 for commutative (unordered) operands.
    // Control: branch polarity (0 = predicate-true region, 1 = false region,
    // case value for switch regions).
    int slot;

    auto operator<=>(const PdgEdge&) const = default;
};

// A direct variable operand of a node: which slot it occupies and which def
// nodes feed it (empty for pure definition slots like assignment targets).
struct SlotUse {
    int position;
    std::string var;  // scope-qualified key
    std::vector<int> defs;
};

struct DependencyGraph {
    std::vector<PdgNode> nodes;
    std::vector<PdgEdge> edges;  // sorted, deduplicated
    std::map<int, std::vector<SlotUse>> var_slots;

    size_t size() const { return nodes.size(); }
};

// One node per primitive operation; data edges def -> use over a
// three-address normalization (leftmost-innermost evaluation order), control
// edges from each predicate's producing nodes to the operations it guards.
// f must parse cleanly; throws UnsupportedConstructError otherwise.
DependencyGraph build_pdg(const ParsedFunction& f);

// Debug/oracle dump: one node per line (id, label), then edges.
std::string dump_graph(const DependencyGraph& g);

}  // namespace dct
