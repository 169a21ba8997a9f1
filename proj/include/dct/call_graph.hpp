#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "dct/c_ast.hpp"

namespace dct {

// Per-binary directed call graph over canonical function names.
struct CallGraph {
    std::vector<std::string> nodes;  // unit order
    // caller -> callees in call-site order (one entry per site, internal only)
    std::map<std::string, std::vector<std::string>> call_sites;
    // deduplicated edge set
    std::map<std::string, std::set<std::string>> edges;
    // calls to symbols not defined in the unit, retained as labels
    std::map<std::string, std::vector<std::string>> external_calls;

    bool has_node(const std::string& name) const {
        for (const auto& n : nodes)
            if (n == name) return true;
        return false;
    }
};

// Edge per syntactic call whose callee is defined in the unit.
CallGraph build_call_graph(const TranslationUnit& unit);

// BFS from the target over the undirected closure, target first, no
// duplicates. Within a layer: callees before callers; callees in call-site
// order, callers in ascending canonical-name order.
// Throws Error on unknown target.
std::vector<std::string> neighbor_order(const CallGraph& g, const std::string& target);

nlohmann::json call_graph_to_json(const CallGraph& g);
CallGraph call_graph_from_json(const nlohmann::json& j);

}  // namespace dct
