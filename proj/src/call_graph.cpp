#include "dct/call_graph.hpp"

#include <algorithm>

#include "dct/canonicalize.hpp"

namespace dct {

namespace {

void collect_calls(const Expr& e, const std::set<std::string>& defined,
                   const std::set<std::string>& locals, std::vector<std::string>& internal,
                   std::vector<std::string>& external) {
    if (e.kind == ExprKind::Call && e.callee && e.callee->kind == ExprKind::Ident &&
        !locals.count(e.callee->text)) {
        if (defined.count(e.callee->text)) internal.push_back(e.callee->text);
        else external.push_back(e.callee->text);
    }
    if (e.a) collect_calls(*e.a, defined, locals, internal, external);
    if (e.b) collect_calls(*e.b, defined, locals, internal, external);
    if (e.c) collect_calls(*e.c, defined, locals, internal, external);
    if (e.callee) collect_calls(*e.callee, defined, locals, internal, external);
    for (const auto& arg : e.args) collect_calls(*arg, defined, locals, internal, external);
}

void collect_calls(const Stmt& s, const std::set<std::string>& defined,
                   const std::set<std::string>& locals, std::vector<std::string>& internal,
                   std::vector<std::string>& external) {
    for (const auto& item : s.items) collect_calls(*item, defined, locals, internal, external);
    if (s.expr) collect_calls(*s.expr, defined, locals, internal, external);
    if (s.body) collect_calls(*s.body, defined, locals, internal, external);
    if (s.else_body) collect_calls(*s.else_body, defined, locals, internal, external);
    if (s.for_init_expr) collect_calls(*s.for_init_expr, defined, locals, internal, external);
    if (s.for_init_decl) collect_calls(*s.for_init_decl, defined, locals, internal, external);
    if (s.for_cond) collect_calls(*s.for_cond, defined, locals, internal, external);
    if (s.for_step) collect_calls(*s.for_step, defined, locals, internal, external);
    if (s.decl.init) collect_calls(*s.decl.init, defined, locals, internal, external);
}

}  // namespace

CallGraph build_call_graph(const TranslationUnit& unit) {
    CallGraph g;
    std::set<std::string> defined;
    for (const auto& f : unit.functions) {
        g.nodes.push_back(f.name);
        defined.insert(f.name);
    }
    for (const auto& f : unit.functions) {
        if (!f.body) continue;
        ScopeResolver resolver(f);
        std::vector<std::string> internal, external;
        collect_calls(*f.body, defined, resolver.declared(), internal, external);
        g.call_sites[f.name] = internal;
        for (const auto& callee : internal) g.edges[f.name].insert(callee);
        g.external_calls[f.name] = std::move(external);
    }
    return g;
}

std::vector<std::string> neighbor_order(const CallGraph& g, const std::string& target) {
    if (!g.has_node(target)) throw Error("unknown call-graph target: " + target);

    // reverse adjacency for caller lookups
    std::map<std::string, std::set<std::string>> callers;
    for (const auto& [caller, callees] : g.edges)
        for (const auto& callee : callees) callers[callee].insert(caller);

    std::vector<std::string> order{target};
    std::set<std::string> visited{target};
    std::vector<std::string> frontier{target};
    while (!frontier.empty()) {
        std::vector<std::string> next;
        auto push = [&](const std::string& name) {
            if (visited.insert(name).second) {
                next.push_back(name);
                order.push_back(name);
            }
        };
        // callees of the layer, in layer order then call-site order
        for (const auto& u : frontier) {
            auto it = g.call_sites.find(u);
            if (it == g.call_sites.end()) continue;
            for (const auto& callee : it->second) push(callee);
        }
        // then callers of the layer, ascending by canonical name
        std::set<std::string> layer_callers;
        for (const auto& u : frontier) {
            auto it = callers.find(u);
            if (it == callers.end()) continue;
            for (const auto& c : it->second)
                if (!visited.count(c)) layer_callers.insert(c);
        }
        for (const auto& c : layer_callers) push(c);
        frontier = std::move(next);
    }
    return order;
}

nlohmann::json call_graph_to_json(const CallGraph& g) {
    nlohmann::json j;
    j["nodes"] = g.nodes;
    nlohmann::json sites = nlohmann::json::object();
    for (const auto& [caller, callees] : g.call_sites) sites[caller] = callees;
    j["call_sites"] = std::move(sites);
    nlohmann::json ext = nlohmann::json::object();
    for (const auto& [caller, callees] : g.external_calls) ext[caller] = callees;
    j["external_calls"] = std::move(ext);
    return j;
}

CallGraph call_graph_from_json(const nlohmann::json& j) {
    CallGraph g;
    g.nodes = j.at("nodes").get<std::vector<std::string>>();
    for (const auto& [caller, callees] : j.at("call_sites").items()) {
        g.call_sites[caller] = callees.get<std::vector<std::string>>();
        for (const auto& c : g.call_sites[caller]) g.edges[caller].insert(c);
    }
    if (j.contains("external_calls")) {
        for (const auto& [caller, callees] : j.at("external_calls").items())
            g.external_calls[caller] = callees.get<std::vector<std::string>>();
    }
    return g;
}

}  // namespace dct
