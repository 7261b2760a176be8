#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "foldkit/logic.hpp"

namespace foldkit {

// Outcome of the stratification gate. Rejection is a value, not an error: it
// names one dependency cycle that passes through negation.
struct StratificationReport {
    bool ok = true;
    std::vector<std::string> cycle;  // predicates along one offending cycle
    std::string message;
};

namespace detail {

struct DependencyGraph {
    std::vector<std::string> predicates;                  // sorted, index = node id
    std::map<std::string, int> index;
    std::vector<std::vector<std::pair<int, bool>>> edges;  // head -> body, bool = negated

    int id(const std::string& name) const {
        auto it = index.find(name);
        return it == index.end() ? -1 : it->second;
    }
};

inline DependencyGraph build_dependency_graph(const BackgroundTheory& theory) {
    DependencyGraph graph;
    std::set<std::string> names;
    for (const Clause& clause : theory.clauses) {
        names.insert(clause.head.predicate);
        for (const Literal& lit : clause.body) names.insert(lit.atom.predicate);
    }
    for (const Atom& fact : theory.facts) names.insert(fact.predicate);
    graph.predicates.assign(names.begin(), names.end());
    for (std::size_t i = 0; i < graph.predicates.size(); ++i)
        graph.index[graph.predicates[i]] = static_cast<int>(i);
    graph.edges.resize(graph.predicates.size());
    for (const Clause& clause : theory.clauses) {
        const int from = graph.index[clause.head.predicate];
        for (const Literal& lit : clause.body)
            graph.edges[from].emplace_back(graph.index[lit.atom.predicate], lit.negated);
    }
    for (auto& adjacency : graph.edges) {
        std::sort(adjacency.begin(), adjacency.end());
        adjacency.erase(std::unique(adjacency.begin(), adjacency.end()), adjacency.end());
    }
    return graph;
}

// Iterative Tarjan SCC; returns component id per node (components are
// numbered in reverse topological order).
inline std::vector<int> strongly_connected_components(const DependencyGraph& graph, int& count) {
    const int n = static_cast<int>(graph.predicates.size());
    std::vector<int> order(n, -1), low(n, 0), component(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int next_order = 0;
    count = 0;

    struct Frame {
        int node;
        std::size_t edge;
    };
    for (int root = 0; root < n; ++root) {
        if (order[root] != -1) continue;
        std::vector<Frame> frames{{root, 0}};
        order[root] = low[root] = next_order++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& frame = frames.back();
            const int u = frame.node;
            if (frame.edge < graph.edges[u].size()) {
                const int v = graph.edges[u][frame.edge++].first;
                if (order[v] == -1) {
                    order[v] = low[v] = next_order++;
                    stack.push_back(v);
                    on_stack[v] = true;
                    frames.push_back({v, 0});
                } else if (on_stack[v]) {
                    low[u] = std::min(low[u], order[v]);
                }
            } else {
                if (low[u] == order[u]) {
                    for (;;) {
                        const int v = stack.back();
                        stack.pop_back();
                        on_stack[v] = false;
                        component[v] = count;
                        if (v == u) break;
                    }
                    ++count;
                }
                frames.pop_back();
                if (!frames.empty()) low[frames.back().node] = std::min(low[frames.back().node], low[u]);
            }
        }
    }
    return component;
}

// Shortest path from `to` back to `from` staying inside one SCC, used to
// close an offending cycle for the report.
inline std::vector<int> path_within_component(const DependencyGraph& graph,
                                              const std::vector<int>& component, int from, int to) {
    if (from == to) return {from};
    std::vector<int> parent(graph.predicates.size(), -2);
    std::vector<int> queue{from};
    parent[from] = -1;
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const int u = queue[qi];
        for (const auto& [v, negated] : graph.edges[u]) {
            (void)negated;
            if (component[v] != component[from] || parent[v] != -2) continue;
            parent[v] = u;
            if (v == to) {
                std::vector<int> path;
                for (int node = to; node != -1; node = parent[node]) path.push_back(node);
                std::reverse(path.begin(), path.end());
                return path;
            }
            queue.push_back(v);
        }
    }
    return {};
}

}  // namespace detail

// Rejects any dependency cycle that contains a negated edge. This is stricter
// than forbidding only cycles with an even number of negations: it guarantees
// the program has a unique stratified model, which the deduction engine and
// coverage queries rely on.
inline StratificationReport check_stratified(const BackgroundTheory& theory) {
    const detail::DependencyGraph graph = detail::build_dependency_graph(theory);
    int component_count = 0;
    const std::vector<int> component =
        detail::strongly_connected_components(graph, component_count);

    for (std::size_t u = 0; u < graph.edges.size(); ++u) {
        for (const auto& [v, negated] : graph.edges[u]) {
            if (!negated || component[static_cast<int>(u)] != component[v]) continue;
            StratificationReport report;
            report.ok = false;
            const std::vector<int> back =
                detail::path_within_component(graph, component, v, static_cast<int>(u));
            for (int node : back) report.cycle.push_back(graph.predicates[node]);
            std::string arrow;
            for (const std::string& name : report.cycle) {
                if (!arrow.empty()) arrow += " -> ";
                arrow += name;
            }
            report.message = "recursion through negation: cycle [" + arrow + " -> " +
                             graph.predicates[v] + "] contains a NAF edge from '" +
                             graph.predicates[u] + "' to '" + graph.predicates[v] + "'";
            return report;
        }
    }
    return {};
}

// Stratum per predicate: positive dependencies stay within a stratum,
// negative dependencies strictly increase it. Only valid for stratified
// programs (check_stratified first).
inline std::map<std::string, int> compute_strata(const BackgroundTheory& theory) {
    const detail::DependencyGraph graph = detail::build_dependency_graph(theory);
    int component_count = 0;
    const std::vector<int> component =
        detail::strongly_connected_components(graph, component_count);

    // Tarjan numbers components in reverse topological order, so dependencies
    // of node u always live in components with ids <= component[u]; a single
    // ascending sweep computes the longest negation-counting path.
    std::vector<int> stratum(component_count, 0);
    std::vector<std::vector<std::pair<int, bool>>> by_component(component_count);
    for (std::size_t u = 0; u < graph.edges.size(); ++u)
        for (const auto& [v, negated] : graph.edges[u])
            if (component[static_cast<int>(u)] != component[v])
                by_component[component[static_cast<int>(u)]].emplace_back(component[v], negated);

    for (int c = 0; c < component_count; ++c)
        for (const auto& [dep, negated] : by_component[c])
            stratum[c] = std::max(stratum[c], stratum[dep] + (negated ? 1 : 0));

    std::map<std::string, int> result;
    for (std::size_t i = 0; i < graph.predicates.size(); ++i)
        result[graph.predicates[i]] = stratum[component[static_cast<int>(i)]];
    return result;
}

}  // namespace foldkit
