#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <string>

#include "star/core/error.hpp"
#include "star/graph/graph.hpp"

namespace star::graph {

void validate(const DirectedGraph& g) {
  std::set<NodeId> seen;
  for (NodeId n : g.nodes)
    if (!seen.insert(n).second) throw ValidationError("graph: duplicate node " + std::to_string(n));
  for (const auto& e : g.edges) {
    if (!seen.count(e.from) || !seen.count(e.to))
      throw ValidationError("graph: edge " + std::to_string(e.from) + "->" + std::to_string(e.to) + " references an unknown node");
    if (!std::isfinite(e.weight) || e.weight < 0) throw ValidationError("graph: edge weights must be finite and >= 0");
  }
}

namespace {

// Adjacency by position in the sorted node list.
struct Indexed {
  std::vector<NodeId> ids;
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> indeg, outdeg;
};

Indexed index_graph(const DirectedGraph& g) {
  Indexed ix;
  ix.ids = g.nodes;
  std::sort(ix.ids.begin(), ix.ids.end());
  const auto pos = [&](NodeId n) {
    return static_cast<std::size_t>(std::lower_bound(ix.ids.begin(), ix.ids.end(), n) - ix.ids.begin());
  };
  ix.out.resize(ix.ids.size());
  ix.indeg.assign(ix.ids.size(), 0);
  ix.outdeg.assign(ix.ids.size(), 0);
  for (const auto& e : g.edges) {
    const std::size_t u = pos(e.from), v = pos(e.to);
    ix.out[u].push_back(v);
    ++ix.outdeg[u];
    ++ix.indeg[v];
  }
  for (auto& adj : ix.out) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  return ix;
}

bool has_cycle(const Indexed& ix) {
  enum : char { White, Grey, Black };
  std::vector<char> colour(ix.ids.size(), White);
  std::function<bool(std::size_t)> visit = [&](std::size_t u) {
    colour[u] = Grey;
    for (std::size_t v : ix.out[u]) {
      if (colour[v] == Grey) return true;
      if (colour[v] == White && visit(v)) return true;
    }
    colour[u] = Black;
    return false;
  };
  for (std::size_t u = 0; u < ix.ids.size(); ++u)
    if (colour[u] == White && visit(u)) return true;
  return false;
}

// Exhaustive DFS. Node indices follow id order, so visiting successors in
// index order and keeping the first longest path found yields the
// lexicographically smallest one.
std::vector<NodeId> longest_simple_path(const Indexed& ix) {
  std::vector<std::size_t> best, cur;
  std::vector<char> on_path(ix.ids.size(), 0);
  std::function<void(std::size_t)> dfs = [&](std::size_t u) {
    cur.push_back(u);
    on_path[u] = 1;
    if (cur.size() > best.size()) best = cur;
    for (std::size_t v : ix.out[u])
      if (!on_path[v]) dfs(v);
    on_path[u] = 0;
    cur.pop_back();
  };
  for (std::size_t u = 0; u < ix.ids.size(); ++u) dfs(u);
  std::vector<NodeId> out;
  for (std::size_t i : best) out.push_back(ix.ids[i]);
  return out;
}

}  // namespace

TopologySummary analyze_topology(const DirectedGraph& g) {
  validate(g);
  const Indexed ix = index_graph(g);
  TopologySummary s;
  s.n_nodes = g.nodes.size();
  s.n_edges = g.edges.size();
  s.cyclic = has_cycle(ix);
  std::size_t best_degree = 0;
  for (std::size_t i = 0; i < ix.ids.size(); ++i) {
    if (!s.source && ix.indeg[i] == 0) s.source = ix.ids[i];
    const std::size_t deg = ix.indeg[i] + ix.outdeg[i];
    if (!s.centrality_node || deg > best_degree) {
      s.centrality_node = ix.ids[i];
      best_degree = deg;
    }
  }
  if (ix.ids.size() <= kLongestPathLimit) s.longest_path = longest_simple_path(ix);
  return s;
}

McqFilter mcq_structural_filter(const TopologySummary& summary, const std::vector<McqOption>& options) {
  if (options.empty()) throw ContractError("mcq_structural_filter: no options");
  McqFilter f;
  for (const auto& o : options) {
    const int score = o.node_count == summary.n_nodes ? 1 : 0;
    f.scores.push_back(score);
    if (score) f.matching.push_back(o.label);
  }
  f.tool_confidence = f.matching.size() == 1 ? 1.0 : (f.matching.empty() ? 0.0 : 0.5);
  return f;
}

}  // namespace star::graph
