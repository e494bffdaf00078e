#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <string>

#include "star/core/error.hpp"
#include "star/graph/graph.hpp"

namespace star::graph {

namespace {

struct Label {
  double cost;
  std::vector<NodeId> path;
  bool operator<(const Label& o) const { return cost < o.cost || (cost == o.cost && path < o.path); }
  bool operator>(const Label& o) const { return o < *this; }
};

}  // namespace

PathResult shortest_path(const DirectedGraph& g, NodeId src, NodeId dst) {
  validate(g);
  const std::set<NodeId> nodes(g.nodes.begin(), g.nodes.end());
  if (!nodes.count(src) || !nodes.count(dst)) throw ContractError("shortest_path: endpoint is not a graph node");
  std::map<NodeId, std::vector<std::pair<NodeId, double>>> adj;
  for (const auto& e : g.edges) adj[e.from].emplace_back(e.to, e.weight);

  std::map<NodeId, Label> best;
  std::set<NodeId> done;
  std::priority_queue<Label, std::vector<Label>, std::greater<>> pq;
  best[src] = Label{0.0, {src}};
  pq.push(best[src]);
  while (!pq.empty()) {
    Label cur = pq.top();
    pq.pop();
    const NodeId u = cur.path.back();
    if (done.count(u)) continue;
    done.insert(u);
    if (u == dst) return PathResult{std::move(cur.path), cur.cost};
    for (const auto& [v, w] : adj[u]) {
      if (done.count(v)) continue;
      Label next{cur.cost + w, cur.path};
      next.path.push_back(v);
      auto it = best.find(v);
      if (it == best.end() || next < it->second) {
        best[v] = next;
        pq.push(std::move(next));
      }
    }
  }
  throw NoPathError("shortest_path: " + std::to_string(dst) + " is unreachable from " + std::to_string(src));
}

double eta(const std::vector<NodeId>& path, const DirectedGraph& g, double speed) {
  validate(g);
  if (!(speed > 0) || !std::isfinite(speed)) throw ContractError("eta: speed must be positive");
  if (path.empty()) throw ValidationError("eta: empty path");
  const std::set<NodeId> nodes(g.nodes.begin(), g.nodes.end());
  if (!nodes.count(path.front())) throw ValidationError("eta: path starts at an unknown node");
  double total = 0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    double w = std::numeric_limits<double>::infinity();
    for (const auto& e : g.edges)
      if (e.from == path[i] && e.to == path[i + 1]) w = std::min(w, e.weight);
    if (std::isinf(w))
      throw ValidationError("eta: no edge " + std::to_string(path[i]) + "->" + std::to_string(path[i + 1]));
    total += w;
  }
  return total / speed;
}

}  // namespace star::graph
