#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace star::graph {

using NodeId = std::int64_t;

struct Edge {
  NodeId from = 0;
  NodeId to = 0;
  double weight = 1.0;
};

struct DirectedGraph {
  std::vector<NodeId> nodes;
  std::vector<Edge> edges;
};

// Throws ValidationError: duplicate nodes, dangling edge endpoints,
// negative or non-finite weights.
void validate(const DirectedGraph& g);

struct TopologySummary {
  std::size_t n_nodes = 0;
  std::size_t n_edges = 0;
  bool cyclic = false;
  std::optional<NodeId> source;           // smallest node with in-degree 0
  std::vector<NodeId> longest_path;       // empty for graphs above kLongestPathLimit nodes
  std::optional<NodeId> centrality_node;  // max in+out degree, smallest id on ties
};

inline constexpr std::size_t kLongestPathLimit = 20;

TopologySummary analyze_topology(const DirectedGraph& g);

using NodeSeries = std::map<NodeId, std::vector<double>>;

struct CascadeResult {
  std::map<NodeId, std::size_t> onsets;
  double consistency = 0.0;  // share of edges (u, v), both with onsets, where onset(u) <= onset(v)
  bool consistent = false;   // at least one such edge and all of them agree
};

// Onset = first index whose value sits threshold standard deviations away from
// the mean of the trailing window (window = max(4, n / 8)). A flat window
// followed by any change is an onset; a constant series has none.
CascadeResult detect_cascade(const NodeSeries& series, const DirectedGraph& g, double threshold = 2.0);

struct Causality {
  std::size_t lag = 0;
  double score = 0.0;  // Pearson correlation at that lag
};

// Lag in [1, max_lag] maximising |corr(xs[0..n-lag], ys[lag..n])|; ties go to
// the smaller lag. Throws UndefinedError when the correlation is undefined.
Causality pairwise_causality(const std::vector<double>& xs, const std::vector<double>& ys, std::size_t max_lag);

struct McqOption {
  std::string label;
  std::size_t node_count = 0;
};

struct McqFilter {
  std::vector<int> scores;              // 1 when the option's node count matches
  std::vector<std::string> matching;    // labels scoring 1
  double tool_confidence = 0.0;         // 1 for a unique match, 0.5 for several, 0 for none
};

McqFilter mcq_structural_filter(const TopologySummary& summary, const std::vector<McqOption>& options);

struct PathResult {
  std::vector<NodeId> path;
  double cost = 0.0;
};

// Dijkstra over (cost, node sequence) keys, so equal-cost paths resolve to
// the lexicographically smallest sequence. Throws NoPathError.
PathResult shortest_path(const DirectedGraph& g, NodeId src, NodeId dst);

// Sum of edge weights along path divided by speed (cheapest parallel edge).
double eta(const std::vector<NodeId>& path, const DirectedGraph& g, double speed);

}  // namespace star::graph
