#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "star/graph/graph.hpp"

namespace star::agents {

// Every decimal number in text, in order (handles signs and exponents).
std::vector<double> parse_numbers(std::string_view text);

// "Node 0 -> Node 1; Node 1 → Node 3" (ASCII or Unicode arrows). Nodes are
// the edge endpoints plus any "Node k" mentioned with a time series.
graph::DirectedGraph parse_graph_text(std::string_view text);

// "Node k time series with length of N: [...]" blocks.
graph::NodeSeries parse_node_series(std::string_view text);

// "A. Six-node ..." style options -> label and node count (digits or number words).
std::vector<graph::McqOption> parse_mcq_options(std::string_view text);

}  // namespace star::agents
