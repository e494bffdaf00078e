#include "star/agents/text.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>
#include <string>

#include "star/core/error.hpp"

namespace star::agents {

std::vector<double> parse_numbers(std::string_view text) {
  static const std::regex number(R"([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)");
  std::vector<double> out;
  const std::string s(text);
  for (std::sregex_iterator it(s.begin(), s.end(), number), end; it != end; ++it) out.push_back(std::stod(it->str()));
  return out;
}

graph::NodeSeries parse_node_series(std::string_view text) {
  static const std::regex block(R"(Node\s+(\d+)\s+time series[^:]*:\s*\[([^\]]*)\])");
  graph::NodeSeries out;
  const std::string s(text);
  for (std::sregex_iterator it(s.begin(), s.end(), block), end; it != end; ++it) {
    const auto id = std::stoll((*it)[1].str());
    out[id] = parse_numbers((*it)[2].str());
  }
  return out;
}

graph::DirectedGraph parse_graph_text(std::string_view text) {
  // "→" is three bytes in UTF-8; normalize to the ASCII arrow first.
  std::string s(text);
  for (std::size_t p; (p = s.find("\xE2\x86\x92")) != std::string::npos;) s.replace(p, 3, "->");
  static const std::regex edge(R"(Node\s+(\d+)\s*->\s*Node\s+(\d+))");
  graph::DirectedGraph g;
  std::set<graph::NodeId> nodes;
  for (std::sregex_iterator it(s.begin(), s.end(), edge), end; it != end; ++it) {
    const auto a = std::stoll((*it)[1].str()), b = std::stoll((*it)[2].str());
    g.edges.push_back({a, b, 1.0});
    nodes.insert(a);
    nodes.insert(b);
  }
  for (const auto& [id, _] : parse_node_series(s)) nodes.insert(id);
  g.nodes.assign(nodes.begin(), nodes.end());
  return g;
}

namespace {

std::optional<std::size_t> count_word(std::string w) {
  std::transform(w.begin(), w.end(), w.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  static const std::vector<std::string> words = {"zero", "one", "two",   "three",  "four",   "five",   "six",
                                                 "seven", "eight", "nine", "ten",  "eleven", "twelve"};
  for (std::size_t i = 0; i < words.size(); ++i)
    if (w == words[i]) return i;
  if (!w.empty() && std::all_of(w.begin(), w.end(), [](unsigned char c) { return std::isdigit(c); }))
    return static_cast<std::size_t>(std::stoul(w));
  return std::nullopt;
}

}  // namespace

std::vector<graph::McqOption> parse_mcq_options(std::string_view text) {
  // Label, separator, then "<count>-node" or "<count> node".
  static const std::regex option(R"((?:^|[\s(])([A-H])\s*[.:)]\s*([A-Za-z0-9]+)[\s-]+nodes?\b)",
                                 std::regex::icase);
  std::vector<graph::McqOption> out;
  const std::string s(text);
  for (std::sregex_iterator it(s.begin(), s.end(), option), end; it != end; ++it) {
    auto n = count_word((*it)[2].str());
    if (!n) continue;
    std::string label = (*it)[1].str();
    label[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(label[0])));
    if (std::none_of(out.begin(), out.end(), [&](const auto& o) { return o.label == label; }))
      out.push_back({label, *n});
  }
  return out;
}

}  // namespace star::agents
