#include "star/core/agent.hpp"
#include "star/core/status.hpp"

namespace star {

std::optional<Agent> parse_agent(std::string_view text) noexcept {
  for (Agent a : kAllAgents)
    if (name_of(a) == text) return a;
  // Short forms used in the benchmark traces.
  if (text == "SP") return Agent::Spatial;
  if (text == "TP") return Agent::Temporal;
  if (text == "TOPO") return Agent::Topological;
  if (text == "FUSE") return Agent::Fusion;
  return std::nullopt;
}

std::optional<Status> parse_status(std::string_view text) noexcept {
  for (Status s : kAllStatuses)
    if (name_of(s) == text) return s;
  if (text == "INFO_MISSING") return Status::Miss;
  return std::nullopt;
}

}  // namespace star
