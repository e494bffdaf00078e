#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace star {

// The closed agent pool. Declaration order is the pool order used for every
// deterministic tie-break and merge in the library.
enum class Agent : std::uint8_t {
  Head,
  Spatial,
  Temporal,
  Trajectory,
  Topological,
  Navigation,
  Semantic,
  Fusion,
};

inline constexpr std::size_t kAgentCount = 8;

inline constexpr std::array<Agent, kAgentCount> kAllAgents = {
    Agent::Head,       Agent::Spatial,    Agent::Temporal, Agent::Trajectory,
    Agent::Topological, Agent::Navigation, Agent::Semantic, Agent::Fusion,
};

inline constexpr std::array<Agent, 6> kSpecialists = {
    Agent::Spatial,     Agent::Temporal,   Agent::Trajectory,
    Agent::Topological, Agent::Navigation, Agent::Semantic,
};

constexpr std::size_t index_of(Agent a) noexcept { return static_cast<std::size_t>(a); }

constexpr bool is_specialist(Agent a) noexcept {
  return a != Agent::Head && a != Agent::Fusion;
}

constexpr std::string_view name_of(Agent a) noexcept {
  constexpr std::array<std::string_view, kAgentCount> names = {
      "HEAD", "SPATIAL", "TEMPORAL", "TRAJECTORY", "TOPOLOGICAL", "NAVIGATION", "SEMANTIC", "FUSION"};
  return names[index_of(a)];
}

std::optional<Agent> parse_agent(std::string_view text) noexcept;

// Small ordered set over the pool; iteration is always in pool order.
class AgentSet {
 public:
  constexpr AgentSet() = default;
  constexpr AgentSet(std::initializer_list<Agent> agents) {
    for (Agent a : agents) insert(a);
  }

  constexpr void insert(Agent a) noexcept { bits_ |= bit(a); }
  constexpr void erase(Agent a) noexcept { bits_ &= static_cast<std::uint8_t>(~bit(a)); }
  constexpr bool contains(Agent a) const noexcept { return (bits_ & bit(a)) != 0; }
  constexpr bool empty() const noexcept { return bits_ == 0; }
  constexpr std::size_t size() const noexcept {
    std::size_t n = 0;
    for (Agent a : kAllAgents) n += contains(a) ? 1 : 0;
    return n;
  }

  constexpr AgentSet operator-(AgentSet other) const noexcept {
    AgentSet out;
    out.bits_ = static_cast<std::uint8_t>(bits_ & ~other.bits_);
    return out;
  }
  constexpr AgentSet operator|(AgentSet other) const noexcept {
    AgentSet out;
    out.bits_ = static_cast<std::uint8_t>(bits_ | other.bits_);
    return out;
  }
  constexpr bool operator==(const AgentSet&) const = default;

  std::vector<Agent> members() const {
    std::vector<Agent> out;
    for (Agent a : kAllAgents)
      if (contains(a)) out.push_back(a);
    return out;
  }

 private:
  static constexpr std::uint8_t bit(Agent a) noexcept {
    return static_cast<std::uint8_t>(1u << index_of(a));
  }
  std::uint8_t bits_ = 0;
};

}  // namespace star
