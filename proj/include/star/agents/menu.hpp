#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "star/core/agent.hpp"

namespace star::agents {

enum class ParamKind { Any, Number, Integer, Bool, String, Point, PointList, Interval, IntervalList, Series, Object };

std::string_view name_of(ParamKind k) noexcept;

struct ParamSpec {
  std::string name;
  ParamKind kind = ParamKind::Any;
  bool required = true;
};

struct MenuEntry {
  std::string name;
  std::vector<ParamSpec> params;
  std::string result_key;
};

// Deterministic operations an agent may run. SEMANTIC, HEAD and FUSION
// have empty menus.
struct ComputationMenu {
  Agent agent = Agent::Semantic;
  std::vector<MenuEntry> entries;

  const MenuEntry* find(std::string_view name) const noexcept;
  std::vector<std::string> names() const;
};

const ComputationMenu& menu_for(Agent a);

// Blackboard key an agent deposits under ("spatial_data", ...).
std::string_view result_key(Agent a) noexcept;

}  // namespace star::agents
