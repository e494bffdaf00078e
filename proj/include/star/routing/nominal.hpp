#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "star/core/agent.hpp"
#include "star/core/taxonomy.hpp"

namespace star {

// Expert successor functions, one acyclic HEAD -> ... -> FUSION path per
// task type. Types without a path have no System-1 route at all.
class NominalRouteTable {
 public:
  explicit NominalRouteTable(std::shared_ptr<const Taxonomy> taxonomy);

  // Expert routes for the built-in benchmark taxonomy. Names in `taxonomy`
  // that have no built-in route are left unrouted.
  static NominalRouteTable builtin(std::shared_ptr<const Taxonomy> taxonomy);

  // Throws ValidationError unless the path starts at HEAD, ends at FUSION,
  // passes only through specialists, repeats no agent and has length <= 8.
  void set_path(TaskType t, std::vector<Agent> path);

  const std::vector<Agent>* path(TaskType t) const;
  std::optional<Agent> successor(TaskType t, Agent from) const;

  const Taxonomy& taxonomy() const noexcept { return *taxonomy_; }
  const std::shared_ptr<const Taxonomy>& taxonomy_ptr() const noexcept { return taxonomy_; }

  bool operator==(const NominalRouteTable& other) const { return paths_ == other.paths_; }

 private:
  std::shared_ptr<const Taxonomy> taxonomy_;
  std::vector<std::vector<Agent>> paths_;  // indexed by TaskType slot; empty = no route
};

}  // namespace star
