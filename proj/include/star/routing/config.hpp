#pragma once

#include <optional>
#include <string_view>

namespace star {

// Router ablation switches. FULL is the dual-system kernel; the rest remove
// or replace one routing component.
enum class Ablation { Full, System1Only, System2Only, NoStatus, AlphaZero, Random };

std::string_view name_of(Ablation a) noexcept;
std::optional<Ablation> parse_ablation(std::string_view text) noexcept;

struct TrainingConfig {
  double alpha = 0.3;
  bool enable_augmentation = true;
  Ablation ablation = Ablation::Full;

  // ALPHA_ZERO overrides whatever alpha says.
  double effective_alpha() const noexcept { return ablation == Ablation::AlphaZero ? 0.0 : alpha; }
};

}  // namespace star
