#include "star/routing/config.hpp"

#include <array>
#include <utility>

namespace star {

namespace {
constexpr std::array<std::pair<Ablation, std::string_view>, 6> kNames = {{
    {Ablation::Full, "FULL"},
    {Ablation::System1Only, "SYSTEM1_ONLY"},
    {Ablation::System2Only, "SYSTEM2_ONLY"},
    {Ablation::NoStatus, "NO_STATUS"},
    {Ablation::AlphaZero, "ALPHA_ZERO"},
    {Ablation::Random, "RANDOM"},
}};
}  // namespace

std::string_view name_of(Ablation a) noexcept {
  for (const auto& [value, name] : kNames)
    if (value == a) return name;
  return "FULL";
}

std::optional<Ablation> parse_ablation(std::string_view text) noexcept {
  for (const auto& [value, name] : kNames)
    if (name == text) return value;
  return std::nullopt;
}

}  // namespace star
