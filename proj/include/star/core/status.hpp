#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>

namespace star {

// Typed execution outcome. FAIL = malformed result, BLOCK = missing upstream
// dependency, MISS = tool/query mismatch.
enum class Status : std::uint8_t { Init, Succ, Fail, Block, Miss };

inline constexpr std::size_t kStatusCount = 5;

inline constexpr std::array<Status, kStatusCount> kAllStatuses = {
    Status::Init, Status::Succ, Status::Fail, Status::Block, Status::Miss};

inline constexpr std::array<Status, 3> kErrorStatuses = {Status::Fail, Status::Block, Status::Miss};

constexpr std::size_t index_of(Status s) noexcept { return static_cast<std::size_t>(s); }

constexpr bool status_is_error(Status s) noexcept {
  return s == Status::Fail || s == Status::Block || s == Status::Miss;
}

constexpr bool status_is_nominal(Status s) noexcept { return s == Status::Init || s == Status::Succ; }

constexpr std::string_view name_of(Status s) noexcept {
  constexpr std::array<std::string_view, kStatusCount> names = {"INIT", "SUCC", "FAIL", "BLOCK", "MISS"};
  return names[index_of(s)];
}

std::optional<Status> parse_status(std::string_view text) noexcept;

}  // namespace star
