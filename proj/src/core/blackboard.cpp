#include "star/core/blackboard.hpp"

#include <charconv>

#include "star/core/error.hpp"

namespace star {

void Blackboard::append(BlackboardEntry entry) {
  if (entry.step != entries_.size())
    throw ContractError("blackboard append: step " + std::to_string(entry.step) + " != length " +
                        std::to_string(entries_.size()));
  entries_.push_back(std::move(entry));
}

void Blackboard::deposit(Deposit d) {
  entries_.push_back(BlackboardEntry{d.producer, std::move(d.key), std::move(d.payload), entries_.size()});
}

const BlackboardEntry* Blackboard::latest(std::string_view key) const noexcept {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it)
    if (it->key == key) return &*it;
  return nullptr;
}

std::optional<Value> Blackboard::lookup(std::string_view path) const {
  auto dot = path.find('.');
  const BlackboardEntry* entry = latest(path.substr(0, dot));
  if (entry == nullptr) return std::nullopt;
  const Value* cur = &entry->payload;
  while (dot != std::string_view::npos) {
    path.remove_prefix(dot + 1);
    dot = path.find('.');
    std::string_view part = path.substr(0, dot);
    if (cur->is_object()) {
      auto it = cur->find(std::string(part));
      if (it == cur->end()) return std::nullopt;
      cur = &*it;
    } else if (cur->is_array()) {
      std::size_t idx = 0;
      auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), idx);
      if (ec != std::errc{} || p != part.data() + part.size() || idx >= cur->size()) return std::nullopt;
      cur = &(*cur)[idx];
    } else {
      return std::nullopt;
    }
  }
  if (cur->is_null()) return std::nullopt;
  return *cur;
}

bool Blackboard::is_prefix_of(const Blackboard& later) const noexcept {
  if (entries_.size() > later.entries_.size()) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (!(entries_[i] == later.entries_[i])) return false;
  return true;
}

Blackboard blackboard_append(Blackboard bb, BlackboardEntry entry) {
  bb.append(std::move(entry));
  return bb;
}

Value to_json(const BlackboardEntry& entry) {
  Value v;
  v["step"] = entry.step;
  v["producer"] = std::string(name_of(entry.producer));
  v["key"] = entry.key;
  v["payload"] = entry.payload;
  return v;
}

BlackboardEntry entry_from_json(const Value& v) {
  auto producer = parse_agent(v.at("producer").get<std::string>());
  if (!producer) throw ValidationError("blackboard entry: unknown producer");
  return BlackboardEntry{*producer, v.at("key").get<std::string>(), v.value("payload", Value()),
                         v.at("step").get<std::size_t>()};
}

}  // namespace star
