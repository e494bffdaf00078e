#include <algorithm>

#include "star/temporal/interval.hpp"

namespace star::temporal {

std::vector<Interval> canonicalize(std::vector<Interval> xs) {
  for (const auto& x : xs) validate(x);
  std::sort(xs.begin(), xs.end(), [](const Interval& a, const Interval& b) {
    return a.start < b.start || (a.start == b.start && a.end < b.end);
  });
  std::vector<Interval> out;
  for (const auto& x : xs) {
    if (!out.empty() && x.start <= out.back().end)
      out.back().end = std::max(out.back().end, x.end);
    else
      out.push_back(x);
  }
  return out;
}

std::vector<Interval> interval_set(SetOp op, const std::vector<Interval>& a, const std::vector<Interval>& b) {
  const auto ca = canonicalize(a);
  const auto cb = canonicalize(b);
  std::vector<Interval> out;
  switch (op) {
    case SetOp::Union: {
      std::vector<Interval> all = ca;
      all.insert(all.end(), cb.begin(), cb.end());
      return canonicalize(std::move(all));
    }
    case SetOp::Intersection:
      for (const auto& x : ca)
        for (const auto& y : cb) {
          const double s = std::max(x.start, y.start), e = std::min(x.end, y.end);
          if (s <= e) out.push_back({s, e});
        }
      return canonicalize(std::move(out));
    case SetOp::Difference:
      // Subtracts the open interior of each b interval, so cut points stay in
      // the result as closed endpoints.
      for (const auto& x : ca) {
        if (x.start == x.end) {
          const bool removed = std::any_of(cb.begin(), cb.end(), [&](const Interval& y) { return y.start < x.start && x.start < y.end; });
          if (!removed) out.push_back(x);
          continue;
        }
        double cur = x.start;
        bool open = true;
        for (const auto& y : cb) {
          if (y.end <= cur || y.start >= x.end) continue;
          if (y.start == y.end) continue;
          if (y.start > cur) out.push_back({cur, y.start});
          cur = std::max(cur, y.end);
          if (cur >= x.end) {
            open = false;
            break;
          }
        }
        if (open && cur < x.end) out.push_back({cur, x.end});
      }
      return canonicalize(std::move(out));
  }
  return out;
}

}  // namespace star::temporal
