#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "star/core/error.hpp"
#include "star/graph/graph.hpp"
#include "star/simd/kernels.hpp"

namespace star::graph {

namespace {

std::optional<std::size_t> onset_of(const std::vector<double>& x, double threshold) {
  const std::size_t n = x.size();
  const std::size_t w = std::max<std::size_t>(4, n / 8);
  for (std::size_t i = w; i < n; ++i) {
    const std::span<const double> win(x.data() + i - w, w);
    const double mean = simd::sum(win) / static_cast<double>(w);
    double ss = 0;
    for (double v : win) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(w));
    const double dev = std::abs(x[i] - mean);
    if (sd == 0 ? dev > 0 : dev >= threshold * sd) return i;
  }
  return std::nullopt;
}

// Pearson correlation of two equal-length spans; nullopt if either is flat.
std::optional<double> pearson(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const double ma = simd::sum(a) / static_cast<double>(n), mb = simd::sum(b) / static_cast<double>(n);
  std::vector<double> ca(n), cb(n);
  for (std::size_t i = 0; i < n; ++i) {
    ca[i] = a[i] - ma;
    cb[i] = b[i] - mb;
  }
  const double saa = simd::dot(ca, ca), sbb = simd::dot(cb, cb);
  if (!(saa > 0) || !(sbb > 0)) return std::nullopt;
  return std::clamp(simd::dot(ca, cb) / std::sqrt(saa * sbb), -1.0, 1.0);
}

}  // namespace

CascadeResult detect_cascade(const NodeSeries& series, const DirectedGraph& g, double threshold) {
  validate(g);
  if (!(threshold > 0)) throw ContractError("detect_cascade: threshold must be positive");
  std::optional<std::size_t> len;
  for (const auto& [node, xs] : series) {
    if (xs.size() < 4) throw ValidationError("detect_cascade: series for node " + std::to_string(node) + " is shorter than 4");
    if (len && *len != xs.size()) throw ValidationError("detect_cascade: series lengths differ");
    len = xs.size();
  }
  CascadeResult r;
  for (const auto& [node, xs] : series)
    if (auto o = onset_of(xs, threshold)) r.onsets[node] = *o;
  std::size_t considered = 0, agreeing = 0;
  for (const auto& e : g.edges) {
    auto u = r.onsets.find(e.from), v = r.onsets.find(e.to);
    if (u == r.onsets.end() || v == r.onsets.end()) continue;
    ++considered;
    if (u->second <= v->second) ++agreeing;
  }
  r.consistency = considered ? static_cast<double>(agreeing) / static_cast<double>(considered) : 0.0;
  r.consistent = considered > 0 && agreeing == considered;
  return r;
}

Causality pairwise_causality(const std::vector<double>& xs, const std::vector<double>& ys, std::size_t max_lag) {
  if (xs.size() != ys.size()) throw ValidationError("pairwise_causality: series lengths differ");
  if (max_lag == 0) throw ContractError("pairwise_causality: max_lag must be >= 1");
  if (xs.size() <= max_lag + 2) throw InsufficientDataError("pairwise_causality: series must be longer than max_lag + 2");
  const std::size_t n = xs.size();
  std::optional<Causality> best;
  for (std::size_t lag = 1; lag <= max_lag; ++lag) {
    auto r = pearson(std::span<const double>(xs).first(n - lag), std::span<const double>(ys).subspan(lag));
    if (!r) continue;
    if (!best || std::abs(*r) > std::abs(best->score)) best = Causality{lag, *r};
  }
  if (!best) throw UndefinedError("pairwise_causality: correlation undefined (zero variance) at every lag");
  return *best;
}

}  // namespace star::graph
