#include "star/spatial/text_match.hpp"

#include <cctype>
#include <vector>

#include "star/core/error.hpp"

namespace star::spatial {

namespace {

std::size_t longest_common_substring(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  std::size_t best = 0;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : 0;
      if (cur[j] > best) best = cur[j];
    }
    std::swap(prev, cur);
  }
  return best;
}

}  // namespace

std::vector<std::string> normalized_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

double region_similarity(std::string_view geocoded_name, std::string_view option) {
  std::string name;
  for (const auto& tok : normalized_tokens(geocoded_name)) {
    if (!name.empty()) name.push_back(' ');
    name += tok;
  }
  double num = 0, den = 0;
  for (const auto& tok : normalized_tokens(option)) {
    const double len = static_cast<double>(tok.size());
    const double frac = static_cast<double>(longest_common_substring(tok, name)) / len;
    num += len * frac * frac;
    den += len;
  }
  return den > 0 ? num / den : 0.0;
}

RegionMatch admin_region_match(std::string_view geocoded_name, const std::vector<std::string>& options) {
  if (options.empty()) throw ContractError("admin_region_match: no options");
  RegionMatch m;
  for (std::size_t i = 0; i < options.size(); ++i) {
    const double s = region_similarity(geocoded_name, options[i]);
    m.scores.push_back(s);
    if (i == 0 || s > m.score) {
      m.index = i;
      m.score = s;
    }
  }
  return m;
}

}  // namespace star::spatial
