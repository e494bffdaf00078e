#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace star::spatial {

struct RegionMatch {
  std::size_t index = 0;
  double score = 0.0;
  std::vector<double> scores;  // one per option
};

// Lower-cased alphanumeric tokens of text.
std::vector<std::string> normalized_tokens(std::string_view text);

// Similarity of an option to a geocoded place name: each option token scores
// (longest common substring with the normalized name / token length)^2,
// averaged with token-length weights.
double region_similarity(std::string_view geocoded_name, std::string_view option);

// Best option; ties go to the lowest index. Throws ContractError on no options.
RegionMatch admin_region_match(std::string_view geocoded_name, const std::vector<std::string>& options);

}  // namespace star::spatial
