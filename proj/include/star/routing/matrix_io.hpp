#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "star/routing/kernel.hpp"

namespace star {

// Matrix file: a JSON document with a header (pool, status list, taxonomy,
// alpha, augmentation flag, ablation, nominal routes) and one record per
// non-empty recovery row. Omitted rows are empty. Doubles are written with
// round-trip precision, so load(save(k)) reproduces k exactly.
std::string save_matrix(const RoutingKernel& kernel);

// Throws ParseError (byte offset for syntax errors, row number for semantic
// ones). Never returns a partially built kernel.
RoutingKernel load_matrix(std::string_view text);

void save_matrix_file(const RoutingKernel& kernel, const std::filesystem::path& path);
RoutingKernel load_matrix_file(const std::filesystem::path& path);

}  // namespace star
