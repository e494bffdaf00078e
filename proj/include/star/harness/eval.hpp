#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "star/agents/extractor.hpp"

namespace star::harness {

enum class AnswerMode { Exact, Numeric, Regression };

std::string_view name_of(AnswerMode m) noexcept;

struct QueryRecord {
  std::string id;
  std::string benchmark;
  std::string task_type;  // gold
  std::string query;
  std::string gold;
  AnswerMode mode = AnswerMode::Exact;

  agents::Query as_query() const { return {id, query}; }
};

struct LineDiagnostic {
  std::size_t line = 0;
  std::string message;
};

struct Dataset {
  std::vector<QueryRecord> records;
  std::vector<LineDiagnostic> diagnostics;
};

// One JSON record per line: id, query, answer, and optionally benchmark,
// task_type and mode ("exact", "numeric", "regression"). Bad lines are
// reported and skipped.
Dataset parse_dataset(std::string_view text);
// Throws ValidationError when the file cannot be read.
Dataset load_dataset(const std::filesystem::path& path);

// Answer normalization table version; bump when the rules change.
inline constexpr int kNormalizationVersion = 1;

// Trim, case-fold, strip <answer>/[RESULTS_START] wrappers, "option" prefixes
// and enclosing brackets, map yes/true -> 1 and no/false -> 0, and print
// integral numbers without a fractional part.
std::string normalize_answer(std::string_view answer);

// Exact: normalized equality. Numeric: same count of numbers, each within
// relative tolerance. Throws ContractError for Regression.
bool evaluate_em(std::string_view predicted, std::string_view gold, AnswerMode mode, double numeric_tol = 1e-3);

// Regression correctness bit used when training: relative error <= 5%.
bool regression_correct(std::string_view predicted, std::string_view gold, double rel_tol = 0.05);

// Correctness of an answer against a record, whatever its mode.
bool is_correct(std::string_view predicted, const QueryRecord& record);

enum class RegressionMetric { Rmse, Mae };

// Throws ContractError on empty or mismatched inputs.
double evaluate_regression(const std::vector<double>& predictions, const std::vector<double>& golds,
                           RegressionMetric metric);

struct WilsonInterval {
  double center = 0.0;
  double half_width = 0.0;
  double lower() const noexcept { return center - half_width; }
  double upper() const noexcept { return center + half_width; }
};

// Closed-form Wilson score interval. Throws ContractError unless 0 <= k <= n, n >= 1.
WilsonInterval wilson_ci(std::size_t k, std::size_t n, double z = 1.96);

}  // namespace star::harness
