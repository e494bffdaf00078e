#include "star/harness/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "star/agents/text.hpp"
#include "star/core/error.hpp"
#include "star/core/value.hpp"

namespace star::harness {

std::string_view name_of(AnswerMode m) noexcept {
  switch (m) {
    case AnswerMode::Exact: return "exact";
    case AnswerMode::Numeric: return "numeric";
    case AnswerMode::Regression: return "regression";
  }
  return "exact";
}

namespace {

std::optional<AnswerMode> parse_mode(std::string_view s) {
  for (auto m : {AnswerMode::Exact, AnswerMode::Numeric, AnswerMode::Regression})
    if (name_of(m) == s) return m;
  return std::nullopt;
}

std::string field(const Value& v, const char* name) {
  if (!v.contains(name)) return {};
  const Value& x = v[name];
  if (x.is_string()) return x.get<std::string>();
  if (x.is_null()) return {};
  return x.dump();
}

}  // namespace

Dataset parse_dataset(std::string_view text) {
  Dataset d;
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    Value v = Value::parse(line.begin(), line.end(), nullptr, false);
    if (v.is_discarded() || !v.is_object()) {
      d.diagnostics.push_back({line_no, "not a JSON object"});
      continue;
    }
    QueryRecord r;
    r.id = field(v, "id");
    r.query = field(v, "query");
    r.gold = field(v, "answer");
    r.benchmark = field(v, "benchmark");
    r.task_type = field(v, "task_type");
    if (auto m = field(v, "mode"); !m.empty()) {
      auto mode = parse_mode(m);
      if (!mode) {
        d.diagnostics.push_back({line_no, "unknown answer mode '" + m + "'"});
        continue;
      }
      r.mode = *mode;
    }
    if (r.id.empty() || r.query.empty()) {
      d.diagnostics.push_back({line_no, "record needs id and query"});
      continue;
    }
    if (r.gold.empty() && r.mode != AnswerMode::Regression) {
      d.diagnostics.push_back({line_no, "record needs a gold answer"});
      continue;
    }
    d.records.push_back(std::move(r));
  }
  return d;
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read dataset " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_dataset(ss.str());
}

namespace {

std::string trim(std::string s) {
  auto sp = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && sp(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t i = 0;
  while (i < s.size() && sp(static_cast<unsigned char>(s[i]))) ++i;
  return s.substr(i);
}

void erase_all(std::string& s, std::string_view token) {
  for (std::size_t p; (p = s.find(token)) != std::string::npos;) s.erase(p, token.size());
}

bool strip_pair(std::string& s, char open, char close) {
  if (s.size() >= 2 && s.front() == open && s.back() == close) {
    s = trim(s.substr(1, s.size() - 2));
    return true;
  }
  return false;
}

std::optional<double> as_number(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double d = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(d)) return std::nullopt;
  return d;
}

}  // namespace

std::string normalize_answer(std::string_view answer) {
  std::string s(answer);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (auto a = s.find("<answer>"); a != std::string::npos) {
    const auto b = s.find("</answer>", a);
    s = s.substr(a + 8, b == std::string::npos ? std::string::npos : b - a - 8);
  }
  if (auto a = s.find("[results_start]"); a != std::string::npos) {
    const auto b = s.find("[results_end]", a);
    s = s.substr(a + 15, b == std::string::npos ? std::string::npos : b - a - 15);
  }
  s = trim(s);
  if (s.rfind("option", 0) == 0) s = trim(s.substr(6));
  while (strip_pair(s, '[', ']') || strip_pair(s, '(', ')')) {
  }
  erase_all(s, "\"");
  erase_all(s, "'");
  s = trim(s);
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "yes" || s == "true") return "1";
  if (s == "no" || s == "false") return "0";
  if (auto d = as_number(s)) {
    char buf[64];
    if (*d == std::floor(*d) && std::fabs(*d) < 1e15) std::snprintf(buf, sizeof buf, "%.0f", *d);
    else std::snprintf(buf, sizeof buf, "%.12g", *d);
    return buf;
  }
  return s;
}

bool evaluate_em(std::string_view predicted, std::string_view gold, AnswerMode mode, double numeric_tol) {
  if (mode == AnswerMode::Regression) throw ContractError("regression answers are scored with evaluate_regression");
  if (mode == AnswerMode::Exact) return normalize_answer(predicted) == normalize_answer(gold);
  const auto p = agents::parse_numbers(normalize_answer(predicted));
  const auto g = agents::parse_numbers(normalize_answer(gold));
  if (g.empty() || p.size() != g.size()) return false;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (std::fabs(p[i] - g[i]) > numeric_tol * std::fabs(g[i]) + (g[i] == 0.0 ? numeric_tol : 0.0)) return false;
  return true;
}

bool regression_correct(std::string_view predicted, std::string_view gold, double rel_tol) {
  const auto p = agents::parse_numbers(predicted);
  const auto g = agents::parse_numbers(gold);
  if (g.empty() || p.size() < g.size()) return false;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double allowed = g[i] == 0.0 ? rel_tol : rel_tol * std::fabs(g[i]);
    if (!(std::fabs(p[i] - g[i]) <= allowed)) return false;
  }
  return true;
}

bool is_correct(std::string_view predicted, const QueryRecord& record) {
  if (record.mode == AnswerMode::Regression) return regression_correct(predicted, record.gold);
  return evaluate_em(predicted, record.gold, record.mode);
}

double evaluate_regression(const std::vector<double>& predictions, const std::vector<double>& golds,
                           RegressionMetric metric) {
  if (predictions.empty() || predictions.size() != golds.size())
    throw ContractError("regression metrics need equal, non-zero lengths");
  double acc = 0.0;
  for (std::size_t i = 0; i < golds.size(); ++i) {
    const double e = predictions[i] - golds[i];
    acc += metric == RegressionMetric::Rmse ? e * e : std::fabs(e);
  }
  acc /= static_cast<double>(golds.size());
  return metric == RegressionMetric::Rmse ? std::sqrt(acc) : acc;
}

WilsonInterval wilson_ci(std::size_t k, std::size_t n, double z) {
  if (n == 0) throw ContractError("wilson interval needs n >= 1");
  if (k > n) throw ContractError("wilson interval needs k <= n");
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  WilsonInterval w;
  w.center = (p + z2 / (2.0 * nn)) / denom;
  w.half_width = z / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  return w;
}

}  // namespace star::harness
