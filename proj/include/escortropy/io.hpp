#pragma once

// Input parsing ({"p": [...]}, {"r": [[...], ...]}), locale-independent number
// formatting, and the ensemble sweep with its CSV form.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>
#include <thread>
#include <vector>

#include <json.hpp>

#include "escortropy/chain_rules.hpp"
#include "escortropy/prob_core.hpp"

namespace escortropy {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("parse error at line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  explicit ParseError(const std::string& what) : Error(what) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_ = 0;
  std::size_t column_ = 0;
};

// ---------------------------------------------------------------------------
// Number formatting
// ---------------------------------------------------------------------------

/// 12 significant digits, '.' separator, independent of the global locale.
inline std::string format_number(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x,
                                 std::chars_format::general, 12);
  if (ec != std::errc{}) return "nan";
  return {buf, end};
}

/// Shortest representation that parses back to the same double.
inline std::string format_exact(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) return "nan";
  return {buf, end};
}

// ---------------------------------------------------------------------------
// JSON input
// ---------------------------------------------------------------------------

namespace detail {

inline nlohmann::json parse_json_text(std::string_view text) {
  try {
    return nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // e.byte is 1-based and points one past the offending character.
    const std::size_t offset =
        std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(e.what(), line, column);
  }
}

inline std::vector<double> numbers_of(const nlohmann::json& arr,
                                      const std::string& where) {
  if (!arr.is_array()) throw ParseError(where + " must be an array");
  std::vector<double> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number())
      throw ParseError(where + "[" + std::to_string(i) + "] is not a number");
    out.push_back(arr[i].get<double>());
  }
  return out;
}

}  // namespace detail

/// Raw weights from {"p": [...]}, before validation.
inline std::vector<double> parse_distribution_weights(std::string_view text) {
  const auto doc = detail::parse_json_text(text);
  if (!doc.is_object() || !doc.contains("p"))
    throw ParseError("expected an object with key \"p\"");
  return detail::numbers_of(doc["p"], "p");
}

inline Distribution parse_distribution(std::string_view text) {
  return Distribution(parse_distribution_weights(text));
}

/// Raw rows from {"r": [[...], ...]} (rows are B outcomes), before validation.
inline std::vector<std::vector<double>> parse_joint_rows(std::string_view text) {
  const auto doc = detail::parse_json_text(text);
  if (!doc.is_object() || !doc.contains("r"))
    throw ParseError("expected an object with key \"r\"");
  const auto& r = doc["r"];
  if (!r.is_array() || r.empty())
    throw ParseError("r must be a non-empty array of rows");
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 0; k < r.size(); ++k)
    rows.push_back(detail::numbers_of(r[k], "r[" + std::to_string(k) + "]"));
  return rows;
}

inline JointDistribution parse_joint(std::string_view text) {
  return JointDistribution::from_rows(parse_joint_rows(text));
}

/// Comma-separated list of positive orders, e.g. "0.5,1,2".
inline std::vector<QOrder> parse_q_list(std::string_view text) {
  std::vector<QOrder> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    auto item = text.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (ec != std::errc{} || ptr != item.data() + item.size() || item.empty())
      throw ParseError("bad q value '" + std::string(item) + "'");
    out.emplace_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw ParseError("empty q list");
  return out;
}

// ---------------------------------------------------------------------------
// Sweep
// ---------------------------------------------------------------------------

struct SweepRow {
  std::uint64_t seed;
  double q;
  std::size_t n_a;
  std::size_t n_b;
  double mutual_information;
  double residual;
  double s_gap;
  double lower_bound;
  double upper_bound;
  double corrected_residual;
};

inline constexpr std::string_view kSweepHeader =
    "seed,q,n_a,n_b,mutual_information,residual,s_gap,lower_bound,"
    "upper_bound,corrected_residual";

struct SweepConfig {
  std::size_t n_b = 3;
  std::size_t n_a = 3;
  std::vector<QOrder> qs;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  double concentration = 1.0;
  unsigned threads = 0;  ///< 0 picks hardware concurrency
};

/// Rows ordered by (trial, q). Trial i uses joint random_joint(n_b, n_a,
/// derive_seed(seed, i)); that derived seed is what the row records.
inline std::vector<SweepRow> run_sweep(const SweepConfig& cfg) {
  const std::size_t per_trial = cfg.qs.size();
  std::vector<SweepRow> rows(cfg.trials * per_trial);

  auto work = [&](std::size_t first, std::size_t last) {
    for (std::size_t i = first; i < last; ++i) {
      const auto s = derive_seed(cfg.seed, i);
      const auto r = random_joint(cfg.n_b, cfg.n_a, s, cfg.concentration);
      const double mi = mutual_information(r);
      for (std::size_t j = 0; j < per_trial; ++j) {
        const auto rep = chain_rule_report(r, cfg.qs[j]);
        rows[i * per_trial + j] = {s,
                                   rep.q,
                                   cfg.n_a,
                                   cfg.n_b,
                                   mi,
                                   rep.residual,
                                   rep.s_tilde_minus_s,
                                   rep.lower_bound,
                                   rep.upper_bound,
                                   rep.corrected_residual};
      }
    }
  };

  unsigned workers = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(cfg.trials)));
  if (workers <= 1) {
    work(0, cfg.trials);
    return rows;
  }
  std::vector<std::jthread> pool;
  const std::size_t chunk = (cfg.trials + workers - 1) / workers;
  for (std::size_t first = 0; first < cfg.trials; first += chunk)
    pool.emplace_back(work, first, std::min(cfg.trials, first + chunk));
  pool.clear();
  return rows;
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << '\n';
  for (const auto& r : rows) {
    out << r.seed << ',' << format_number(r.q) << ',' << r.n_a << ',' << r.n_b
        << ',' << format_number(r.mutual_information) << ','
        << format_number(r.residual) << ',' << format_number(r.s_gap) << ','
        << format_number(r.lower_bound) << ',' << format_number(r.upper_bound)
        << ',' << format_number(r.corrected_residual) << '\n';
  }
}

}  // namespace escortropy
