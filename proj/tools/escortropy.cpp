// escortropy: entropy tables, chain-rule reports, axiom verification and
// ensemble sweeps from the command line.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "escortropy/escortropy.hpp"

namespace {

using namespace escortropy;
using nlohmann::json;

constexpr int kExitFailedVerdict = 1;
constexpr int kExitBadInput = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Rounds to the 12 significant digits used in text output so JSON agrees.
double rounded(double x) {
  const auto s = format_number(x);
  double v = x;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

std::string exact_list(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_exact(v[i]);
  }
  return s + "]";
}

void print_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "\t" : "") << cells[i];
  out << '\n';
}

// ---------------------------------------------------------------------------

int cmd_entropy(const std::string& input, const std::string& q_list, bool as_json) {
  const auto raw = parse_distribution_weights(read_file(input));
  const Distribution p(raw);
  const auto qs = parse_q_list(q_list);

  if (as_json) {
    json doc{{"p", raw}, {"rows", json::array()}};
    for (const auto& q : qs) {
      doc["rows"].push_back({{"q", rounded(q.value())},
                             {"shannon", rounded(shannon(p).value)},
                             {"renyi_inv_q", rounded(renyi(p, 1.0 / q.value()).value)},
                             {"tsallis", rounded(tsallis(p, q).value)},
                             {"hybrid", rounded(hybrid(p, q).value)},
                             {"aczel_daroczy", rounded(aczel_daroczy(p, q).value)}});
    }
    std::cout << doc.dump(2) << '\n';
    return 0;
  }
  std::cout << "# p = " << exact_list(raw) << '\n';
  print_row(std::cout, {"q", "shannon", "renyi_inv_q", "tsallis", "hybrid", "aczel_daroczy"});
  for (const auto& q : qs)
    print_row(std::cout, {format_number(q.value()), format_number(shannon(p).value),
                          format_number(renyi(p, 1.0 / q.value()).value),
                          format_number(tsallis(p, q).value),
                          format_number(hybrid(p, q).value),
                          format_number(aczel_daroczy(p, q).value)});
  return 0;
}

int cmd_chain(const std::string& input, const std::string& q_list, bool as_json,
              bool lenient) {
  const auto rows = parse_joint_rows(read_file(input));
  auto joint = JointDistribution::from_rows(rows);
  std::vector<std::size_t> dropped;
  if (lenient) {
    auto red = drop_zero_columns(joint);
    joint = std::move(red.joint);
    dropped = std::move(red.dropped);
  }
  const auto qs = parse_q_list(q_list);

  std::vector<ChainRuleReport> reports;
  for (const auto& q : qs) reports.push_back(chain_rule_report(joint, q));

  static const char* const kFields[] = {
      "q", "joint_entropy", "marginal_entropy", "conditional_chain",
      "conditional_axiomatic", "gap", "s_tilde_minus_s", "lower_bound",
      "upper_bound", "residual", "corrected_residual"};
  auto values = [](const ChainRuleReport& r) {
    return std::vector<double>{r.q, r.joint_entropy, r.marginal_entropy,
                               r.conditional_chain, r.conditional_axiomatic,
                               r.gap, r.s_tilde_minus_s, r.lower_bound,
                               r.upper_bound, r.residual, r.corrected_residual};
  };

  if (as_json) {
    json doc{{"r", rows}, {"dropped_columns", dropped}, {"rows", json::array()}};
    for (const auto& rep : reports) {
      json row;
      const auto v = values(rep);
      for (std::size_t i = 0; i < v.size(); ++i) row[kFields[i]] = rounded(v[i]);
      doc["rows"].push_back(std::move(row));
    }
    std::cout << doc.dump(2) << '\n';
    return 0;
  }
  std::cout << "# r =";
  for (const auto& row : rows) std::cout << ' ' << exact_list(row);
  std::cout << '\n';
  if (!dropped.empty()) {
    std::cout << "# dropped zero A columns:";
    for (auto l : dropped) std::cout << ' ' << l;
    std::cout << '\n';
  }
  print_row(std::cout, {std::begin(kFields), std::end(kFields)});
  for (const auto& rep : reports) {
    std::vector<std::string> cells;
    for (double x : values(rep)) cells.push_back(format_number(x));
    print_row(std::cout, cells);
  }
  return 0;
}

int cmd_verify(const std::string& suite, const VerifyOptions& opt, bool as_json) {
  const auto results = run_suite(suite, opt);
  bool all = true;
  for (const auto& r : results) all = all && r.passed;

  if (as_json) {
    json doc{{"suite", suite}, {"seed", opt.seed}, {"passed", all},
             {"verdicts", json::array()}};
    for (const auto& r : results)
      doc["verdicts"].push_back({{"suite", r.suite},
                                 {"check", r.name},
                                 {"passed", r.passed},
                                 {"margin", rounded(r.margin)},
                                 {"detail", r.detail}});
    std::cout << doc.dump(2) << '\n';
  } else {
    for (const auto& r : results)
      std::cout << (r.passed ? "PASS  " : "FAIL  ") << r.suite << '/' << r.name
                << "  margin=" << format_number(r.margin) << "  " << r.detail << '\n';
    std::cout << (all ? "all checks passed" : "some checks FAILED") << '\n';
  }
  return all ? 0 : kExitFailedVerdict;
}

int cmd_sweep(const SweepConfig& cfg, const std::string& out_path) {
  const auto rows = run_sweep(cfg);
  if (out_path.empty()) {
    write_sweep_csv(std::cout, rows);
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw Error("cannot write " + out_path);
  write_sweep_csv(out, rows);
  if (!out) throw Error("write failed for " + out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid entropy, escort distributions and q-additive chain rules"};
  app.require_subcommand(1);

  std::string input, q_list = "0.5,1,2", suite = "all", out_path;
  bool as_json = false, lenient = false;
  VerifyOptions vopt;
  SweepConfig scfg;
  std::string sweep_qs = "0.5,2";

  auto* entropy = app.add_subcommand("entropy", "Entropy table for a distribution");
  entropy->add_option("--input", input, "JSON file {\"p\": [...]}")->required();
  entropy->add_option("--q", q_list, "Comma-separated q values");
  entropy->add_flag("--json", as_json, "Emit JSON");

  auto* chain = app.add_subcommand("chain", "Chain-rule report for a joint table");
  chain->add_option("--input", input, "JSON file {\"r\": [[...], ...]}, rows = B outcomes")
      ->required();
  chain->add_option("--q", q_list, "Comma-separated q values");
  chain->add_flag("--json", as_json, "Emit JSON");
  chain->add_flag("--lenient-zero-columns", lenient,
                  "Drop zero-probability A columns instead of failing");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", suite, "axioms | escort | qcalc | all");
  verify->add_option("--seed", vopt.seed, "Ensemble seed")->envname("ESCORTROPY_SEED");
  verify->add_option("--trials", vopt.trials, "Ensemble size");
  verify->add_option("--mi-floor", vopt.mi_floor, "Mutual-information floor for dependent joints");
  verify->add_flag("--json", as_json, "Emit JSON verdicts");

  auto* sweep = app.add_subcommand("sweep", "CSV of chain-rule quantities over random joints");
  sweep->add_option("--n-b", scfg.n_b, "B outcomes")->check(CLI::PositiveNumber);
  sweep->add_option("--n-a", scfg.n_a, "A outcomes")->check(CLI::PositiveNumber);
  sweep->add_option("--q", sweep_qs, "Comma-separated q grid");
  sweep->add_option("--trials", scfg.trials, "Number of random joints");
  sweep->add_option("--seed", scfg.seed, "Base seed")->envname("ESCORTROPY_SEED");
  sweep->add_option("--concentration", scfg.concentration, "Dirichlet concentration")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--threads", scfg.threads, "Worker threads (0 = all cores)");
  sweep->add_option("--out", out_path, "Output CSV path (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (entropy->parsed()) return cmd_entropy(input, q_list, as_json);
    if (chain->parsed()) return cmd_chain(input, q_list, as_json, lenient);
    if (verify->parsed()) return cmd_verify(suite, vopt, as_json);
    if (sweep->parsed()) {
      scfg.qs = parse_q_list(sweep_qs);
      return cmd_sweep(scfg, out_path);
    }
  } catch (const ZeroMarginalColumn& e) {
    std::cerr << "error: " << e.what()
              << " (use --lenient-zero-columns to drop it)\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  return kExitBadInput;
}
