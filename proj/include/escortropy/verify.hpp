#pragma once

// Named verification suites (qcalc, escort, axioms) over seeded ensembles.
// Each check yields one CheckResult; a suite passes when all of them do.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "escortropy/axioms.hpp"
#include "escortropy/chain_rules.hpp"
#include "escortropy/entropies.hpp"
#include "escortropy/escort.hpp"
#include "escortropy/io.hpp"
#include "escortropy/q_calculus.hpp"

namespace escortropy {

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed;
  /// Tolerance minus worst observed error (or analogous slack).
  double margin;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  std::size_t trials = 1000;
  double mi_floor = 0.05;
};

class UnknownSuite : public Error {
 public:
  explicit UnknownSuite(const std::string& name)
      : Error("unknown suite '" + name + "' (expected axioms, escort, qcalc, all)") {}
};

namespace detail {

inline CheckResult tolerance_check(std::string suite, std::string name,
                                   double worst, double tol) {
  return {std::move(suite), std::move(name), worst < tol, tol - worst,
          "max error " + format_number(worst) + " vs tol " + format_number(tol)};
}

inline CheckResult from_verdict(const AxiomVerdict& v) {
  std::string detail = "q=" + format_number(v.q) + " n=" + std::to_string(v.n) +
                       " trials=" + std::to_string(v.trials) +
                       " violations=" + std::to_string(v.violations);
  if (!std::isnan(v.modulus)) detail += " modulus=" + format_number(v.modulus);
  return {"axioms", std::string(to_string(v.axiom)), v.passed, v.margin,
          std::move(detail)};
}

}  // namespace detail

inline std::vector<CheckResult> verify_qcalc(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(derive_seed(opt.seed, 0x51));
  std::uniform_real_distribution<double> scale(-3.0, 3.0);

  double hom = 0.0, exp_log = 0.0, f_inv = 0.0;
  for (double qv : {0.3, 0.5, 1.0, 1.5, 2.0}) {
    const QOrder q(qv);
    for (std::size_t i = 0; i < opt.trials; ++i) {
      // f_q_inv maps the real line onto the domain of f_q.
      const double a = f_q_inv(scale(rng), q), b = f_q_inv(scale(rng), q);
      const double lhs = f_q(q_add(a, b, q), q);
      const double rhs = f_q(a, q) + f_q(b, q);
      hom = std::max(hom, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));

      const double x = a;
      exp_log = std::max(exp_log, std::abs(q_log(q_exp(x, q), q) - x) /
                                      std::max(1.0, std::abs(x)));
      const double y = scale(rng);
      f_inv = std::max(f_inv, std::abs(f_q(f_q_inv(y, q), q) - y));
    }
  }
  out.push_back(detail::tolerance_check("qcalc", "homomorphism", hom, 1e-10));
  out.push_back(detail::tolerance_check("qcalc", "q_exp_q_log_inverse", exp_log, 1e-10));
  out.push_back(detail::tolerance_check("qcalc", "f_q_inverse_pair", f_inv, 1e-10));

  double limit = 0.0;
  for (double qv : {1.0 - 1e-6, 1.0 + 1e-6}) {
    const QOrder q(qv);
    for (double x : {-0.5, 0.1, 0.7, 1.3}) {
      const double rel = [&](double got, double want) {
        return std::abs(got - want) / std::max(1e-300, std::abs(want));
      }(q_exp(x, q), std::exp(x));
      limit = std::max(limit, rel);
      limit = std::max(limit, std::abs(q_log(x + 1.0, q) - std::log(x + 1.0)) /
                                  std::max(1e-12, std::abs(std::log(x + 1.0))));
      limit = std::max(limit, std::abs(f_q(x, q) - x) / std::abs(x));
    }
  }
  out.push_back(detail::tolerance_check("qcalc", "unit_limit_continuity", limit, 1e-4));
  return out;
}

inline std::vector<CheckResult> verify_escort(const VerifyOptions& opt) {
  std::vector<CheckResult> out;

  double round_trip = 0.0;
  for (double qv : {0.3, 0.5, 2.0, 5.0}) {
    const QOrder q(qv);
    for (std::size_t i = 0; i < opt.trials; ++i) {
      std::mt19937_64 rng(derive_seed(opt.seed, i));
      const auto p = sample_dirichlet(2 + i % 15, 1.0, rng);
      const auto back = escort_inverse(escort(p, q));
      for (std::size_t k = 0; k < p.size(); ++k)
        round_trip = std::max(round_trip, std::abs(back[k] - p[k]));
    }
  }
  out.push_back(detail::tolerance_check("escort", "inverse_round_trip", round_trip, 1e-10));

  double marginal = 0.0, ratio = 0.0, gibbs = 0.0;
  std::size_t product_inconsistent = 0, dependent_consistent = 0;
  for (std::size_t i = 0; i < opt.trials; ++i) {
    const auto prod = sample_product_joint(opt.seed, i);
    const auto dep = sample_dependent_joint(opt.seed, i, opt.mi_floor);
    const QOrder q2(2.0);
    if (!is_escort_consistent(prod, q2, 1e-9)) ++product_inconsistent;
    if (is_escort_consistent(dep, q2, 1e-6)) ++dependent_consistent;

    for (const auto* r : {&prod, &dep}) {
      for (double qv : {0.5, 2.0, 3.0}) {
        const QOrder q(qv);
        const auto pair = joint_escort_pair(*r, q);
        const auto big_p = escort(marginal_a(*r), q);
        for (std::size_t l = 0; l < r->n_a(); ++l) {
          double col = 0.0;
          for (std::size_t k = 0; k < r->n_b(); ++k) col += pair.correct(k, l);
          marginal = std::max(marginal, std::abs(col - big_p[l]));
        }
        const auto closed = escort_ratio(*r, q);
        for (std::size_t c = 0; c < closed.data.size(); ++c)
          if (pair.naive.data[c] > 0.0)
            ratio = std::max(ratio, std::abs(closed.data[c] * pair.naive.data[c] -
                                             pair.correct.data[c]));
        gibbs = std::max(gibbs, shannon(Distribution(pair.correct.data)).value -
                                     cross_shannon(*r, q).value);
      }
    }
  }
  out.push_back(detail::tolerance_check("escort", "correct_marginal_identity", marginal, 1e-12));
  out.push_back(detail::tolerance_check("escort", "ratio_closed_form", ratio, 1e-10));
  out.push_back(detail::tolerance_check("escort", "gibbs_cross_entropy", gibbs, 1e-12));
  out.push_back({"escort", "product_joints_consistent", product_inconsistent == 0,
                 -static_cast<double>(product_inconsistent),
                 std::to_string(product_inconsistent) + " of " +
                     std::to_string(opt.trials) + " inconsistent"});
  out.push_back({"escort", "dependent_joints_inconsistent", dependent_consistent == 0,
                 -static_cast<double>(dependent_consistent),
                 std::to_string(dependent_consistent) + " of " +
                     std::to_string(opt.trials) + " consistent"});
  return out;
}

inline std::vector<CheckResult> verify_axioms(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  for (double qv : {0.5, 1.0, 2.0}) {
    const QOrder q(qv);
    for (std::size_t n : {2u, 4u, 8u})
      out.push_back(detail::from_verdict(check_continuity(q, n, opt.seed, 1e-4)));
  }
  for (double qv : {0.5, 1.0, 2.0}) {
    const QOrder q(qv);
    bool ok = true;
    double margin = 1e300;
    for (std::size_t n = 2; n <= kMaxEnsembleDim; ++n) {
      const auto v = check_maximality(q, n, opt.seed);
      ok = ok && v.passed;
      margin = std::min(margin, v.margin);
    }
    out.push_back({"axioms", "maximality", ok, margin,
                   "q=" + format_number(qv) + " n=2..8 worst margin " +
                       format_number(margin)});
  }
  for (double qv : {0.5, 1.0, 2.0}) {
    const QOrder q(qv);
    std::mt19937_64 rng(derive_seed(opt.seed, 0xE5));
    bool ok = true;
    double margin = 1e300;
    for (const auto& p : {Distribution({0.5, 0.5}), Distribution({1.0}),
                          sample_dirichlet(6, 1.0, rng)}) {
      const auto v = check_expansibility(q, p);
      ok = ok && v.passed;
      margin = std::min(margin, v.margin);
    }
    out.push_back({"axioms", "expansibility", ok, margin, "q=" + format_number(qv)});
  }
  for (double qv : {0.5, 0.7, 1.5, 2.0, 3.0})
    out.push_back(detail::from_verdict(
        check_additivity_independent(QOrder(qv), opt.seed, opt.trials)));
  out.push_back(detail::from_verdict(
      check_additivity_dependent(QOrder(2.0), opt.seed, opt.trials, opt.mi_floor)));

  // Chain-rule identities over both ensembles.
  double two_route = 0.0, closure = 0.0, sandwich = 0.0;
  for (double qv : {0.5, 0.7, 1.5, 2.0, 3.0}) {
    const QOrder q(qv);
    for (std::size_t i = 0; i < opt.trials; i += 4) {
      for (const auto& r : {sample_product_joint(opt.seed, i),
                            sample_dependent_joint(opt.seed, i, opt.mi_floor)}) {
        const auto rep = chain_rule_report(r, q);
        two_route = std::max(two_route, std::abs(rep.gap - rep.s_tilde_minus_s / qv));
        closure = std::max(closure, std::abs(rep.corrected_residual));
        sandwich = std::max({sandwich, rep.lower_bound - rep.s_tilde_minus_s,
                             rep.s_tilde_minus_s - rep.upper_bound,
                             rep.lower_bound, -rep.upper_bound});
      }
    }
  }
  out.push_back(detail::tolerance_check("axioms", "two_route_gap_identity", two_route, 1e-10));
  out.push_back(detail::tolerance_check("axioms", "correction_closure", closure, 1e-9));
  out.push_back(detail::tolerance_check("axioms", "minmax_sandwich", sandwich, 1e-12));
  return out;
}

inline std::vector<CheckResult> run_suite(const std::string& name,
                                          const VerifyOptions& opt) {
  if (name == "qcalc") return verify_qcalc(opt);
  if (name == "escort") return verify_escort(opt);
  if (name == "axioms") return verify_axioms(opt);
  if (name == "all") {
    auto out = verify_qcalc(opt);
    for (auto& c : verify_escort(opt)) out.push_back(std::move(c));
    for (auto& c : verify_axioms(opt)) out.push_back(std::move(c));
    return out;
  }
  throw UnknownSuite(name);
}

}  // namespace escortropy
