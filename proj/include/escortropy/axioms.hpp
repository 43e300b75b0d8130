#pragma once

// Executable probes of the generalized Shannon–Khinchin axioms for D_q:
// continuity, maximality at the uniform point, expansibility, and q-additivity
// for independent and dependent pairs. Every verdict is a deterministic
// function of its arguments.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string_view>
#include <variant>
#include <vector>

#include "escortropy/chain_rules.hpp"
#include "escortropy/entropies.hpp"
#include "escortropy/prob_core.hpp"

namespace escortropy {

inline constexpr double kIndependentResidualTol = 1e-9;
inline constexpr double kViolationThreshold = 1e-6;
inline constexpr double kViolationQuorum = 0.99;
inline constexpr double kMaximalitySlack = 1e-9;
inline constexpr double kExpansibilityTol = 1e-12;
inline constexpr std::size_t kMaxEnsembleDim = 8;

enum class Axiom {
  continuity,
  maximality,
  expansibility,
  additivity_independent,
  additivity_dependent,
};

constexpr std::string_view to_string(Axiom a) {
  switch (a) {
    case Axiom::continuity: return "continuity";
    case Axiom::maximality: return "maximality";
    case Axiom::expansibility: return "expansibility";
    case Axiom::additivity_independent: return "additivity_independent";
    case Axiom::additivity_dependent: return "additivity_dependent";
  }
  return "?";
}

using Witness = std::variant<Distribution, JointDistribution>;

struct AxiomVerdict {
  Axiom axiom;
  double q;
  std::size_t n;
  bool passed;
  /// Counterexample when the check failed; for maximality, the best point.
  std::optional<Witness> witness;
  /// Worst-case slack: positive means the check held with room to spare.
  double margin;
  /// Continuity only: empirical modulus ω(δ)/δ.
  double modulus = std::numeric_limits<double>::quiet_NaN();
  std::size_t trials = 0;
  std::size_t violations = 0;
  /// Dependent additivity only: joints on which no violation was observed.
  std::vector<JointDistribution> exceptions = {};
};

// ---------------------------------------------------------------------------
// Seeded ensembles
// ---------------------------------------------------------------------------

namespace detail {

inline std::size_t draw_dim(std::mt19937_64& rng, std::size_t max_dim) {
  std::uniform_int_distribution<std::size_t> dim(2, max_dim);
  return dim(rng);
}

}  // namespace detail

/// Trial i of the product ensemble: sizes in [2, max_dim], Dirichlet(1) factors.
inline JointDistribution sample_product_joint(std::uint64_t seed,
                                              std::uint64_t trial,
                                              std::size_t max_dim = kMaxEnsembleDim) {
  std::mt19937_64 rng(derive_seed(seed, trial));
  const auto n_a = detail::draw_dim(rng, max_dim);
  const auto n_b = detail::draw_dim(rng, max_dim);
  const auto p_a = sample_dirichlet(n_a, 1.0, rng);
  const auto q_b = sample_dirichlet(n_b, 1.0, rng);
  return product_joint(p_a, q_b);
}

/// Trial i of the dependent ensemble: Dirichlet(1) joints redrawn until
/// mutual information exceeds mi_floor.
inline JointDistribution sample_dependent_joint(std::uint64_t seed,
                                                std::uint64_t trial,
                                                double mi_floor,
                                                std::size_t max_dim = kMaxEnsembleDim) {
  std::mt19937_64 rng(derive_seed(seed ^ 0xD1B54A32D192ED03ull, trial));
  for (int attempt = 0; attempt < 100000; ++attempt) {
    const auto n_a = detail::draw_dim(rng, max_dim);
    const auto n_b = detail::draw_dim(rng, max_dim);
    const auto flat = sample_dirichlet(n_a * n_b, 1.0, rng);
    Matrix m(n_b, n_a);
    std::copy(flat.begin(), flat.end(), m.data.begin());
    JointDistribution r(std::move(m));
    if (mutual_information(r) > mi_floor) return r;
  }
  throw std::runtime_error("mutual-information floor unreachable");
}

// ---------------------------------------------------------------------------
// Simplex geometry
// ---------------------------------------------------------------------------

/// Euclidean projection onto the probability simplex (sort-and-threshold).
inline std::vector<double> project_to_simplex(std::vector<double> v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0, theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumulative += u[j];
    const double t = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  double sum = 0.0;
  for (auto& x : v) {
    x = std::max(x - theta, 0.0);
    sum += x;
  }
  for (auto& x : v) x /= sum;
  return v;
}

// ---------------------------------------------------------------------------
// Axiom 1: continuity
// ---------------------------------------------------------------------------

/// Empirical continuity probe. For each base point the modulus
/// ω(δ) = max |D(p') − D(p)| is measured over simplex-preserving moves of L1
/// size δ, then again at δ/10; the probe passes when every value is finite
/// and the modulus does not grow under refinement.
inline AxiomVerdict check_continuity(const QOrder& q, std::size_t n,
                                     std::uint64_t seed, double delta,
                                     std::size_t random_bases = 6,
                                     std::size_t directions = 16) {
  if (!(delta > 0.0 && delta <= 1e-3))
    throw std::invalid_argument("continuity delta must lie in (0, 1e-3]");
  if (n < 2) throw std::invalid_argument("continuity probe needs n >= 2");

  std::mt19937_64 rng(derive_seed(seed, 0xC0));
  std::vector<Distribution> bases{Distribution::uniform(n)};
  {
    auto w = sample_dirichlet(n, 1.0, rng);
    std::vector<double> edge(w.begin(), w.end());
    edge[0] = 0.0;
    const double s = 1.0 - w[0];
    for (auto& x : edge) x /= s;
    bases.emplace_back(std::move(edge));
  }
  for (std::size_t i = 0; i < random_bases; ++i)
    bases.push_back(sample_dirichlet(n, 1.0, rng));

  AxiomVerdict v{Axiom::continuity, q.value(), n, true, std::nullopt,
                 std::numeric_limits<double>::infinity()};
  double worst_modulus = 0.0;
  for (const auto& base : bases) {
    const double d0 = hybrid(base, q).value;
    double coarse = 0.0, fine = 0.0;
    bool finite = std::isfinite(d0);
    for (std::size_t j = 0; j < directions; ++j) {
      const auto target = sample_dirichlet(n, 1.0, rng);
      double l1 = 0.0;
      for (std::size_t k = 0; k < n; ++k) l1 += std::abs(target[k] - base[k]);
      if (!(l1 > 0.0)) continue;
      const double t = std::min(1.0, delta / l1);
      auto moved = [&](double s) {
        std::vector<double> w(n);
        for (std::size_t k = 0; k < n; ++k)
          w[k] = (1.0 - s) * base[k] + s * target[k];
        return hybrid(Distribution(std::move(w)), q).value;
      };
      const double d1 = moved(t), d2 = moved(t / 10.0);
      finite = finite && std::isfinite(d1) && std::isfinite(d2);
      coarse = std::max(coarse, std::abs(d1 - d0));
      fine = std::max(fine, std::abs(d2 - d0));
    }
    ++v.trials;
    worst_modulus = std::max(worst_modulus, coarse / delta);
    v.margin = std::min(v.margin, coarse - fine);
    if (!finite || fine > coarse + 1e-13) {
      v.passed = false;
      ++v.violations;
      if (!v.witness) v.witness = base;
    }
  }
  v.modulus = worst_modulus;
  return v;
}

// ---------------------------------------------------------------------------
// Axiom 2: maximality
// ---------------------------------------------------------------------------

struct AscentOptions {
  std::size_t restarts = 20;
  std::size_t iterations = 500;
  double fd_step = 1e-6;
  double tolerance = 1e-12;
};

namespace detail {

// D_q(x / Σx) on the nonnegative orthant.
inline double hybrid_on_orthant(std::vector<double> x, const QOrder& q) {
  double s = 0.0;
  for (double v : x) s += v;
  for (auto& v : x) v /= s;
  return hybrid(Distribution(std::move(x)), q).value;
}

inline std::vector<double> fd_gradient(const std::vector<double>& x,
                                       const QOrder& q, double h) {
  std::vector<double> g(x.size());
  const double fx = hybrid_on_orthant(x, q);
  for (std::size_t k = 0; k < x.size(); ++k) {
    auto up = x;
    up[k] += h;
    if (x[k] >= h) {
      auto down = x;
      down[k] -= h;
      g[k] = (hybrid_on_orthant(up, q) - hybrid_on_orthant(down, q)) / (2 * h);
    } else {
      g[k] = (hybrid_on_orthant(up, q) - fx) / h;
    }
  }
  double mean = 0.0;
  for (double v : g) mean += v;
  mean /= static_cast<double>(g.size());
  for (auto& v : g) v -= mean;
  return g;
}

struct AscentResult {
  Distribution point;
  double value;
};

inline AscentResult projected_ascent(
    Distribution start, const QOrder& q, const AscentOptions& opt,
    const std::function<void(const Distribution&)>& on_iterate) {
  std::vector<double> x(start.begin(), start.end());
  double fx = hybrid(start, q).value;
  double step = 0.1;
  for (std::size_t it = 0; it < opt.iterations; ++it) {
    const auto g = fd_gradient(x, q, opt.fd_step);
    double norm = 0.0;
    for (double v : g) norm += v * v;
    if (!(norm > 0.0)) break;

    bool accepted = false;
    double gain = 0.0;
    while (step > 1e-14) {
      std::vector<double> y(x.size());
      for (std::size_t k = 0; k < x.size(); ++k) y[k] = x[k] + step * g[k];
      y = project_to_simplex(std::move(y));
      const Distribution candidate(y);
      if (on_iterate) on_iterate(candidate);
      const double fy = hybrid(candidate, q).value;
      if (fy > fx) {
        gain = fy - fx;
        x = std::move(y);
        fx = fy;
        step = std::min(step * 2.0, 1.0);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted || gain < opt.tolerance) break;
  }
  return {Distribution(std::move(x)), fx};
}

}  // namespace detail

/// Multi-start projected finite-difference ascent on the simplex. Passes when
/// no point found beats D_q(uniform) by more than kMaximalitySlack; the best
/// point found is returned as the witness either way.
inline AxiomVerdict check_maximality(
    const QOrder& q, std::size_t n, std::uint64_t seed,
    const AscentOptions& opt = {},
    const std::function<void(const Distribution&)>& on_iterate = {}) {
  if (n < 2) throw std::invalid_argument("maximality search needs n >= 2");
  const double ceiling = hybrid(Distribution::uniform(n), q).value;

  std::vector<Distribution> starts;
  for (std::size_t i = 0; i < opt.restarts; ++i) {
    std::mt19937_64 rng(derive_seed(seed, i));
    starts.push_back(sample_dirichlet(n, 1.0, rng));
  }
  constexpr double kVertexMix = 0.05;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> w(n, kVertexMix / static_cast<double>(n));
    w[i] += 1.0 - kVertexMix;
    starts.emplace_back(std::move(w));
  }

  std::optional<detail::AscentResult> best;
  for (auto& s : starts) {
    auto res = detail::projected_ascent(std::move(s), q, opt, on_iterate);
    if (!best || res.value > best->value) best = std::move(res);
  }

  AxiomVerdict v{Axiom::maximality, q.value(), n,
                 best->value <= ceiling + kMaximalitySlack, best->point,
                 ceiling - best->value};
  v.trials = starts.size();
  v.violations = v.passed ? 0 : 1;
  return v;
}

// ---------------------------------------------------------------------------
// Axiom 3: expansibility
// ---------------------------------------------------------------------------

inline AxiomVerdict check_expansibility(const QOrder& q, const Distribution& p) {
  const double diff =
      std::abs(hybrid(p, q).value - hybrid(p.expanded(), q).value);
  AxiomVerdict v{Axiom::expansibility, q.value(), p.size(),
                 diff <= kExpansibilityTol, std::nullopt,
                 kExpansibilityTol - diff};
  v.trials = 1;
  if (!v.passed) {
    v.witness = p;
    v.violations = 1;
  }
  return v;
}

// ---------------------------------------------------------------------------
// Axiom 4: J-A additivity
// ---------------------------------------------------------------------------

inline AxiomVerdict check_additivity_independent(const QOrder& q,
                                                 std::uint64_t seed,
                                                 std::size_t trials) {
  double worst = 0.0;
  std::optional<JointDistribution> worst_joint;
  std::size_t violations = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    auto r = sample_product_joint(seed, i);
    const double res = std::abs(ja_residual(r, q));
    if (!(res < kIndependentResidualTol)) ++violations;
    if (!(res <= worst)) {
      worst = res;
      worst_joint = std::move(r);
    }
  }
  AxiomVerdict v{Axiom::additivity_independent, q.value(), kMaxEnsembleDim,
                 violations == 0, std::nullopt,
                 kIndependentResidualTol - worst};
  v.trials = trials;
  v.violations = violations;
  if (!v.passed && worst_joint) v.witness = *worst_joint;
  return v;
}

/// "Passed" means the chain rule was observed to break (|residual| above
/// kViolationThreshold) on at least kViolationQuorum of the trials.
inline AxiomVerdict check_additivity_dependent(const QOrder& q,
                                               std::uint64_t seed,
                                               std::size_t trials,
                                               double mi_floor) {
  AxiomVerdict v{Axiom::additivity_dependent, q.value(), kMaxEnsembleDim,
                 false, std::nullopt, 0.0};
  v.trials = trials;
  for (std::size_t i = 0; i < trials; ++i) {
    auto r = sample_dependent_joint(seed, i, mi_floor);
    if (std::abs(ja_residual(r, q)) > kViolationThreshold)
      ++v.violations;
    else
      v.exceptions.push_back(std::move(r));
  }
  const double fraction =
      trials == 0 ? 0.0
                  : static_cast<double>(v.violations) / static_cast<double>(trials);
  v.passed = trials > 0 && fraction >= kViolationQuorum;
  v.margin = fraction - kViolationQuorum;
  if (!v.passed && !v.exceptions.empty()) v.witness = v.exceptions.front();
  return v;
}

}  // namespace escortropy
