#pragma once

// Entropy functionals in nats. 0·ln 0 is taken as 0 and 0^q as 0 for q > 0.

#include <algorithm>
#include <cmath>
#include <string_view>

#include "escortropy/escort.hpp"
#include "escortropy/prob_core.hpp"
#include "escortropy/q_calculus.hpp"

namespace escortropy {

enum class Functional {
  shannon,
  renyi,
  tsallis,
  hybrid,
  aczel_daroczy,
  cross_shannon,
};

constexpr std::string_view to_string(Functional f) {
  switch (f) {
    case Functional::shannon: return "shannon";
    case Functional::renyi: return "renyi";
    case Functional::tsallis: return "tsallis";
    case Functional::hybrid: return "hybrid";
    case Functional::aczel_daroczy: return "aczel_daroczy";
    case Functional::cross_shannon: return "cross_shannon";
  }
  return "?";
}

struct EntropyValue {
  double value;
  Functional functional;
  /// q for the q-family, α for Rényi, 1 for Shannon.
  double order;
};

inline EntropyValue shannon(const Distribution& p) {
  return {detail::plogp_sum(p.weights()), Functional::shannon, 1.0};
}

/// I_α(p) = ln(Σ p^α) / (1 − α). Near α = 1 the sum minus one is
/// accumulated as Σ p·expm1((α−1) ln p); once that excess approaches −1 the
/// power sum itself is tiny and its logarithm is taken directly, scaled by
/// the largest weight.
inline EntropyValue renyi(const Distribution& p, double alpha) {
  if (!(alpha > 0.0)) throw InvalidOrder(alpha);
  if (std::abs(alpha - 1.0) < kEpsQOne)
    return {shannon(p).value, Functional::renyi, alpha};
  double excess = 0.0;
  for (double x : p)
    if (x > 0.0) excess += x * std::expm1((alpha - 1.0) * std::log(x));
  if (std::abs(excess) < 0.5)
    return {std::log1p(excess) / (1.0 - alpha), Functional::renyi, alpha};
  const double top = *std::max_element(p.begin(), p.end());
  double scaled = 0.0;
  for (double x : p)
    if (x > 0.0) scaled += std::pow(x / top, alpha);
  const double log_sum = alpha * std::log(top) + std::log(scaled);
  return {log_sum / (1.0 - alpha), Functional::renyi, alpha};
}

/// (Σ p^q − 1) / (1 − q)
inline EntropyValue tsallis(const Distribution& p, const QOrder& q) {
  if (q.is_unit()) return {shannon(p).value, Functional::tsallis, q.value()};
  double excess = 0.0;
  for (double x : p)
    if (x > 0.0) excess += x * std::expm1(-q.deformation() * std::log(x));
  return {excess / q.deformation(), Functional::tsallis, q.value()};
}

/// −Σ p^q ln p / Σ p^q, evaluated as a ratio of raw power sums.
inline EntropyValue aczel_daroczy(const Distribution& p, const QOrder& q) {
  if (q.is_unit())
    return {shannon(p).value, Functional::aczel_daroczy, q.value()};
  const double top = *std::max_element(p.begin(), p.end());
  double num = 0.0, den = 0.0;
  for (double x : p) {
    if (!(x > 0.0)) continue;
    const double w = std::pow(x / top, q.value());
    num -= w * std::log(x);
    den += w;
  }
  return {num / den, Functional::aczel_daroczy, q.value()};
}

/// D_q(p) = (exp(−(1−q) Σ P(q)_k ln p_k) − 1) / (1 − q), with the escort
/// formed first and then averaged against ln p.
inline EntropyValue hybrid(const Distribution& p, const QOrder& q) {
  const auto big_p = escort(p, q);
  double mean_log = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k)
    if (p[k] > 0.0) mean_log += big_p[k] * std::log(p[k]);
  return {f_q_inv(-mean_log, q), Functional::hybrid, q.value()};
}

/// D_q(A, B): the hybrid entropy of the flattened joint table.
inline EntropyValue hybrid_joint(const JointDistribution& r, const QOrder& q) {
  return hybrid(r.flatten(), q);
}

/// S̃(R(q)) = −Σ R̃(q)_{kl} ln R(q)_{kl}; cells with R(q)_{kl} = 0 carry
/// R̃(q)_{kl} = 0 as well and contribute nothing.
inline EntropyValue cross_shannon(const JointDistribution& r, const QOrder& q) {
  const auto pair = joint_escort_pair(r, q);
  double s = 0.0;
  for (std::size_t i = 0; i < pair.naive.data.size(); ++i)
    if (pair.naive.data[i] > 0.0)
      s -= pair.correct.data[i] * std::log(pair.naive.data[i]);
  return {s, Functional::cross_shannon, q.value()};
}

}  // namespace escortropy
