#pragma once

// The q-additive chain rule for the hybrid entropy, worked in the additive
// (Aczél–Dáróczy) scale. Two conditional entropies are compared:
//
//   chain      f_q(D(B|A)) = f_q(D(A,B)) − f_q(D(A))
//   axiomatic  f_q(D(B|A)) = Σ_l P(q)_l f_q(D(B | A = A_l))
//
// They differ by exactly (1/q)·(S̃(R(q)) − S(R(q))), which vanishes iff the
// naive joint escort coincides with the correct one. Values cross back to
// the D_q scale only through f_q_inv.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "escortropy/entropies.hpp"
#include "escortropy/escort.hpp"
#include "escortropy/prob_core.hpp"
#include "escortropy/q_calculus.hpp"

namespace escortropy {

/// Sign of the exponent in the correction tilt that makes the corrected
/// residual vanish when the axiomatic conditional is tilted. Checked against
/// the brute-force residual in the chain-rule tests.
inline constexpr double kCorrectionExponentSign = -1.0;

inline double conditional_chain(const JointDistribution& r, const QOrder& q) {
  return aczel_daroczy(r.flatten(), q).value -
         aczel_daroczy(marginal_a(r), q).value;
}

/// Same quantity via Shannon and Rényi entropies of the escorts:
/// (1/q)[S(R) − S(P)] − ((1−q)/q)[I_{1/q}(R) − I_{1/q}(P)].
inline double conditional_chain_escort_form(const JointDistribution& r,
                                            const QOrder& q) {
  const double qv = q.value();
  const Distribution big_r(joint_escort_naive(r, q).data);
  const auto big_p = escort(marginal_a(r), q).weights();
  return (shannon(big_r).value - shannon(big_p).value) / qv -
         q.deformation() / qv *
             (renyi(big_r, 1.0 / qv).value - renyi(big_p, 1.0 / qv).value);
}

inline double conditional_axiomatic(const JointDistribution& r,
                                    const QOrder& q) {
  const auto cond = condition_on_a(r);
  const auto big_p = escort(marginal_a(r), q);
  double mean = 0.0;
  for (std::size_t l = 0; l < r.n_a(); ++l)
    mean += big_p[l] * aczel_daroczy(cond.columns[l], q).value;
  return mean;
}

/// (1/q)[S̃(R) − S(P)] − ((1−q)/q)[I_{1/q}(R) − I_{1/q}(P)]
inline double conditional_axiomatic_escort_form(const JointDistribution& r,
                                                const QOrder& q) {
  const double qv = q.value();
  const Distribution big_r(joint_escort_naive(r, q).data);
  const auto big_p = escort(marginal_a(r), q).weights();
  return (cross_shannon(r, q).value - shannon(big_p).value) / qv -
         q.deformation() / qv *
             (renyi(big_r, 1.0 / qv).value - renyi(big_p, 1.0 / qv).value);
}

/// D(A,B) − [D(A) ⊕_q conditional] for a conditional given in the D_q scale.
inline double ja_residual_with(const JointDistribution& r, const QOrder& q,
                               double conditional) {
  return hybrid_joint(r, q).value -
         q_add(hybrid(marginal_a(r), q).value, conditional, q);
}

/// Defect of J-A additivity when the conditional is the escort-weighted
/// Kolmogorov–Nagumo mean. Zero for product joints.
inline double ja_residual(const JointDistribution& r, const QOrder& q) {
  return ja_residual_with(r, q, f_q_inv(conditional_axiomatic(r, q), q));
}

/// S̃(R(q)) − S(R(q))
inline double s_gap(const JointDistribution& r, const QOrder& q) {
  const Distribution big_r(joint_escort_naive(r, q).data);
  return cross_shannon(r, q).value - shannon(big_r).value;
}

struct MinMaxBounds {
  double lower;
  double upper;
};

/// Bounds on S̃ − S from replacing the escort mean of c_l by its extremes:
///   Σ_{kl} (−R ln R)_{kl} · Σ_n (min_l r_{n|l}^q − r_{n|l}^q) / c_l  (lower)
/// and likewise with max_l (upper).
inline MinMaxBounds minmax_bounds(const JointDistribution& r, const QOrder& q) {
  const auto cond = condition_on_a(r);
  const auto big_r = joint_escort_naive(r, q);
  const std::size_t nb = r.n_b(), na = r.n_a();

  std::vector<double> c(na, 0.0);
  double sum_min = 0.0, sum_max = 0.0;
  for (std::size_t n = 0; n < nb; ++n) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t l = 0; l < na; ++l) {
      const double x = cond(n, l);
      const double xq = x > 0.0 ? std::pow(x, q.value()) : 0.0;
      c[l] += xq;
      lo = std::min(lo, xq);
      hi = std::max(hi, xq);
    }
    sum_min += lo;
    sum_max += hi;
  }

  MinMaxBounds b{0.0, 0.0};
  for (std::size_t k = 0; k < nb; ++k)
    for (std::size_t l = 0; l < na; ++l) {
      const double rr = big_r(k, l);
      if (!(rr > 0.0)) continue;
      const double w = -rr * std::log(rr);
      b.lower += w * (sum_min - c[l]) / c[l];
      b.upper += w * (sum_max - c[l]) / c[l];
    }
  return b;
}

/// Exponential tilt D ↦ e^t (D + 1/(1−q)) − 1/(1−q) with
/// t = sign·((1−q)/q)·gap, written as D·e^t + expm1(t)/(1−q).
/// In the f_q scale this shifts the value by sign·gap/q.
inline double apply_correction_tilt(double conditional, double gap,
                                    const QOrder& q,
                                    double sign = kCorrectionExponentSign) {
  if (q.is_unit()) return conditional;
  const double t = sign * q.deformation() / q.value() * gap;
  return conditional * std::exp(t) + std::expm1(t) / q.deformation();
}

/// Axiomatic conditional (D_q scale) tilted so that J-A additivity closes.
inline double corrected_conditional(const JointDistribution& r,
                                    const QOrder& q) {
  const double d = f_q_inv(conditional_axiomatic(r, q), q);
  if (q.is_unit()) return d;
  return apply_correction_tilt(d, s_gap(r, q), q);
}

struct ChainRuleReport {
  double q;
  /// f_q(D(A,B))
  double joint_entropy;
  /// f_q(D(A))
  double marginal_entropy;
  double conditional_chain;
  double conditional_axiomatic;
  /// conditional_axiomatic − conditional_chain
  double gap;
  double s_tilde_minus_s;
  double lower_bound;
  double upper_bound;
  double residual;
  double corrected_residual;
};

inline ChainRuleReport chain_rule_report(const JointDistribution& r,
                                         const QOrder& q) {
  ChainRuleReport rep{};
  rep.q = q.value();
  rep.joint_entropy = aczel_daroczy(r.flatten(), q).value;
  rep.marginal_entropy = aczel_daroczy(marginal_a(r), q).value;
  rep.conditional_chain = rep.joint_entropy - rep.marginal_entropy;
  rep.conditional_axiomatic = conditional_axiomatic(r, q);
  rep.gap = rep.conditional_axiomatic - rep.conditional_chain;
  rep.s_tilde_minus_s = s_gap(r, q);
  const auto bounds = minmax_bounds(r, q);
  rep.lower_bound = bounds.lower;
  rep.upper_bound = bounds.upper;
  rep.residual = ja_residual_with(r, q, f_q_inv(rep.conditional_axiomatic, q));
  const double corrected =
      q.is_unit() ? f_q_inv(rep.conditional_axiomatic, q)
                  : apply_correction_tilt(f_q_inv(rep.conditional_axiomatic, q),
                                          rep.s_tilde_minus_s, q);
  rep.corrected_residual = ja_residual_with(r, q, corrected);
  return rep;
}

}  // namespace escortropy
