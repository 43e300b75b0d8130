#pragma once

// Escort transforms P(q)_k = p_k^q / Σ_i p_i^q and the two joint escorts
// built from a joint table r:
//
//   naive   R(q)_{kl} = r_{kl}^q / Σ_{mn} r_{mn}^q
//   correct R̃(q)_{kl} = P(q)_l · r_{k|l}^q / Σ_m r_{m|l}^q
//
// The correct one has escort(marginal_a(r)) as its A-marginal by
// construction; the naive one does so only when the column power sums
// c_l = Σ_m r_{m|l}^q agree for every l.

#include <algorithm>
#include <cmath>
#include <vector>

#include "escortropy/prob_core.hpp"

namespace escortropy {

inline constexpr double kEscortConsistencyTol = 1e-9;

class EscortView {
 public:
  EscortView(Distribution weights, QOrder order, Distribution origin)
      : weights_(std::move(weights)), order_(order), origin_(std::move(origin)) {}

  const Distribution& weights() const noexcept { return weights_; }
  QOrder order() const noexcept { return order_; }
  const Distribution& origin() const noexcept { return origin_; }
  double operator[](std::size_t k) const { return weights_[k]; }
  std::size_t size() const noexcept { return weights_.size(); }

 private:
  Distribution weights_;
  QOrder order_;
  Distribution origin_;
};

namespace detail {

// Normalized w_k^power, scaled by the largest weight to keep pow in range.
// Zero weights stay zero for power > 0.
inline std::vector<double> normalized_power(std::span<const double> w,
                                            double power) {
  const double top = *std::max_element(w.begin(), w.end());
  std::vector<double> out(w.size(), 0.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] > 0.0) out[i] = std::pow(w[i] / top, power);
    sum += out[i];
  }
  for (auto& x : out) x /= sum;
  return out;
}

}  // namespace detail

inline EscortView escort(const Distribution& p, const QOrder& q) {
  if (q.is_unit()) return EscortView(p, q, p);
  return EscortView(Distribution(detail::normalized_power(p.weights(), q.value())),
                    q, p);
}

/// p_k = P_k^{1/q} / Σ_i P_i^{1/q}
inline Distribution escort_inverse(const EscortView& view) {
  if (view.order().is_unit()) return view.weights();
  return Distribution(
      detail::normalized_power(view.weights().weights(), 1.0 / view.order().value()));
}

inline Matrix joint_escort_naive(const JointDistribution& r, const QOrder& q) {
  if (q.is_unit()) return r.table();
  Matrix m(r.n_b(), r.n_a());
  m.data = detail::normalized_power(r.table().data, q.value());
  return m;
}

/// Column l is the escort of r_{·|l}.
inline ConditionalDistribution conditional_escort(const JointDistribution& r,
                                                  const QOrder& q) {
  auto cond = condition_on_a(r);
  if (q.is_unit()) return cond;
  for (auto& col : cond.columns) col = escort(col, q).weights();
  return cond;
}

inline Matrix joint_escort_correct(const JointDistribution& r,
                                   const QOrder& q) {
  const auto cond = conditional_escort(r, q);
  const auto big_p = escort(marginal_a(r), q);
  Matrix m(r.n_b(), r.n_a());
  for (std::size_t k = 0; k < r.n_b(); ++k)
    for (std::size_t l = 0; l < r.n_a(); ++l) m(k, l) = big_p[l] * cond(k, l);
  return m;
}

struct JointEscortPair {
  Matrix naive;
  Matrix correct;
  QOrder order;
};

inline JointEscortPair joint_escort_pair(const JointDistribution& r,
                                         const QOrder& q) {
  return {joint_escort_naive(r, q), joint_escort_correct(r, q), q};
}

/// c_l = Σ_m r_{m|l}^q for each A outcome l.
inline std::vector<double> column_power_sums(const JointDistribution& r,
                                             const QOrder& q) {
  const auto cond = condition_on_a(r);
  std::vector<double> c(r.n_a(), 0.0);
  for (std::size_t l = 0; l < r.n_a(); ++l)
    for (double x : cond.columns[l])
      if (x > 0.0) c[l] += std::pow(x, q.value());
  return c;
}

/// R̃(q)_{kl} / R(q)_{kl} in closed form: Σ_m P(q)_m c_m / c_l.
/// Finite on every cell, including those where R(q)_{kl} = 0.
inline Matrix escort_ratio(const JointDistribution& r, const QOrder& q) {
  Matrix m(r.n_b(), r.n_a(), 1.0);
  if (q.is_unit()) {
    require_positive_columns(r);
    return m;
  }
  const auto c = column_power_sums(r, q);
  const auto big_p = escort(marginal_a(r), q);
  double mean = 0.0;
  for (std::size_t l = 0; l < c.size(); ++l) mean += big_p[l] * c[l];
  for (std::size_t k = 0; k < r.n_b(); ++k)
    for (std::size_t l = 0; l < r.n_a(); ++l) m(k, l) = mean / c[l];
  return m;
}

inline bool is_escort_consistent(const JointDistribution& r, const QOrder& q,
                                 double tol = kEscortConsistencyTol) {
  const auto pair = joint_escort_pair(r, q);
  return max_abs_diff(pair.naive, pair.correct) < tol;
}

}  // namespace escortropy
