#pragma once

// Finite probability objects: validated distributions, joint tables with
// marginals and conditionals, the entropic order q, and seeded samplers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace escortropy {

/// Absolute tolerance on Σp = 1 accepted at validation.
inline constexpr double kEpsNorm = 1e-9;
/// |q − 1| below this selects the analytic Shannon-limit branch.
inline constexpr double kEpsQOne = 1e-8;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NegativeWeight : public Error {
 public:
  NegativeWeight(std::size_t index, double value)
      : Error("negative weight " + std::to_string(value) + " at index " +
              std::to_string(index)),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class NotNormalized : public Error {
 public:
  explicit NotNormalized(double deficit)
      : Error("weights do not sum to 1 (deficit " + std::to_string(deficit) +
              ")"),
        deficit_(deficit) {}
  /// 1 − Σp; negative when the weights overshoot.
  double deficit() const noexcept { return deficit_; }

 private:
  double deficit_;
};

class ZeroMarginalColumn : public Error {
 public:
  explicit ZeroMarginalColumn(std::size_t column)
      : Error("A-marginal is zero in column " + std::to_string(column)),
        column_(column) {}
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

class EmptyInput : public Error {
 public:
  EmptyInput() : Error("empty weight list") {}
};

class InvalidOrder : public Error {
 public:
  explicit InvalidOrder(double q)
      : Error("entropic order must be positive and finite, got " +
              std::to_string(q)) {}
};

// ---------------------------------------------------------------------------
// QOrder
// ---------------------------------------------------------------------------

class QOrder {
 public:
  explicit QOrder(double q) : value_(q) {
    if (!(q > 0.0) || !std::isfinite(q)) throw InvalidOrder(q);
  }

  double value() const noexcept { return value_; }
  /// 1 − q, the deformation strength.
  double deformation() const noexcept { return 1.0 - value_; }
  bool is_unit() const noexcept { return std::abs(value_ - 1.0) < kEpsQOne; }

 private:
  double value_;
};

// ---------------------------------------------------------------------------
// Matrix (row-major, rows = B outcomes, cols = A outcomes)
// ---------------------------------------------------------------------------

struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t k, std::size_t l) { return data[k * cols + l]; }
  double operator()(std::size_t k, std::size_t l) const {
    return data[k * cols + l];
  }

  double sum() const { return std::accumulate(data.begin(), data.end(), 0.0); }
};

/// Largest elementwise |a − b|. Shapes must agree.
inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows != b.rows || a.cols != b.cols)
    throw std::invalid_argument("matrix shape mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i)
    worst = std::max(worst, std::abs(a.data[i] - b.data[i]));
  return worst;
}

// ---------------------------------------------------------------------------
// Distribution
// ---------------------------------------------------------------------------

namespace detail {

// Checks sign and normalization, then divides by the sum so that downstream
// identities see exact normalization.
inline std::vector<double> validated_weights(std::vector<double> w) {
  if (w.empty()) throw EmptyInput();
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(w[i] >= 0.0) || !std::isfinite(w[i])) throw NegativeWeight(i, w[i]);
    sum += w[i];
  }
  if (!(std::abs(sum - 1.0) <= kEpsNorm)) throw NotNormalized(1.0 - sum);
  if (sum != 1.0)
    for (auto& x : w) x /= sum;
  return w;
}

}  // namespace detail

class Distribution {
 public:
  explicit Distribution(std::vector<double> weights)
      : weights_(detail::validated_weights(std::move(weights))) {}

  static Distribution uniform(std::size_t n) {
    if (n == 0) throw EmptyInput();
    return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

  std::size_t size() const noexcept { return weights_.size(); }
  double operator[](std::size_t k) const { return weights_[k]; }
  std::span<const double> weights() const noexcept { return weights_; }
  auto begin() const noexcept { return weights_.begin(); }
  auto end() const noexcept { return weights_.end(); }

  /// Copy with a zero-probability outcome appended.
  Distribution expanded() const {
    auto w = weights_;
    w.push_back(0.0);
    return Distribution(std::move(w));
  }

  friend bool operator==(const Distribution&, const Distribution&) = default;

 private:
  std::vector<double> weights_;
};

inline Distribution validate_distribution(std::vector<double> weights) {
  return Distribution(std::move(weights));
}

// ---------------------------------------------------------------------------
// JointDistribution r_{kl} = p(B = B_k, A = A_l)
// ---------------------------------------------------------------------------

class JointDistribution {
 public:
  explicit JointDistribution(Matrix m) : table_(std::move(m)) {
    if (table_.rows == 0 || table_.cols == 0) throw EmptyInput();
    table_.data = detail::validated_weights(std::move(table_.data));
  }

  /// Rows are B outcomes. All rows must have the same length.
  static JointDistribution from_rows(
      const std::vector<std::vector<double>>& rows) {
    if (rows.empty() || rows.front().empty()) throw EmptyInput();
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (rows[k].size() != m.cols)
        throw Error("ragged joint table: row " + std::to_string(k) +
                    " has " + std::to_string(rows[k].size()) +
                    " entries, expected " + std::to_string(m.cols));
      for (std::size_t l = 0; l < m.cols; ++l) m(k, l) = rows[k][l];
    }
    return JointDistribution(std::move(m));
  }

  std::size_t n_b() const noexcept { return table_.rows; }
  std::size_t n_a() const noexcept { return table_.cols; }
  double operator()(std::size_t k, std::size_t l) const { return table_(k, l); }
  const Matrix& table() const noexcept { return table_; }

  Distribution flatten() const { return Distribution(table_.data); }

  friend bool operator==(const JointDistribution& a,
                         const JointDistribution& b) {
    return a.table_.rows == b.table_.rows && a.table_.cols == b.table_.cols &&
           a.table_.data == b.table_.data;
  }

 private:
  Matrix table_;
};

/// Column l holds r_{k|l} over k.
struct ConditionalDistribution {
  std::vector<Distribution> columns;

  double operator()(std::size_t k, std::size_t l) const {
    return columns[l][k];
  }
};

enum class ZeroColumnPolicy { strict, lenient };

// ---------------------------------------------------------------------------
// Marginals and conditioning
// ---------------------------------------------------------------------------

/// p_l = Σ_k r_{kl}
inline Distribution marginal_a(const JointDistribution& r) {
  std::vector<double> p(r.n_a(), 0.0);
  for (std::size_t k = 0; k < r.n_b(); ++k)
    for (std::size_t l = 0; l < r.n_a(); ++l) p[l] += r(k, l);
  return Distribution(std::move(p));
}

/// Σ_l r_{kl}
inline Distribution marginal_b(const JointDistribution& r) {
  std::vector<double> q(r.n_b(), 0.0);
  for (std::size_t k = 0; k < r.n_b(); ++k)
    for (std::size_t l = 0; l < r.n_a(); ++l) q[k] += r(k, l);
  return Distribution(std::move(q));
}

/// Joint with zero-probability A columns removed, plus their original indices.
struct ColumnReduction {
  JointDistribution joint;
  std::vector<std::size_t> dropped;
};

inline ColumnReduction drop_zero_columns(const JointDistribution& r) {
  const auto p = marginal_a(r);
  std::vector<std::size_t> kept, dropped;
  for (std::size_t l = 0; l < p.size(); ++l)
    (p[l] > 0.0 ? kept : dropped).push_back(l);
  Matrix m(r.n_b(), kept.size());
  for (std::size_t k = 0; k < r.n_b(); ++k)
    for (std::size_t j = 0; j < kept.size(); ++j) m(k, j) = r(k, kept[j]);
  return {JointDistribution(std::move(m)), std::move(dropped)};
}

inline void require_positive_columns(const JointDistribution& r) {
  const auto p = marginal_a(r);
  for (std::size_t l = 0; l < p.size(); ++l)
    if (!(p[l] > 0.0)) throw ZeroMarginalColumn(l);
}

/// r_{k|l} = r_{kl} / p_l. Lenient mode conditions only on the nonzero columns.
inline ConditionalDistribution condition_on_a(
    const JointDistribution& r,
    ZeroColumnPolicy policy = ZeroColumnPolicy::strict) {
  if (policy == ZeroColumnPolicy::lenient)
    return condition_on_a(drop_zero_columns(r).joint);
  const auto p = marginal_a(r);
  ConditionalDistribution c;
  c.columns.reserve(r.n_a());
  for (std::size_t l = 0; l < r.n_a(); ++l) {
    if (!(p[l] > 0.0)) throw ZeroMarginalColumn(l);
    std::vector<double> col(r.n_b());
    for (std::size_t k = 0; k < r.n_b(); ++k) col[k] = r(k, l) / p[l];
    c.columns.emplace_back(std::move(col));
  }
  return c;
}

/// r_{kl} = qB_k · pA_l
inline JointDistribution product_joint(const Distribution& p_a,
                                       const Distribution& q_b) {
  Matrix m(q_b.size(), p_a.size());
  for (std::size_t k = 0; k < q_b.size(); ++k)
    for (std::size_t l = 0; l < p_a.size(); ++l) m(k, l) = q_b[k] * p_a[l];
  return JointDistribution(std::move(m));
}

namespace detail {

inline double plogp_sum(std::span<const double> w) {
  double s = 0.0;
  for (double x : w)
    if (x > 0.0) s -= x * std::log(x);
  return s;
}

}  // namespace detail

/// I(A;B) = S(A) + S(B) − S(A,B) in nats, clamped at zero.
inline double mutual_information(const JointDistribution& r) {
  const double mi = detail::plogp_sum(marginal_a(r).weights()) +
                    detail::plogp_sum(marginal_b(r).weights()) -
                    detail::plogp_sum(r.table().data);
  return std::max(mi, 0.0);
}

// ---------------------------------------------------------------------------
// Seeded sampling
// ---------------------------------------------------------------------------

/// splitmix64 finalizer; maps (seed, index) to a decorrelated stream seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Symmetric Dirichlet draw from a caller-owned generator.
template <class Rng>
Distribution sample_dirichlet(std::size_t n, double concentration, Rng& rng) {
  if (n == 0) throw EmptyInput();
  if (!(concentration > 0.0))
    throw std::invalid_argument("Dirichlet concentration must be positive");
  std::gamma_distribution<double> gamma(concentration, 1.0);
  std::vector<double> w(n);
  double sum = 0.0;
  for (auto& x : w) {
    x = gamma(rng);
    sum += x;
  }
  if (!(sum > 0.0)) {
    // Every gamma draw underflowed; the limit law puts all mass on one vertex.
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::fill(w.begin(), w.end(), 0.0);
    w[pick(rng)] = 1.0;
    return Distribution(std::move(w));
  }
  for (auto& x : w) x /= sum;
  return Distribution(std::move(w));
}

inline Distribution random_distribution(std::size_t n, std::uint64_t seed,
                                        double concentration = 1.0) {
  std::mt19937_64 rng(seed);
  return sample_dirichlet(n, concentration, rng);
}

inline JointDistribution random_joint(std::size_t n_b, std::size_t n_a,
                                      std::uint64_t seed,
                                      double concentration = 1.0) {
  if (n_b == 0 || n_a == 0) throw EmptyInput();
  const auto flat = random_distribution(n_b * n_a, seed, concentration);
  Matrix m(n_b, n_a);
  std::copy(flat.begin(), flat.end(), m.data.begin());
  return JointDistribution(std::move(m));
}

}  // namespace escortropy
