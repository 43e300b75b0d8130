#pragma once

// Deformed exponential/logarithm, the Kolmogorov–Nagumo map f_q with its
// inverse, and q-addition. Under f_q, q-addition becomes ordinary addition:
//
//   f_q(a ⊕_q b) = f_q(a) + f_q(b)
//
// Near q = 1 every formula is evaluated through expm1/log1p, and within
// kEpsQOne of 1 the classical limit is returned directly.

#include <cmath>
#include <string>

#include "escortropy/prob_core.hpp"

namespace escortropy {

class DomainCutoff : public Error {
 public:
  DomainCutoff(double x, double q)
      : Error("1 + (1 - q) x <= 0 for x = " + std::to_string(x) +
              ", q = " + std::to_string(q)) {}
};

class NonpositiveArgument : public Error {
 public:
  explicit NonpositiveArgument(double y)
      : Error("q_log requires a positive argument, got " + std::to_string(y)) {}
};

namespace detail {

inline double checked_log1p(double x, const QOrder& q) {
  const double t = q.deformation() * x;
  if (!(1.0 + t > 0.0)) throw DomainCutoff(x, q.value());
  return std::log1p(t);
}

}  // namespace detail

/// exp_q(x) = [1 + (1−q)x]^{1/(1−q)}
inline double q_exp(double x, const QOrder& q) {
  if (q.is_unit()) return std::exp(x);
  return std::exp(detail::checked_log1p(x, q) / q.deformation());
}

/// ln_q(y) = (y^{1−q} − 1)/(1−q)
inline double q_log(double y, const QOrder& q) {
  if (!(y > 0.0)) throw NonpositiveArgument(y);
  if (q.is_unit()) return std::log(y);
  return std::expm1(q.deformation() * std::log(y)) / q.deformation();
}

/// f_q(x) = ln exp_q(x)
inline double f_q(double x, const QOrder& q) {
  if (q.is_unit()) return x;
  return detail::checked_log1p(x, q) / q.deformation();
}

/// f_q^{-1}(x) = ln_q exp(x), defined on the whole real line.
inline double f_q_inv(double x, const QOrder& q) {
  if (q.is_unit()) return x;
  return std::expm1(q.deformation() * x) / q.deformation();
}

/// a ⊕_q b = a + b + (1−q)ab
inline double q_add(double a, double b, const QOrder& q) {
  return a + b + q.deformation() * a * b;
}

}  // namespace escortropy
