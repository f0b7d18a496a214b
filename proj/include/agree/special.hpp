#pragma once

// Scalar distribution helpers used by the inferential tests. Everything is
// self-contained; only log-factorials above the precomputed range fall back
// to std::lgamma.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace agree {

// Two-sided normal p-value for a z statistic: 2*(1 - Phi(|z|)).
inline double normal_two_sided_p(double z) {
  return std::erfc(std::abs(z) / std::sqrt(2.0));
}

// log(n!) with a thread-safe precomputed table (std::lgamma mutates the
// global signgam, so it is avoided on hot multithreaded paths).
inline double log_factorial(std::int64_t n) {
  static const std::vector<double> table = [] {
    std::vector<double> t(4097, 0.0);
    for (std::size_t i = 2; i < t.size(); ++i)
      t[i] = t[i - 1] + std::log(static_cast<double>(i));
    return t;
  }();
  if (n < 0) return std::numeric_limits<double>::quiet_NaN();
  if (static_cast<std::size_t>(n) < table.size())
    return table[static_cast<std::size_t>(n)];
  return std::lgamma(static_cast<double>(n) + 1.0);
}

inline double log_choose(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

namespace detail {

// Continued fraction for the regularized incomplete beta (Lentz's method).
inline double beta_cont_frac(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 1e-15;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace detail

// Regularized incomplete beta I_x(a,b).
inline double inc_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) -
                          std::lgamma(b) + a * std::log(x) +
                          b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * detail::beta_cont_frac(a, b, x) / a;
  }
  return 1.0 - front * detail::beta_cont_frac(b, a, 1.0 - x) / b;
}

// Two-sided p-value of a Student t statistic with df degrees of freedom:
// P(|T| >= |t|) = I_{df/(df+t^2)}(df/2, 1/2).
inline double student_t_two_sided_p(double t, double df) {
  if (!(df > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(t)) return 0.0;
  return inc_beta(df / 2.0, 0.5, df / (df + t * t));
}

// P(X <= k) for X ~ Binomial(m, 1/2), exact summation in log space.
inline double binom_half_cdf(std::int64_t k, std::int64_t m) {
  if (k < 0) return 0.0;
  if (k >= m) return 1.0;
  const double log_half_m = -static_cast<double>(m) * std::log(2.0);
  double sum = 0.0;
  for (std::int64_t i = 0; i <= k; ++i) {
    sum += std::exp(log_choose(m, i) + log_half_m);
  }
  return std::min(1.0, sum);
}

}  // namespace agree
