#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace gravbath {

inline double mean(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

/// Unbiased sample variance (two-pass, deterministic summation order).
inline double variance(std::span<const double> xs) {
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

inline double std_error_of_mean(std::span<const double> xs) {
  return std::sqrt(variance(xs) / static_cast<double>(xs.size()));
}

inline double skewness(std::span<const double> xs) {
  const double m = mean(xs);
  double s2 = 0.0, s3 = 0.0;
  for (double x : xs) {
    const double d = x - m;
    s2 += d * d;
    s3 += d * d * d;
  }
  const double n = static_cast<double>(xs.size());
  const double sigma = std::sqrt(s2 / n);
  return (s3 / n) / (sigma * sigma * sigma);
}

inline double excess_kurtosis(std::span<const double> xs) {
  const double m = mean(xs);
  double s2 = 0.0, s4 = 0.0;
  for (double x : xs) {
    const double d = x - m;
    s2 += d * d;
    s4 += d * d * d * d;
  }
  const double n = static_cast<double>(xs.size());
  const double v = s2 / n;
  return (s4 / n) / (v * v) - 3.0;
}

inline double correlation(std::span<const double> xs, std::span<const double> ys) {
  const double mx = mean(xs), my = mean(ys);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace gravbath
