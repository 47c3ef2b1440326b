#pragma once

#include <cstddef>
#include <limits>

namespace plateau {

struct Interval {
  double estimate = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

// Running mean/variance over a fixed-order stream. Merging two accumulators
// is associative, so chunked parallel tallies reduce deterministically when
// merged in index order.
class MeanAccumulator {
 public:
  void add(double x) {
    n_ += 1;
    sum_ += x;
    sum_sq_ += x * x;
  }

  void merge(const MeanAccumulator& other) {
    n_ += other.n_;
    sum_ += other.sum_;
    sum_sq_ += other.sum_sq_;
  }

  std::size_t count() const { return n_; }
  double mean() const { return n_ ? sum_ / static_cast<double>(n_) : 0.0; }

  // population second moment about the mean
  double variance() const {
    if (n_ == 0) return 0.0;
    double m = mean();
    double v = sum_sq_ / static_cast<double>(n_) - m * m;
    return v > 0.0 ? v : 0.0;
  }

  double std_error() const;

 private:
  std::size_t n_ = 0;
  double sum_ = 0.0;
  double sum_sq_ = 0.0;
};

// Tracks power sums up to x^4 so both the variance and the standard error of
// the variance estimate (via the fourth central moment) are available.
class MomentAccumulator {
 public:
  void add(double x) {
    n_ += 1;
    s1_ += x;
    double x2 = x * x;
    s2_ += x2;
    s3_ += x2 * x;
    s4_ += x2 * x2;
  }

  std::size_t count() const { return n_; }
  double mean() const { return n_ ? s1_ / static_cast<double>(n_) : 0.0; }
  double second_moment() const { return n_ ? s2_ / static_cast<double>(n_) : 0.0; }
  double variance() const {
    double m = mean();
    double v = second_moment() - m * m;
    return v > 0.0 ? v : 0.0;
  }
  double mean_std_error() const;
  // Asymptotic standard error of the sample variance: sqrt((m4 - m2^2)/N)
  // with central moments m2, m4.
  double variance_std_error() const;

 private:
  std::size_t n_ = 0;
  double s1_ = 0.0, s2_ = 0.0, s3_ = 0.0, s4_ = 0.0;
};

// Inverse standard normal CDF (Acklam's rational approximation, ~1e-9).
double inverse_normal_cdf(double p);

// Regularized incomplete beta I_x(a, b).
double regularized_incomplete_beta(double a, double b, double x);

// Exact binomial (Clopper-Pearson) interval for k successes in n trials.
Interval clopper_pearson(std::size_t k, std::size_t n, double confidence);

// Normal-approximation interval for a sample mean.
Interval normal_interval(double mean, double std_error, double confidence);

Interval exact_interval(double value);

// Clamp an interval to [lo, hi] without moving the point estimate outside.
Interval clamp_interval(Interval iv, double lo, double hi);

}  // namespace plateau
