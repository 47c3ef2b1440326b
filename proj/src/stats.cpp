#include "plateau/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace plateau {

double MeanAccumulator::std_error() const {
  if (n_ < 2) return std::numeric_limits<double>::infinity();
  double var = variance() * static_cast<double>(n_) / static_cast<double>(n_ - 1);
  return std::sqrt(var / static_cast<double>(n_));
}

double MomentAccumulator::mean_std_error() const {
  if (n_ < 2) return std::numeric_limits<double>::infinity();
  double var = variance() * static_cast<double>(n_) / static_cast<double>(n_ - 1);
  return std::sqrt(var / static_cast<double>(n_));
}

double MomentAccumulator::variance_std_error() const {
  if (n_ < 2) return std::numeric_limits<double>::infinity();
  double nd = static_cast<double>(n_);
  double m = mean();
  double m2 = s2_ / nd - m * m;
  // central fourth moment from raw power sums
  double m4 = (s4_ - 4.0 * m * s3_ + 6.0 * m * m * s2_) / nd - 3.0 * m * m * m * m;
  double v = m4 - m2 * m2;
  if (v < 0.0) v = 0.0;
  return std::sqrt(v / nd);
}

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("inverse_normal_cdf: p must be in (0,1)");

  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};

  const double plow = 0.02425;
  double q, r, x;
  if (p < plow) {
    q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    q = p - 0.5;
    r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  return x;
}

namespace {

double beta_cf(double a, double b, double x) {
  // Lentz's continued fraction for the incomplete beta function.
  const int max_iter = 300;
  const double eps = 3e-16;
  const double fpmin = 1e-300;
  double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0, d = 1.0 - qab * x / qap;
  if (std::fabs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_iter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < eps) break;
  }
  return h;
}

double inc_beta_inverse(double a, double b, double p) {
  // Monotone bisection; 200 halvings reach full double precision in [0,1].
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    if (regularized_incomplete_beta(a, b, mid) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                 b * std::log1p(-x);
  double bt = std::exp(ln_bt);
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cf(a, b, x) / a;
  return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

Interval clopper_pearson(std::size_t k, std::size_t n, double confidence) {
  if (n == 0) throw std::invalid_argument("clopper_pearson: n must be positive");
  if (k > n) throw std::invalid_argument("clopper_pearson: k > n");
  double alpha = 1.0 - confidence;
  double kd = static_cast<double>(k), nd = static_cast<double>(n);
  Interval iv;
  iv.estimate = kd / nd;
  iv.lo = (k == 0) ? 0.0 : inc_beta_inverse(kd, nd - kd + 1.0, alpha / 2.0);
  iv.hi = (k == n) ? 1.0 : inc_beta_inverse(kd + 1.0, nd - kd, 1.0 - alpha / 2.0);
  return iv;
}

Interval normal_interval(double mean, double std_error, double confidence) {
  double z = inverse_normal_cdf(1.0 - (1.0 - confidence) / 2.0);
  if (!std::isfinite(std_error)) std_error = 0.0;
  return Interval{mean, mean - z * std_error, mean + z * std_error};
}

Interval exact_interval(double value) { return Interval{value, value, value}; }

Interval clamp_interval(Interval iv, double lo, double hi) {
  if (iv.lo < lo) iv.lo = lo;
  if (iv.hi > hi) iv.hi = hi;
  return iv;
}

}  // namespace plateau
