#include "eulat/analysis.hpp"

#include <cmath>

namespace eulat {

double renyi_entropy(const SpectralMeasure& mu, double q) {
  if (q <= 1)
    throw std::invalid_argument("Renyi entropy is defined here for q > 1");
  KahanSum acc;
  for (const auto& [m, w] : mu.weights)
    if (w > 0) acc.add(std::pow(w, q));
  return std::log(acc.value()) / (1.0 - q);
}

EntropyCurve entropy_curve(const AmplitudeLaw& weight, double weight0,
                           double q, DyadicRange range) {
  if (q <= 1) throw std::invalid_argument("entropy curve needs q > 1");
  if (range.lo_exp < 1 || range.hi_exp < range.lo_exp)
    throw std::invalid_argument("bad dyadic range");

  EntropyCurve curve;
  KahanSum m1, mq;
  long long next_mark = 1LL << range.lo_exp;
  const long long last = 1LL << range.hi_exp;
  for (long long m = 1; m <= last; ++m) {
    double w = weight(m);
    if (w > 0) {
      m1.add(2.0 * w);
      mq.add(2.0 * std::pow(w, q));
    }
    if (m == next_mark) {
      double M1 = weight0 + m1.value();
      double Mq = std::pow(weight0, q) + mq.value();
      curve.N.push_back(m);
      curve.H.push_back((std::log(Mq) - q * std::log(M1)) / (1.0 - q));
      next_mark <<= 1;
    }
  }
  return curve;
}

DqFit fit_line(const EntropyCurve& curve) {
  const std::size_t n = curve.N.size();
  if (n < 4)
    throw std::invalid_argument("slope fit needs at least 4 dyadic points");
  DqFit fit;
  double hmin = curve.H.front(), hmax = curve.H.front();
  for (double h : curve.H) {
    hmin = std::min(hmin, h);
    hmax = std::max(hmax, h);
  }
  if (hmax - hmin < 1e-12) {
    fit.degenerate = true;
    return fit;
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::log(static_cast<double>(curve.N[i]));
    sx += x;
    sy += curve.H[i];
    sxx += x * x;
    sxy += x * curve.H[i];
  }
  double denom = n * sxx - sx * sx;
  fit.fitted = (n * sxy - sx * sy) / denom;
  double intercept = (sy - fit.fitted * sx) / n;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::log(static_cast<double>(curve.N[i]));
    double r = curve.H[i] - (intercept + fit.fitted * x);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

std::optional<double> predicted_Dq(double alpha, double q) {
  if (!(alpha > 0 && alpha < 0.5))
    throw std::invalid_argument("alpha must lie in (0, 1/2)");
  if (!(q > 1.0 / (2.0 * alpha))) return std::nullopt;
  return (1.0 - 2.0 * alpha) * q / (q - 1.0);
}

}  // namespace eulat
