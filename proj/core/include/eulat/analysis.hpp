#pragma once

#include "eulat/construction.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace eulat {

/// Normalized transversal spectrum mu_N(m, t) over |m| <= N.
struct SpectralMeasure {
  double t = 0;
  int N = 0;
  std::map<int, double> weights;
};

/// Entropy H_{q,N} sampled at dyadic N.
struct EntropyCurve {
  std::vector<long long> N;
  std::vector<double> H;
};

struct DqFit {
  double fitted = 0;
  double residual = 0;
  bool degenerate = false;
};

struct DyadicRange {
  int lo_exp = 14;
  int hi_exp = 24;
};

/// |g(m)| or |h(k)| as a function of the index, for sums past the built box.
using AmplitudeLaw = std::function<double(long long)>;

/// Compensated accumulator; keeps long power-law sums at rounding accuracy.
struct KahanSum {
  double s = 0;
  double c = 0;
  void add(double x) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double value() const { return s; }
};

/// The xi1-axis slice of the solution: m -> u(m xi1, t) for |m| <= N.
template <class S, class FDeriv>
std::map<int, std::array<std::complex<double>, 3>> transversal_modes(
    const FourierSolution3D<S>& sol, double t, int N, FDeriv&& f) {
  if (N > sol.box.M)
    throw std::out_of_range("transversal slice extent exceeds the box");
  std::map<int, std::array<std::complex<double>, 3>> slice;
  for (int m = -N; m <= N; ++m) slice[m] = sol.at(0, m).evaluate(t, f);
  return slice;
}

template <class S, class FDeriv>
SpectralMeasure mu_measure(const FourierSolution3D<S>& sol, double t, int N,
                           FDeriv&& f) {
  auto slice = transversal_modes(sol, t, N, f);
  SpectralMeasure mu;
  mu.t = t;
  mu.N = N;
  double total = 0;
  for (const auto& [m, value] : slice) {
    double w = std::norm(value[0]) + std::norm(value[1]) + std::norm(value[2]);
    mu.weights[m] = w;
    total += w;
  }
  if (total == 0)
    throw std::domain_error("transversal slice is identically zero");
  for (auto& [m, w] : mu.weights) w /= total;
  return mu;
}

/// H_q = log(sum mu^q) / (1 - q); requires q > 1.
double renyi_entropy(const SpectralMeasure& mu, double q);

/// M_{q,N}(t) = sum_{|m| <= N} |U_N(m,t)|^{2q}, computed from the built modes.
template <class S, class FDeriv>
double moment_sum(const FourierSolution3D<S>& sol, double q, int N, double t,
                  FDeriv&& f) {
  auto slice = transversal_modes(sol, t, N, f);
  KahanSum acc;
  for (const auto& [m, value] : slice) {
    double w = std::norm(value[0]) + std::norm(value[1]) + std::norm(value[2]);
    if (w > 0) acc.add(std::pow(w, q));
  }
  return acc.value();
}

/// H_{q,N} at dyadic N from the closed-form slice weights
/// weight(m) = |U(m,t)|^2 (m > 0; the negative side is mirrored), with
/// weight0 the m=0 term.  This is the large-N path: the slice never needs
/// the recurrence.
EntropyCurve entropy_curve(const AmplitudeLaw& weight, double weight0,
                           double q, DyadicRange range);

/// Least-squares slope of H against log N; flags an all-flat curve.
DqFit fit_line(const EntropyCurve& curve);

/// (1 - 2 alpha) q / (q - 1) above the threshold q > 1/(2 alpha);
/// nullopt (not applicable) at or below it.  alpha must lie in (0, 1/2).
std::optional<double> predicted_Dq(double alpha, double q);

/// Fitted fractal exponent of the transversal measure at time t, using the
/// closed-form slice with |g| given by g_abs beyond (and inside) the box.
template <class S, class FDeriv>
DqFit fit_Dq(const FourierSolution3D<S>& sol, double q, double t,
             DyadicRange range, const AmplitudeLaw& g_abs, FDeriv&& f) {
  if (q <= 1) throw std::invalid_argument("fractal exponent needs q > 1");
  const double fval = f(0, t);
  const double vv = static_cast<double>(norm2(sol.frame.v));
  const double w0 = static_cast<double>(norm2(sol.frame.xi0));
  auto weight = [&](long long m) {
    double a = g_abs(m) * fval;
    return a * a * vv;
  };
  return fit_line(entropy_curve(weight, w0, q, range));
}

/// Partial Sobolev sum over built modes with |xi| <= N.
template <class S, class FDeriv>
double sobolev_norm(const FourierSolution3D<S>& sol, double s, double t,
                    double N, FDeriv&& f) {
  const auto& fr = sol.frame;
  const double nn = N * N;
  if (nn >= static_cast<double>((sol.box.K + 1) * (sol.box.K + 1)) * fr.w() ||
      nn >= static_cast<double>((sol.box.M + 1) * (sol.box.M + 1)) * fr.ell())
    throw std::out_of_range("radius N exceeds the built box");
  KahanSum acc;
  for (const auto& [km, mode] : sol.modes) {
    Vec3i xi = fr.point(km.first, km.second);
    double xins = static_cast<double>(norm2(xi));
    if (xins > nn || mode.is_zero()) continue;
    auto value = mode.evaluate(t, f);
    double w = std::norm(value[0]) + std::norm(value[1]) + std::norm(value[2]);
    acc.add(std::pow(1.0 + xins, s) * w);
  }
  return acc.value();
}

/// Same sum with the slice and axis tails extended past the box by their
/// closed forms: u(m xi1, t) = g(m) f(t) v and u(k eta0, t) a phase times
/// h(k) v, so only |g| and |h| matter.
template <class S, class FDeriv>
double sobolev_norm_extended(const FourierSolution3D<S>& sol, double s,
                             double t, double N, FDeriv&& f,
                             const AmplitudeLaw& g_abs,
                             const AmplitudeLaw& h_abs) {
  const auto& fr = sol.frame;
  const double nn = N * N;
  KahanSum acc;
  for (const auto& [km, mode] : sol.modes) {
    Vec3i xi = fr.point(km.first, km.second);
    double xins = static_cast<double>(norm2(xi));
    if (xins > nn || mode.is_zero()) continue;
    auto value = mode.evaluate(t, f);
    double w = std::norm(value[0]) + std::norm(value[1]) + std::norm(value[2]);
    acc.add(std::pow(1.0 + xins, s) * w);
  }
  const double vv = static_cast<double>(norm2(fr.v));
  const double fval = f(0, t);
  const double ell = static_cast<double>(fr.ell());
  if (fval != 0) {
    long long m_hi = static_cast<long long>(std::floor(N / std::sqrt(ell)));
    for (long long m = sol.box.M + 1; m <= m_hi; ++m) {
      double a = g_abs(m) * fval;
      double xins = ell * static_cast<double>(m) * static_cast<double>(m);
      acc.add(2.0 * std::pow(1.0 + xins, s) * a * a * vv);
    }
  }
  const double w = static_cast<double>(fr.w());
  long long k_hi = static_cast<long long>(std::floor(N / std::sqrt(w)));
  for (long long k = sol.box.K + 1; k <= k_hi; ++k) {
    double a = h_abs(k);
    if (a == 0) continue;
    double xins = w * static_cast<double>(k) * static_cast<double>(k);
    acc.add(2.0 * std::pow(1.0 + xins, s) * a * a * vv);
  }
  return acc.value();
}

}  // namespace eulat
