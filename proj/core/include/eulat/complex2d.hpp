#pragma once

#include "eulat/analysis.hpp"

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace eulat {

/// Closed-form complex-data solution on the 2-torus: support on the integer
/// line k*xi0 (orthogonal to v), mean mode i*xi0, and
/// u(xi, t) = e^{2 pi (xi . xi0) t} u(xi, 0) with u(xi, 0) = g(|xi|) e^{-gamma |xi|} v.
/// No conjugation symmetry is imposed; the data is genuinely complex.
struct Complex2DSolution {
  std::array<int, 2> v{1, 0};
  std::array<int, 2> xi0{0, 1};
  double gamma = 1.0;
  double alpha_exp = 0.75;
  AmplitudeLaw g;  // |g| as a function of k >= 1 (applied to both signs)

  double xi0_norm() const;
  /// Critical time gamma / (2 pi |xi0|).
  double T() const;

  /// u(k xi0, t); k = 0 returns the constant mean mode.
  std::array<std::complex<double>, 2> mode(int k, double t) const;

  /// log of (1 + |xi|^2)^s |u(k xi0, t)|^2 for k != 0, sign-aware.
  double log_weight(int k, double t, double s) const;
};

/// Validates the frame and attaches the default amplitude g(|xi|) = |xi|^{-alpha_exp}.
Complex2DSolution build_complex_solution(std::array<int, 2> v,
                                         std::array<int, 2> xi0, double gamma,
                                         double alpha_exp);

struct Residual2D {
  double residual = 0;
  double relative = 0;
};

/// Brute-force truncated convolution at wavenumber k versus the analytic
/// derivative 2 pi (xi . xi0) u(xi, t); box extends to |k| <= K.
Residual2D residual_2d(const Complex2DSolution& sol, int k, double t, int K);

/// Partial energy |xi0|^2 + ||v||^2 sum_{0 < |k xi0| <= N} |f|^2 e^{4 pi (xi . xi0) t}.
double energy(const Complex2DSolution& sol, double t, long long N);

enum class Blowup { convergent, divergent, inconclusive };

struct BlowupReport {
  Blowup verdict = Blowup::inconclusive;
  double last_ratio = 1.0;             // partial-sum ratio at the last doubling
  std::vector<double> log_partials;    // log of the dyadic partial sums
  std::string note;
};

/// Classifies sum_{|xi| <= N} (1 + |xi|^2)^s |u(xi,t)|^2 as N grows to N_max,
/// entirely in the log domain (for t > T the terms overflow any float).
/// Dyadic ratios decide: ratio-1 decaying geometrically (or vanishing) means
/// convergent, a ratio sustained above 1+1e-3 that is not decaying
/// geometrically means divergent, anything else is flagged inconclusive.
BlowupReport classify_blowup(const Complex2DSolution& sol, double s, double t,
                             long long N_max);

const char* to_string(Blowup b);

}  // namespace eulat
