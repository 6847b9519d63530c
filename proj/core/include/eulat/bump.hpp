#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace eulat {

using BigInt = boost::multiprecision::cpp_int;

struct Interval {
  double lo = 0;
  double hi = 0;

  bool operator==(const Interval&) const = default;
};

/// Smooth time profile: a one-sided bump supported on [T, inf), a compact
/// bump on [T1, T2], or a sum of compact bumps on disjoint ordered windows.
struct BumpSpec {
  enum class Kind { half, compact, multi };

  Kind kind = Kind::half;
  double T = 0;                   // half only
  std::vector<Interval> windows;  // compact (one) or multi (several)
  int max_order = 64;

  static BumpSpec half(double T, int max_order = 64);
  static BumpSpec compact(double T1, double T2, int max_order = 64);
  static BumpSpec multi(std::vector<Interval> windows, int max_order = 64);

  /// Throws std::invalid_argument on non-positive thresholds, inverted or
  /// overlapping windows, or a negative order bound.
  void validate() const;

  bool operator==(const BumpSpec&) const = default;
};

/// Coefficients of P_n, where the one-sided profile exp(1/(T-t)) has
/// n-th derivative P_n(u) * e^u with u = 1/(T-t).  Index is the power of u;
/// P_0 = 1 and P_{n+1} = u^2 (P_n + P_n').  deg P_n = 2n, leading
/// coefficient 1.  The table is built once and shared process-wide.
const std::vector<BigInt>& half_deriv_polynomial(int n);

/// n-th derivative of the one-sided profile at t (0 for t <= T).
/// Evaluated with 50-digit intermediates and rounded once: P_n(u) has
/// positive coefficients but u < 0 on the support, so plain double Horner
/// loses digits to cancellation.
double half_bump_deriv(int n, double t, double T);

/// n-th derivative of exp(-1/(t-T1) - 1/(T2-t)) at t (0 outside (T1, T2)).
double compact_bump_deriv(int n, double t, double T1, double T2);

/// Derivative server bound to one spec.  The constructor warms the shared
/// coefficient tables up to spec.max_order; afterwards every call is
/// lock-free and safe to issue from many threads.
class BumpOracle {
 public:
  explicit BumpOracle(BumpSpec spec);

  /// f^(n)(t).  Throws std::out_of_range when n exceeds spec.max_order.
  double derivative(int n, double t) const;

  double operator()(double t) const { return derivative(0, t); }

  const BumpSpec& spec() const { return spec_; }

 private:
  BumpSpec spec_;
};

}  // namespace eulat
