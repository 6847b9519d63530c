#pragma once

#include "eulat/exact.hpp"

#include <compare>
#include <complex>
#include <map>
#include <numbers>
#include <optional>

namespace eulat {

/// One basis term of a mode coefficient: either f^(n)(t) * e^{2*pi*i*freq*t}
/// (f_order = n) or a pure oscillation e^{2*pi*i*freq*t} (f_order empty).
struct TermKey {
  std::optional<int> f_order;
  int freq = 0;

  auto operator<=>(const TermKey&) const = default;
};

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<std::complex<double>> {
  using value_type = std::complex<double>;

  static bool is_zero(const value_type& v) { return v == value_type(0.0, 0.0); }
  static value_type conj(const value_type& v) { return std::conj(v); }
  static std::complex<double> to_complex(const value_type& v) { return v; }
  static value_type from_complex(std::complex<double> v) { return v; }

  static value_type monomial(const Rational& re, const Rational& im, int tau_pow) {
    return ExactScalar::monomial(re, im, tau_pow).to_complex();
  }
};

template <>
struct scalar_traits<ExactScalar> {
  using value_type = ExactScalar;

  static bool is_zero(const value_type& v) { return v.is_zero(); }
  static value_type conj(const value_type& v) { return v.conj(); }
  static std::complex<double> to_complex(const value_type& v) { return v.to_complex(); }

  static value_type from_complex(std::complex<double> v) {
    return ExactScalar::from_double(v.real(), v.imag());
  }

  static value_type monomial(const Rational& re, const Rational& im, int tau_pow) {
    return ExactScalar::monomial(re, im, tau_pow);
  }
};

/// Finite sum  sum_{(n,j)} c_{n,j} f^(n)(t) e^{2*pi*i*j*t}
///           + sum_j      c_j     e^{2*pi*i*j*t}
/// kept canonical: zero coefficients are never stored.  The profile f stays
/// symbolic; evaluation takes a callable (n, t) -> f^(n)(t).
template <class S>
class TermSeries {
 public:
  using scalar = S;
  using traits = scalar_traits<S>;

  TermSeries() = default;

  static TermSeries term(TermKey key, S coeff) {
    TermSeries s;
    s.add(key, std::move(coeff));
    return s;
  }

  void add(TermKey key, S coeff) {
    if (traits::is_zero(coeff)) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(key, std::move(coeff));
      return;
    }
    it->second = it->second + coeff;
    if (traits::is_zero(it->second)) terms_.erase(it);
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<TermKey, S>& terms() const { return terms_; }

  TermSeries operator+(const TermSeries& o) const {
    TermSeries s = *this;
    for (const auto& [k, c] : o.terms_) s.add(k, c);
    return s;
  }

  TermSeries scaled(const S& factor) const {
    TermSeries s;
    for (const auto& [k, c] : terms_) s.add(k, c * factor);
    return s;
  }

  /// d/dt: the product rule sends c f^(n) e^{2 pi i j t} to
  /// c f^(n+1) e^{...} + (2 pi i j) c f^(n) e^{...}.
  TermSeries differentiated() const {
    TermSeries s;
    for (const auto& [k, c] : terms_) {
      if (k.f_order) s.add({*k.f_order + 1, k.freq}, c);
      if (k.freq != 0) s.add(k, c * traits::monomial(0, k.freq, 1));
    }
    return s;
  }

  /// Multiplication by e^{2*pi*i*dj*t}: shifts every frequency by dj.
  TermSeries frequency_shifted(int dj) const {
    if (dj == 0) return *this;
    TermSeries s;
    for (const auto& [k, c] : terms_) s.add({k.f_order, k.freq + dj}, c);
    return s;
  }

  /// Complex conjugate (f is real-valued, so only coefficients and
  /// frequencies flip).
  TermSeries conjugated() const {
    TermSeries s;
    for (const auto& [k, c] : terms_) s.add({k.f_order, -k.freq}, traits::conj(c));
    return s;
  }

  template <class FDeriv>
  std::complex<double> evaluate(double t, FDeriv&& f_derivative) const {
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [k, c] : terms_) {
      std::complex<double> v = traits::to_complex(c);
      if (k.f_order) v *= f_derivative(*k.f_order, t);
      if (k.freq != 0) {
        double phase = 2.0 * std::numbers::pi * k.freq * t;
        v *= std::complex<double>(std::cos(phase), std::sin(phase));
      }
      acc += v;
    }
    return acc;
  }

  int max_f_order() const {
    int m = -1;
    for (const auto& [k, c] : terms_)
      if (k.f_order && *k.f_order > m) m = *k.f_order;
    return m;
  }

  bool operator==(const TermSeries&) const = default;

 private:
  std::map<TermKey, S> terms_;
};

using SeriesD = TermSeries<std::complex<double>>;
using SeriesX = TermSeries<ExactScalar>;

}  // namespace eulat
