#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <map>
#include <string>

namespace eulat {

using Rational = boost::multiprecision::cpp_rational;

struct ComplexRational {
  Rational re;
  Rational im;

  bool is_zero() const { return re == 0 && im == 0; }

  ComplexRational operator-() const { return {-re, -im}; }

  ComplexRational& operator+=(const ComplexRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }

  ComplexRational operator*(const ComplexRational& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }

  ComplexRational conj() const { return {re, -im}; }

  bool operator==(const ComplexRational&) const = default;
};

/// Complex number of the form sum_p c_p * tau^p with tau = 2*pi and the c_p
/// exact complex rationals.  Closed under the arithmetic the mode recurrences
/// need (sums, products, conjugation), so structural cancellations are exact.
class ExactScalar {
 public:
  ExactScalar() = default;

  static ExactScalar monomial(Rational re, Rational im, int tau_pow) {
    ExactScalar s;
    ComplexRational c{std::move(re), std::move(im)};
    if (!c.is_zero()) s.coeffs_.emplace(tau_pow, std::move(c));
    return s;
  }

  static ExactScalar from_double(double re, double im = 0.0) {
    return monomial(Rational(re), Rational(im), 0);
  }

  bool is_zero() const { return coeffs_.empty(); }

  ExactScalar operator-() const {
    ExactScalar s;
    for (const auto& [p, c] : coeffs_) s.coeffs_.emplace(p, -c);
    return s;
  }

  ExactScalar& operator+=(const ExactScalar& o) {
    for (const auto& [p, c] : o.coeffs_) {
      auto it = coeffs_.find(p);
      if (it == coeffs_.end()) {
        coeffs_.emplace(p, c);
      } else {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
      }
    }
    return *this;
  }

  ExactScalar operator+(const ExactScalar& o) const {
    ExactScalar s = *this;
    s += o;
    return s;
  }

  ExactScalar operator-(const ExactScalar& o) const { return *this + (-o); }

  ExactScalar operator*(const ExactScalar& o) const {
    ExactScalar s;
    for (const auto& [p1, c1] : coeffs_) {
      for (const auto& [p2, c2] : o.coeffs_) {
        auto prod = c1 * c2;
        auto it = s.coeffs_.find(p1 + p2);
        if (it == s.coeffs_.end()) {
          s.coeffs_.emplace(p1 + p2, std::move(prod));
        } else {
          it->second += prod;
          if (it->second.is_zero()) s.coeffs_.erase(it);
        }
      }
    }
    return s;
  }

  ExactScalar conj() const {
    ExactScalar s;
    for (const auto& [p, c] : coeffs_) s.coeffs_.emplace(p, c.conj());
    return s;
  }

  /// Numeric value, evaluated in 50-digit floats before rounding to double.
  std::complex<double> to_complex() const;

  /// Deterministic human-readable form, e.g. "(1/2 + 3i)*tau^-1 + 2".
  std::string to_string() const;

  const std::map<int, ComplexRational>& coefficients() const { return coeffs_; }

  bool operator==(const ExactScalar&) const = default;

 private:
  std::map<int, ComplexRational> coeffs_;
};

}  // namespace eulat
