#include "eulat/exact.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <sstream>

namespace eulat {

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

const Big& two_pi_big() {
  static const Big v = 8 * atan(Big(1));
  return v;
}

Big tau_power(int p) {
  if (p == 0) return Big(1);
  Big b = pow(two_pi_big(), abs(p));
  return p > 0 ? b : Big(1) / b;
}

}  // namespace

std::complex<double> ExactScalar::to_complex() const {
  Big re = 0, im = 0;
  for (const auto& [p, c] : coeffs_) {
    Big t = tau_power(p);
    re += Big(c.re) * t;
    im += Big(c.im) * t;
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

std::string ExactScalar::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [p, c] : coeffs_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << c.re.str();
    if (c.im >= 0) out << " + " << c.im.str() << "i)";
    else out << " - " << Rational(-c.im).str() << "i)";
    if (p != 0) out << "*tau^" << p;
  }
  return out.str();
}

}  // namespace eulat
