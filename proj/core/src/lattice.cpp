#include "eulat/lattice.hpp"

#include <stdexcept>

namespace eulat {

void LatticeFrame::validate() const {
  if (is_zero(v) || is_zero(eta0) || is_zero(xi1))
    throw std::invalid_argument("frame vectors must be nonzero");
  if (xi0 != eta0) throw std::invalid_argument("frame requires xi0 = eta0");
  if (dot(eta0, xi1) != 0)
    throw std::invalid_argument("frame requires eta0 . xi1 = 0");
  if (dot(v, eta0) != 0 || dot(v, xi1) != 0)
    throw std::invalid_argument("frame requires eta0, xi1 orthogonal to v");
}

void Box::validate() const {
  if (K < 1 || M < 1) throw std::invalid_argument("box needs K, M >= 1");
}

void GeneratorData::set_h(int k, std::complex<double> value) {
  if (k >= -1 && k <= 1)
    throw std::invalid_argument("h is defined only for |k| > 1");
  h[k] = value;
  h[-k] = std::conj(value);
}

void GeneratorData::set_g(int m, std::complex<double> value) {
  if (m == 0) throw std::invalid_argument("g is defined only for m != 0");
  g[m] = value;
  g[-m] = std::conj(value);
}

std::complex<double> GeneratorData::h_at(int k) const {
  auto it = h.find(k);
  return it == h.end() ? std::complex<double>(0.0) : it->second;
}

std::complex<double> GeneratorData::g_at(int m) const {
  auto it = g.find(m);
  return it == g.end() ? std::complex<double>(0.0) : it->second;
}

void GeneratorData::validate() const {
  bump.validate();
  for (const auto& [k, value] : h) {
    if (k >= -1 && k <= 1)
      throw std::invalid_argument("h is defined only for |k| > 1");
    auto it = h.find(-k);
    if (it == h.end() || it->second != std::conj(value))
      throw std::invalid_argument("h must satisfy h(-k) = conj h(k)");
  }
  for (const auto& [m, value] : g) {
    if (m == 0) throw std::invalid_argument("g is defined only for m != 0");
    auto it = g.find(-m);
    if (it == g.end() || it->second != std::conj(value))
      throw std::invalid_argument("g must satisfy g(-m) = conj g(m)");
  }
}

}  // namespace eulat
