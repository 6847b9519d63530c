#pragma once

#include "eulat/bump.hpp"

#include <cmath>
#include <complex>
#include <map>

namespace eulat {

struct Vec3i {
  int x = 0;
  int y = 0;
  int z = 0;

  friend Vec3i operator+(Vec3i a, Vec3i b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Vec3i operator-(Vec3i a, Vec3i b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend Vec3i operator*(int c, Vec3i a) { return {c * a.x, c * a.y, c * a.z}; }
  auto operator<=>(const Vec3i&) const = default;
};

inline long long dot(Vec3i a, Vec3i b) {
  return static_cast<long long>(a.x) * b.x + static_cast<long long>(a.y) * b.y +
         static_cast<long long>(a.z) * b.z;
}
inline long long norm2(Vec3i a) { return dot(a, a); }
inline double norm(Vec3i a) { return std::sqrt(static_cast<double>(norm2(a))); }
inline bool is_zero(Vec3i a) { return a.x == 0 && a.y == 0 && a.z == 0; }

/// Integer frame for the support plane: v normal to the plane, eta0 = xi0
/// the axis direction, xi1 the transversal direction, eta0 orthogonal to xi1.
struct LatticeFrame {
  Vec3i v{0, 0, 1};
  Vec3i eta0{0, 1, 0};
  Vec3i xi0{0, 1, 0};
  Vec3i xi1{1, 0, 0};

  /// Throws std::invalid_argument unless xi0 = eta0, eta0 and xi1 are
  /// nonzero, orthogonal to each other, and both orthogonal to v.
  void validate() const;

  /// Axis weight w = xi0 . eta0 = |eta0|^2: the phase of axis mode k is
  /// e^{-2 pi i k w t}.
  long long w() const { return dot(xi0, eta0); }

  /// Transversal weight l = |xi1|^2.
  long long ell() const { return dot(xi1, xi1); }

  Vec3i point(int k, int m) const { return k * eta0 + m * xi1; }

  bool operator==(const LatticeFrame&) const = default;
};

/// Truncation rectangle in (k, m) plane coordinates: |k| <= K, |m| <= M.
struct Box {
  int K = 1;
  int M = 1;

  void validate() const;
  bool contains(int k, int m) const {
    return k >= -K && k <= K && m >= -M && m <= M;
  }

  bool operator==(const Box&) const = default;
};

/// Seed amplitudes: h on the axis (|k| > 1), g on the transversal column
/// (m != 0), plus the time profile.  Both tables carry the conjugate
/// symmetry h(-k) = conj h(k), g(-m) = conj g(m).
struct GeneratorData {
  std::map<int, std::complex<double>> h;
  std::map<int, std::complex<double>> g;
  BumpSpec bump = BumpSpec::half(1.0);

  /// Stores value at k and the conjugate at -k.  Requires |k| > 1.
  void set_h(int k, std::complex<double> value);
  /// Stores value at m and the conjugate at -m.  Requires m != 0.
  void set_g(int m, std::complex<double> value);

  /// 0 when the table has no entry.
  std::complex<double> h_at(int k) const;
  std::complex<double> g_at(int m) const;

  /// Throws std::invalid_argument on forbidden indices or broken symmetry.
  void validate() const;
};

/// Fills h(k) = f1(k eta0) for 1 < |k| <= K and g(m) = e * f2(m xi1) for
/// 0 < |m| <= M (both real), so the transversal modes hit |f2(m xi1)|
/// exactly at the measurement time T+1 where the half-bump equals e^{-1}.
template <class F1, class F2>
GeneratorData calibrate_initial_data(const LatticeFrame& frame, const Box& box,
                                     F1&& f1, F2&& f2, BumpSpec bump) {
  GeneratorData gen;
  gen.bump = std::move(bump);
  for (int k = 2; k <= box.K; ++k) gen.set_h(k, f1(frame.point(k, 0)));
  const double e1 = std::exp(1.0);
  for (int m = 1; m <= box.M; ++m) gen.set_g(m, e1 * f2(frame.point(0, m)));
  return gen;
}

}  // namespace eulat
