#pragma once

#include "eulat/lattice.hpp"

#include <array>
#include <complex>
#include <functional>
#include <vector>

namespace eulat {

using CVec = std::vector<std::complex<double>>;

struct GalerkinOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double h_init = 1e-3;
  long long max_steps = 50'000'000;
};

struct GalerkinStats {
  long long accepted = 0;
  long long rejected = 0;
  long long rhs_evals = 0;
  double last_h = 0;
};

struct GalerkinState {
  double t = 0;
  CVec u;
  GalerkinStats stats;
};

using RhsFn = std::function<void(double, const CVec&, CVec&)>;

/// Dormand-Prince 5(4) with PI step control on the error per unit step.
/// Integrates from t0 through every sample time (stepping exactly onto each)
/// and returns the state at each sample.  Throws std::runtime_error on step
/// underflow or step-count exhaustion.
std::vector<GalerkinState> integrate_adaptive(const RhsFn& rhs, CVec y0,
                                              double t0,
                                              const std::vector<double>& samples,
                                              const GalerkinOptions& opt = {});

/// Truncated quadratic mode system on the (k, m) plane box:
///   d/dt u(xi) = -2 pi i  sum_{zeta + eta = xi, both in box} (u(zeta).eta) u(eta).
/// State layout: 3 complex components per lattice point, index-major.
/// Modes that are exactly zero are skipped inside the pair loop; that drops
/// only terms that are identically zero, so the result is unchanged and the
/// evaluation order stays deterministic.
class PlaneSystem {
 public:
  PlaneSystem(LatticeFrame frame, Box box);

  int size() const { return npoints_; }
  int index(int k, int m) const;
  std::pair<int, int> point(int idx) const;
  Vec3i xi(int idx) const;

  void rhs(double t, const CVec& u, CVec& du) const;
  RhsFn rhs_fn() const {
    return [this](double t, const CVec& u, CVec& du) { rhs(t, u, du); };
  }

  /// max over points of |u(xi) . xi| (incompressibility diagnostic).
  double max_divergence(const CVec& u) const;
  /// sum of squared mode norms (energy diagnostic).
  double energy(const CVec& u) const;

  const LatticeFrame& frame() const { return frame_; }
  const Box& box() const { return box_; }

 private:
  LatticeFrame frame_;
  Box box_;
  int npoints_;
  std::vector<std::array<double, 3>> eta_;  // lattice vector per point
};

/// Same system for the 2D complex-data solution: support is the integer
/// line k*xi0, two components per point.
class LineSystem {
 public:
  LineSystem(std::array<int, 2> v, std::array<int, 2> xi0, int K);

  int size() const { return 2 * K_ + 1; }
  int index(int k) const { return (k < -K_ || k > K_) ? -1 : k + K_; }
  int wavenumber(int idx) const { return idx - K_; }

  void rhs(double t, const CVec& u, CVec& du) const;
  RhsFn rhs_fn() const {
    return [this](double t, const CVec& u, CVec& du) { rhs(t, u, du); };
  }

 private:
  std::array<int, 2> v_;
  std::array<int, 2> xi0_;
  int K_;
};

}  // namespace eulat
