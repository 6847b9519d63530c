#pragma once

#include "eulat/construction.hpp"
#include "eulat/galerkin.hpp"
#include "eulat/parallel.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace eulat {

struct StructureReport {
  bool pass = true;
  int k = 0;
  int m = 0;
  std::string failure;
};

inline int vec_component(Vec3i v, int i) {
  return i == 0 ? v.x : i == 1 ? v.y : v.z;
}

/// Exact symbolic checks over every stored mode: divergence-free,
/// conjugation symmetry, v-direction support off the axis, f-factor
/// structure off the axis, and a term-count sanity bound.  Stops at the
/// first violation.
template <class S>
StructureReport check_structure(const FourierSolution3D<S>& sol) {
  using traits = scalar_traits<S>;
  auto fail = [](int k, int m, std::string what) {
    return StructureReport{false, k, m, std::move(what)};
  };

  const Vec3i v = sol.frame.v;
  for (const auto& [km, mode] : sol.modes) {
    const auto [k, m] = km;

    if (!mode.dot(sol.frame.point(k, m)).is_zero())
      return fail(k, m, "mode is not divergence-free");

    const auto* mirror = sol.find(-k, -m);
    if (!mirror) return fail(k, m, "mirror mode missing from the box");
    if (!(mode.conjugated() == *mirror))
      return fail(k, m, "conjugation symmetry broken");

    if (m != 0) {
      for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
          auto lhs = mode.comp[i].scaled(traits::monomial(Rational(vec_component(v, j)), 0, 0));
          auto rhs = mode.comp[j].scaled(traits::monomial(Rational(vec_component(v, i)), 0, 0));
          if (!(lhs == rhs)) return fail(k, m, "off-axis mode is not a multiple of v");
        }
      }
      for (const auto& series : mode.comp) {
        for (const auto& [key, coeff] : series.terms()) {
          if (!key.f_order)
            return fail(k, m, "off-axis term without an f-derivative factor");
        }
      }
    }

    const std::size_t bound =
        3 * static_cast<std::size_t>((std::abs(k) + 1)) * (std::abs(k) + 1);
    if (mode.term_count() > bound)
      return fail(k, m, "term count exceeds the growth bound");
  }
  return {};
}

/// Mode values of the whole box at one time, flattened like PlaneSystem
/// state (3 complex entries per lattice point).
template <class S, class FDeriv>
CVec evaluate_state(const FourierSolution3D<S>& sol, const PlaneSystem& sys,
                    double t, FDeriv&& f) {
  CVec u(3 * sys.size());
  for (const auto& [km, mode] : sol.modes) {
    int idx = sys.index(km.first, km.second);
    auto value = mode.evaluate(t, f);
    for (int c = 0; c < 3; ++c) u[3 * idx + c] = value[c];
  }
  return u;
}

namespace detail {

inline double norm3(const std::complex<double>* a) {
  return std::sqrt(std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]));
}

/// Brute-force convolution: -2 pi i sum_{zeta+eta=xi} (u(zeta).eta) u(eta),
/// both factors read from a precomputed state vector.
inline std::array<std::complex<double>, 3> convolution_rhs(
    const PlaneSystem& sys, const CVec& u, int k, int m) {
  const std::complex<double> mtpi(0.0, -2.0 * std::numbers::pi);
  std::array<std::complex<double>, 3> acc{};
  const int n = sys.size();
  for (int b = 0; b < n; ++b) {
    auto [kb, mb] = sys.point(b);
    int ia = sys.index(k - kb, m - mb);
    if (ia < 0) continue;
    const std::complex<double>* ua = &u[3 * ia];
    if (ua[0] == 0.0 && ua[1] == 0.0 && ua[2] == 0.0) continue;
    const std::complex<double>* ub = &u[3 * b];
    if (ub[0] == 0.0 && ub[1] == 0.0 && ub[2] == 0.0) continue;
    Vec3i eta = sys.xi(b);
    std::complex<double> dotv = ua[0] * static_cast<double>(eta.x) +
                                ua[1] * static_cast<double>(eta.y) +
                                ua[2] * static_cast<double>(eta.z);
    std::complex<double> w = mtpi * dotv;
    for (int c = 0; c < 3; ++c) acc[c] += w * ub[c];
  }
  return acc;
}

/// The three-term reduction of the right-hand side, valid for interior xi.
inline std::array<std::complex<double>, 3> reduced_rhs(
    const PlaneSystem& sys, const CVec& u, int k, int m, double t) {
  const LatticeFrame& fr = sys.frame();
  const double w = static_cast<double>(fr.w());
  const double ell = static_cast<double>(fr.ell());
  const std::complex<double> mtpi(0.0, -2.0 * std::numbers::pi);

  const std::complex<double>* self = &u[3 * sys.index(k, m)];
  const std::complex<double>* below = &u[3 * sys.index(k - 1, m)];
  const std::complex<double>* above = &u[3 * sys.index(k + 1, m)];

  const double phase = 2.0 * std::numbers::pi * w * t;
  const std::complex<double> e_minus(std::cos(phase), -std::sin(phase));
  const std::complex<double> e_plus = std::conj(e_minus);
  const double axis_weight = k * w;
  const double trans_weight = m * ell;

  std::array<std::complex<double>, 3> acc{};
  for (int c = 0; c < 3; ++c) {
    acc[c] = mtpi * (axis_weight * self[c] +
                     trans_weight * (e_minus * below[c] + e_plus * above[c]));
  }
  return acc;
}

}  // namespace detail

struct ResidualSample {
  int k = 0;
  int m = 0;
  double t = 0;
  double residual = 0;
  double relative = 0;
};

struct ResidualReport {
  Box box;
  std::vector<double> times;
  std::string interior = "lattice points whose +-eta0 neighbors lie in the box";
  std::vector<ResidualSample> samples;
  double max_residual = 0;
  double mean_residual = 0;
  double max_relative = 0;
  double max_reduction_gap = 0;      // brute-force vs 3-term right-hand side
  double max_reduction_gap_rel = 0;  // same gap over 1 + the larger side
};

/// Norm of (symbolic d/dt - brute-force convolution) at one interior point.
template <class S, class FDeriv>
ResidualSample ode_residual(const FourierSolution3D<S>& sol, int k, int m,
                            double t, FDeriv&& f) {
  const Box& box = sol.box;
  if (std::abs(k) + 1 > box.K || std::abs(m) > box.M)
    throw std::domain_error("residual needs xi and xi +- eta0 inside the box");
  PlaneSystem sys(sol.frame, box);
  CVec u = evaluate_state(sol, sys, t, f);
  auto deriv = sol.at(k, m).differentiated().evaluate(t, f);
  auto rhs = detail::convolution_rhs(sys, u, k, m);
  std::array<std::complex<double>, 3> diff{deriv[0] - rhs[0], deriv[1] - rhs[1],
                                           deriv[2] - rhs[2]};
  ResidualSample out{k, m, t, detail::norm3(diff.data()), 0.0};
  double scale =
      1.0 + std::max(detail::norm3(deriv.data()), detail::norm3(rhs.data()));
  out.relative = out.residual / scale;
  return out;
}

/// Residuals over every interior point and every requested time, plus the
/// worst gap between the brute-force convolution and its 3-term reduction.
template <class S, class FDeriv>
ResidualReport residual_report(const FourierSolution3D<S>& sol,
                               const std::vector<double>& times, FDeriv&& f,
                               int threads = 1) {
  PlaneSystem sys(sol.frame, sol.box);
  ResidualReport report;
  report.box = sol.box;
  report.times = times;

  std::map<std::pair<int, int>, ModeFunction3<S>> derivatives;
  for (const auto& [km, mode] : sol.modes)
    derivatives.emplace(km, mode.differentiated());

  std::vector<std::pair<int, int>> interior;
  for (int k = -(sol.box.K - 1); k <= sol.box.K - 1; ++k)
    for (int m = -sol.box.M; m <= sol.box.M; ++m) interior.push_back({k, m});

  for (double t : times) {
    CVec u = evaluate_state(sol, sys, t, f);
    std::vector<ResidualSample> batch(interior.size());
    std::vector<double> gaps(interior.size());
    std::vector<double> gaps_rel(interior.size());
    parallel_for(interior.size(), threads, [&](std::size_t i) {
      auto [k, m] = interior[i];
      auto deriv = derivatives.at({k, m}).evaluate(t, f);
      auto rhs = detail::convolution_rhs(sys, u, k, m);
      auto red = detail::reduced_rhs(sys, u, k, m, t);
      std::array<std::complex<double>, 3> diff{
          deriv[0] - rhs[0], deriv[1] - rhs[1], deriv[2] - rhs[2]};
      ResidualSample s{k, m, t, detail::norm3(diff.data()), 0.0};
      double scale = 1.0 + std::max(detail::norm3(deriv.data()),
                                    detail::norm3(rhs.data()));
      s.relative = s.residual / scale;
      batch[i] = s;
      double gap = 0;
      for (int c = 0; c < 3; ++c) gap = std::max(gap, std::abs(rhs[c] - red[c]));
      gaps[i] = gap;
      double gap_scale = 1.0 + std::max(detail::norm3(rhs.data()),
                                        detail::norm3(red.data()));
      gaps_rel[i] = gap / gap_scale;
    });
    for (std::size_t i = 0; i < batch.size(); ++i) {
      report.samples.push_back(batch[i]);
      report.max_residual = std::max(report.max_residual, batch[i].residual);
      report.max_relative = std::max(report.max_relative, batch[i].relative);
      report.mean_residual += batch[i].residual;
      report.max_reduction_gap = std::max(report.max_reduction_gap, gaps[i]);
      report.max_reduction_gap_rel =
          std::max(report.max_reduction_gap_rel, gaps_rel[i]);
    }
  }
  if (!report.samples.empty()) report.mean_residual /= report.samples.size();
  return report;
}

struct BranchRow {
  int k = 0;
  int m = 0;
  double t = 0;
  double symbolic_norm = 0;
  double galerkin_norm = 0;
  double discrepancy = 0;
};

struct BranchContrast {
  std::vector<BranchRow> rows;
  GalerkinStats stats;
  double max_offaxis_galerkin = 0;   // largest off-axis mode the oracle grew
  double max_axis_phase_error = 0;   // worst |gal - e^{-2 pi i k w t} u0|
  double max_divergence = 0;
};

/// Integrates the truncated system from the solution's t=0 data and
/// compares, mode by mode, the symbolic branch against the Galerkin branch
/// at t_probe.  With the half-bump seeds the initial data is exactly the
/// axis data, so the oracle follows the regular branch.
template <class S, class FDeriv>
BranchContrast branch_contrast(const FourierSolution3D<S>& sol, double t_probe,
                               FDeriv&& f, const GalerkinOptions& opt = {}) {
  PlaneSystem sys(sol.frame, sol.box);
  CVec u0 = evaluate_state(sol, sys, 0.0, f);
  auto trajectory = integrate_adaptive(sys.rhs_fn(), u0, 0.0, {t_probe}, opt);
  const CVec& ut = trajectory.back().u;

  BranchContrast out;
  out.stats = trajectory.back().stats;
  out.max_divergence = sys.max_divergence(ut);

  const double wphase =
      -2.0 * std::numbers::pi * static_cast<double>(sol.frame.w()) * t_probe;
  for (const auto& [km, mode] : sol.modes) {
    const auto [k, m] = km;
    int idx = sys.index(k, m);
    const std::complex<double>* gal = &ut[3 * idx];
    auto sym = mode.evaluate(t_probe, f);
    std::array<std::complex<double>, 3> diff{sym[0] - gal[0], sym[1] - gal[1],
                                             sym[2] - gal[2]};
    BranchRow row{k,
                  m,
                  t_probe,
                  detail::norm3(sym.data()),
                  detail::norm3(gal),
                  detail::norm3(diff.data())};
    out.rows.push_back(row);

    if (m != 0) {
      out.max_offaxis_galerkin =
          std::max(out.max_offaxis_galerkin, row.galerkin_norm);
    } else {
      std::complex<double> phase(std::cos(wphase * k), std::sin(wphase * k));
      std::array<std::complex<double>, 3> expected;
      const std::complex<double>* init = &u0[3 * idx];
      for (int c = 0; c < 3; ++c) expected[c] = phase * init[c];
      std::array<std::complex<double>, 3> axis_diff{
          expected[0] - gal[0], expected[1] - gal[1], expected[2] - gal[2]};
      out.max_axis_phase_error =
          std::max(out.max_axis_phase_error, detail::norm3(axis_diff.data()));
    }
  }
  return out;
}

}  // namespace eulat
