#pragma once

#include "eulat/lattice.hpp"
#include "eulat/parallel.hpp"
#include "eulat/term.hpp"

#include <array>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace eulat {

/// One Fourier coefficient as a function of time: a TermSeries per
/// cartesian component.
template <class S>
struct ModeFunction3 {
  using traits = scalar_traits<S>;

  std::array<TermSeries<S>, 3> comp;

  static ModeFunction3 along(Vec3i dir, TermSeries<S> series) {
    ModeFunction3 mode;
    mode.comp[0] = series.scaled(traits::monomial(Rational(dir.x), 0, 0));
    mode.comp[1] = series.scaled(traits::monomial(Rational(dir.y), 0, 0));
    mode.comp[2] = std::move(series).scaled(traits::monomial(Rational(dir.z), 0, 0));
    return mode;
  }

  bool is_zero() const {
    return comp[0].is_zero() && comp[1].is_zero() && comp[2].is_zero();
  }

  ModeFunction3 operator+(const ModeFunction3& o) const {
    return {comp[0] + o.comp[0], comp[1] + o.comp[1], comp[2] + o.comp[2]};
  }
  ModeFunction3 scaled(const S& c) const {
    return {comp[0].scaled(c), comp[1].scaled(c), comp[2].scaled(c)};
  }
  ModeFunction3 differentiated() const {
    return {comp[0].differentiated(), comp[1].differentiated(),
            comp[2].differentiated()};
  }
  ModeFunction3 frequency_shifted(int dj) const {
    return {comp[0].frequency_shifted(dj), comp[1].frequency_shifted(dj),
            comp[2].frequency_shifted(dj)};
  }
  ModeFunction3 conjugated() const {
    return {comp[0].conjugated(), comp[1].conjugated(), comp[2].conjugated()};
  }

  /// Symbolic dot product with an integer vector.
  TermSeries<S> dot(Vec3i xi) const {
    TermSeries<S> out = comp[0].scaled(traits::monomial(Rational(xi.x), 0, 0));
    out = out + comp[1].scaled(traits::monomial(Rational(xi.y), 0, 0));
    out = out + comp[2].scaled(traits::monomial(Rational(xi.z), 0, 0));
    return out;
  }

  template <class FDeriv>
  std::array<std::complex<double>, 3> evaluate(double t, FDeriv&& f) const {
    return {comp[0].evaluate(t, f), comp[1].evaluate(t, f),
            comp[2].evaluate(t, f)};
  }

  std::size_t term_count() const {
    return comp[0].size() + comp[1].size() + comp[2].size();
  }

  bool operator==(const ModeFunction3&) const = default;
};

/// The assembled Fourier-side solution on the plane through eta0 and xi1:
/// axis modes for |k| <= K, recurrence-filled columns for 0 < |m| <= M.
template <class S>
struct FourierSolution3D {
  LatticeFrame frame;
  Box box;
  GeneratorData generator;
  std::map<std::pair<int, int>, ModeFunction3<S>> modes;

  const ModeFunction3<S>* find(int k, int m) const {
    auto it = modes.find({k, m});
    return it == modes.end() ? nullptr : &it->second;
  }

  const ModeFunction3<S>& at(int k, int m) const {
    auto it = modes.find({k, m});
    if (it == modes.end())
      throw std::out_of_range("mode (k, m) outside the built box");
    return it->second;
  }

  std::size_t nonzero_mode_count() const {
    std::size_t n = 0;
    for (const auto& [km, mode] : modes)
      if (!mode.is_zero()) ++n;
    return n;
  }
};

/// Axis modes: constant xi0 at k = 0, rotating xi1 at k = +-1, h(k)-weighted
/// v deeper out; every phase is e^{-2 pi i k w t}.
template <class S>
std::map<int, ModeFunction3<S>> build_axis_modes(const GeneratorData& gen,
                                                 const LatticeFrame& frame,
                                                 int K) {
  using traits = scalar_traits<S>;
  const int w = static_cast<int>(frame.w());
  std::map<int, ModeFunction3<S>> axis;
  axis[0] = ModeFunction3<S>::along(
      frame.xi0, TermSeries<S>::term({std::nullopt, 0},
                                     traits::monomial(Rational(1), 0, 0)));
  for (int k = -K; k <= K; ++k) {
    if (k == 0) continue;
    Vec3i dir = (k == 1 || k == -1) ? frame.xi1 : frame.v;
    S coeff = (k == 1 || k == -1) ? traits::monomial(Rational(1), 0, 0)
                                  : traits::from_complex(gen.h_at(k));
    axis[k] = ModeFunction3<S>::along(
        dir, TermSeries<S>::term({std::nullopt, -k * w}, std::move(coeff)));
  }
  return axis;
}

/// Seed of column m: v_{0,m} = g(m) f(t) v; the neighbor seed (v_{1,m} for
/// m >= 1, v_{-1,m} for m <= -1) is identically zero.
template <class S>
std::pair<ModeFunction3<S>, ModeFunction3<S>> seed_column(
    int m, const GeneratorData& gen, const LatticeFrame& frame) {
  if (m == 0) throw std::invalid_argument("column seed needs m != 0");
  using traits = scalar_traits<S>;
  ModeFunction3<S> v0 = ModeFunction3<S>::along(
      frame.v,
      TermSeries<S>::term({0, 0}, traits::from_complex(gen.g_at(m))));
  return {std::move(v0), ModeFunction3<S>{}};
}

namespace detail {

// Column dynamics:  v'_k = beta_k v_k + alpha_m v_{k-1} - conj(alpha_m) v_{k+1}
// with alpha_m = -2 pi i m l e^{-2 pi i w t}, beta_k = -2 pi i k w.
// Solving for the upper or lower neighbor turns every quotient of
// coefficients into one scale plus one frequency shift.

template <class S>
struct StepFactors {
  using traits = scalar_traits<S>;

  S inv_alpha;   // i / (2 pi m l), the tau^-1 monomial shared by both steps
  S minus_one;   // -1
  S beta_ratio;  // -(k w)/(m l)
  int w;

  StepFactors(int k, int m, const LatticeFrame& frame)
      : w(static_cast<int>(frame.w())) {
    const long long ell = frame.ell();
    Rational ml = Rational(m) * Rational(ell);
    inv_alpha = traits::monomial(0, Rational(1) / ml, -1);
    minus_one = traits::monomial(Rational(-1), 0, 0);
    beta_ratio = traits::monomial(
        (Rational(-k) * Rational(frame.w())) / ml, 0, 0);
  }
};

}  // namespace detail

/// R1: v_{k+1,m} from (v_{k-1,m}, v_{k,m}).
template <class S>
ModeFunction3<S> step_up(const ModeFunction3<S>& below,
                         const ModeFunction3<S>& at, int k, int m,
                         const LatticeFrame& frame) {
  if (m == 0) throw std::invalid_argument("recurrence undefined on the axis");
  detail::StepFactors<S> f(k, m, frame);
  ModeFunction3<S> out =
      at.differentiated().scaled(f.inv_alpha).frequency_shifted(-f.w);
  out = out + below.scaled(f.minus_one).frequency_shifted(-2 * f.w);
  out = out + at.scaled(f.beta_ratio).frequency_shifted(-f.w);
  return out;
}

/// R2: v_{k-1,m} from (v_{k+1,m}, v_{k,m}).
template <class S>
ModeFunction3<S> step_down(const ModeFunction3<S>& above,
                           const ModeFunction3<S>& at, int k, int m,
                           const LatticeFrame& frame) {
  if (m == 0) throw std::invalid_argument("recurrence undefined on the axis");
  detail::StepFactors<S> f(k, m, frame);
  ModeFunction3<S> out =
      at.differentiated().scaled(f.inv_alpha).frequency_shifted(f.w);
  out = out + above.scaled(f.minus_one).frequency_shifted(2 * f.w);
  out = out + at.scaled(f.beta_ratio).frequency_shifted(f.w);
  return out;
}

/// Fills one column |k| <= K for a fixed m != 0 from its two seeds.
template <class S>
std::vector<ModeFunction3<S>> build_column(int m, const GeneratorData& gen,
                                           const LatticeFrame& frame,
                                           const Box& box) {
  const int K = box.K;
  std::vector<ModeFunction3<S>> col(2 * K + 1);
  auto idx = [K](int k) { return k + K; };
  auto [v0, zero_seed] = seed_column<S>(m, gen, frame);
  col[idx(0)] = std::move(v0);
  if (m > 0) {
    col[idx(1)] = zero_seed;
    for (int k = 1; k < K; ++k)
      col[idx(k + 1)] = step_up(col[idx(k - 1)], col[idx(k)], k, m, frame);
    for (int k = 0; k > -K; --k)
      col[idx(k - 1)] = step_down(col[idx(k + 1)], col[idx(k)], k, m, frame);
  } else {
    col[idx(-1)] = zero_seed;
    for (int k = -1; k > -K; --k)
      col[idx(k - 1)] = step_down(col[idx(k + 1)], col[idx(k)], k, m, frame);
    for (int k = 0; k < K; ++k)
      col[idx(k + 1)] = step_up(col[idx(k - 1)], col[idx(k)], k, m, frame);
  }
  return col;
}

template <class S>
FourierSolution3D<S> build_solution(const LatticeFrame& frame,
                                    const GeneratorData& gen, const Box& box,
                                    int threads = 1) {
  frame.validate();
  box.validate();
  gen.validate();

  FourierSolution3D<S> sol;
  sol.frame = frame;
  sol.box = box;
  sol.generator = gen;

  auto axis = build_axis_modes<S>(gen, frame, box.K);
  for (auto& [k, mode] : axis) sol.modes[{k, 0}] = std::move(mode);

  std::vector<int> columns;
  for (int m = 1; m <= box.M; ++m) {
    columns.push_back(m);
    columns.push_back(-m);
  }
  std::vector<std::vector<ModeFunction3<S>>> filled(columns.size());
  parallel_for(columns.size(), threads, [&](std::size_t i) {
    filled[i] = build_column<S>(columns[i], gen, frame, box);
  });
  for (std::size_t i = 0; i < columns.size(); ++i) {
    const int m = columns[i];
    for (int k = -box.K; k <= box.K; ++k)
      sol.modes[{k, m}] = std::move(filled[i][k + box.K]);
  }
  return sol;
}

/// Physical-space partial sum u_N(x, t) over lattice points with |xi| <= N.
struct PhysicalSample {
  std::array<double, 3> u{};
  double max_imag = 0;  // reality-symmetry check; should sit at rounding level
};

template <class S, class FDeriv>
PhysicalSample evaluate_physical(const FourierSolution3D<S>& sol,
                                 std::array<double, 3> x, double t, double N,
                                 FDeriv&& f) {
  const auto& fr = sol.frame;
  const double nn = N * N;
  if (nn >= static_cast<double>((sol.box.K + 1) * (sol.box.K + 1)) * fr.w() ||
      nn >= static_cast<double>((sol.box.M + 1) * (sol.box.M + 1)) * fr.ell())
    throw std::out_of_range("radius N exceeds the built box");

  std::array<std::complex<double>, 3> acc{};
  for (const auto& [km, mode] : sol.modes) {
    Vec3i xi = fr.point(km.first, km.second);
    if (static_cast<double>(norm2(xi)) > nn) continue;
    if (mode.is_zero()) continue;
    double phase = 2.0 * std::numbers::pi *
                   (xi.x * x[0] + xi.y * x[1] + xi.z * x[2]);
    std::complex<double> osc(std::cos(phase), std::sin(phase));
    auto value = mode.evaluate(t, f);
    for (int c = 0; c < 3; ++c) acc[c] += osc * value[c];
  }
  PhysicalSample out;
  for (int c = 0; c < 3; ++c) {
    out.u[c] = acc[c].real();
    out.max_imag = std::max(out.max_imag, std::abs(acc[c].imag()));
  }
  return out;
}

}  // namespace eulat
