#include "eulat/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eulat {

namespace {

constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187,
                 kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33,
                 kA63 = 46732.0 / 5247, kA64 = 49.0 / 176,
                 kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920,
                 kE5 = -17253.0 / 339200, kE6 = 22.0 / 525, kE7 = -1.0 / 40;
constexpr double kC2 = 1.0 / 5, kC3 = 3.0 / 10, kC4 = 4.0 / 5, kC5 = 8.0 / 9;

struct Stepper {
  const RhsFn& rhs;
  GalerkinOptions opt;
  GalerkinStats stats;
  double err_prev = 1.0;

  CVec k1, k2, k3, k4, k5, k6, k7, ytmp, ynew;
  bool k1_fresh = false;

  Stepper(const RhsFn& f, const GalerkinOptions& o, std::size_t n)
      : rhs(f), opt(o) {
    for (CVec* v : {&k1, &k2, &k3, &k4, &k5, &k6, &k7, &ytmp, &ynew})
      v->assign(n, {});
  }

  void eval(double t, const CVec& y, CVec& out) {
    rhs(t, y, out);
    ++stats.rhs_evals;
  }

  // One accepted step from (t, y) toward t_end; advances t and y, adapts h.
  void step(double& t, CVec& y, double& h, double t_end) {
    const std::size_t n = y.size();
    while (true) {
      if (stats.accepted + stats.rejected >= opt.max_steps)
        throw std::runtime_error("integrator exceeded the step budget");
      bool last = t_end - t <= h;
      if (last) h = t_end - t;
      if (h < 1e-14 * (1.0 + std::abs(t)))
        throw std::runtime_error("integrator step size underflow");

      if (!k1_fresh) eval(t, y, k1);
      for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (kA21 * k1[i]);
      eval(t + kC2 * h, ytmp, k2);
      for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + h * (kA31 * k1[i] + kA32 * k2[i]);
      eval(t + kC3 * h, ytmp, k3);
      for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + h * (kA41 * k1[i] + kA42 * k2[i] + kA43 * k3[i]);
      eval(t + kC4 * h, ytmp, k4);
      for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + h * (kA51 * k1[i] + kA52 * k2[i] + kA53 * k3[i] +
                              kA54 * k4[i]);
      eval(t + kC5 * h, ytmp, k5);
      for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y[i] + h * (kA61 * k1[i] + kA62 * k2[i] + kA63 * k3[i] +
                              kA64 * k4[i] + kA65 * k5[i]);
      eval(t + h, ytmp, k6);
      for (std::size_t i = 0; i < n; ++i)
        ynew[i] = y[i] + h * (kB1 * k1[i] + kB3 * k3[i] + kB4 * k4[i] +
                              kB5 * k5[i] + kB6 * k6[i]);
      eval(t + h, ynew, k7);

      double err2 = 0;
      for (std::size_t i = 0; i < n; ++i) {
        std::complex<double> d =
            h * (kE1 * k1[i] + kE3 * k3[i] + kE4 * k4[i] + kE5 * k5[i] +
                 kE6 * k6[i] + kE7 * k7[i]);
        double scale =
            opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
        double r = std::abs(d) / scale;
        err2 += r * r;
      }
      // error per unit step: the embedded difference is O(h^5), so the
      // controlled quantity scales like h^4
      double err = std::sqrt(err2 / n) / h;

      if (err <= 1.0) {
        ++stats.accepted;
        t = last ? t_end : t + h;
        std::swap(y, ynew);
        std::swap(k1, k7);
        k1_fresh = true;
        double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.175) *
                     std::pow(err_prev, 0.1);
        h *= std::clamp(fac, 0.2, 5.0);
        err_prev = std::max(err, 1e-10);
        stats.last_h = h;
        return;
      }
      ++stats.rejected;
      h *= std::clamp(0.9 * std::pow(err, -0.25), 0.1, 0.5);
      // k1 still matches (t, y)
      k1_fresh = true;
    }
  }
};

}  // namespace

std::vector<GalerkinState> integrate_adaptive(const RhsFn& rhs, CVec y0,
                                              double t0,
                                              const std::vector<double>& samples,
                                              const GalerkinOptions& opt) {
  if (opt.rtol <= 0 || opt.atol <= 0)
    throw std::invalid_argument("integrator tolerances must be positive");
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (samples[i] < t0 || (i > 0 && samples[i] < samples[i - 1]))
      throw std::invalid_argument("sample times must be sorted and >= t0");

  Stepper st(rhs, opt, y0.size());
  std::vector<GalerkinState> out;
  double t = t0;
  double h = opt.h_init;
  for (double ts : samples) {
    while (t < ts) st.step(t, y0, h, ts);
    out.push_back({t, y0, st.stats});
  }
  return out;
}

PlaneSystem::PlaneSystem(LatticeFrame frame, Box box)
    : frame_(std::move(frame)), box_(box) {
  frame_.validate();
  box_.validate();
  npoints_ = (2 * box_.K + 1) * (2 * box_.M + 1);
  eta_.resize(npoints_);
  for (int idx = 0; idx < npoints_; ++idx) {
    auto [k, m] = point(idx);
    Vec3i p = frame_.point(k, m);
    eta_[idx] = {static_cast<double>(p.x), static_cast<double>(p.y),
                 static_cast<double>(p.z)};
  }
}

int PlaneSystem::index(int k, int m) const {
  if (!box_.contains(k, m)) return -1;
  return (k + box_.K) * (2 * box_.M + 1) + (m + box_.M);
}

std::pair<int, int> PlaneSystem::point(int idx) const {
  int span = 2 * box_.M + 1;
  return {idx / span - box_.K, idx % span - box_.M};
}

Vec3i PlaneSystem::xi(int idx) const {
  auto [k, m] = point(idx);
  return frame_.point(k, m);
}

void PlaneSystem::rhs(double, const CVec& u, CVec& du) const {
  const std::complex<double> mtpi(0.0, -2.0 * std::numbers::pi);
  du.assign(u.size(), {});
  const int span = 2 * box_.M + 1;
  for (int a = 0; a < npoints_; ++a) {
    const std::complex<double>* ua = &u[3 * a];
    if (ua[0] == 0.0 && ua[1] == 0.0 && ua[2] == 0.0) continue;
    auto [ka, ma] = point(a);
    for (int b = 0; b < npoints_; ++b) {
      const std::complex<double>* ub = &u[3 * b];
      if (ub[0] == 0.0 && ub[1] == 0.0 && ub[2] == 0.0) continue;
      int kt = ka + (b / span - box_.K);
      int mt = ma + (b % span - box_.M);
      if (!box_.contains(kt, mt)) continue;
      const auto& eta = eta_[b];
      std::complex<double> dotv =
          ua[0] * eta[0] + ua[1] * eta[1] + ua[2] * eta[2];
      if (dotv == 0.0) continue;
      std::complex<double> w = mtpi * dotv;
      std::complex<double>* target =
          &du[3 * ((kt + box_.K) * span + (mt + box_.M))];
      target[0] += w * ub[0];
      target[1] += w * ub[1];
      target[2] += w * ub[2];
    }
  }
}

double PlaneSystem::max_divergence(const CVec& u) const {
  double worst = 0;
  for (int a = 0; a < npoints_; ++a) {
    const auto& eta = eta_[a];
    std::complex<double> d =
        u[3 * a] * eta[0] + u[3 * a + 1] * eta[1] + u[3 * a + 2] * eta[2];
    worst = std::max(worst, std::abs(d));
  }
  return worst;
}

double PlaneSystem::energy(const CVec& u) const {
  double e = 0;
  for (const auto& c : u) e += std::norm(c);
  return e;
}

LineSystem::LineSystem(std::array<int, 2> v, std::array<int, 2> xi0, int K)
    : v_(v), xi0_(xi0), K_(K) {
  if (v[0] * xi0[0] + v[1] * xi0[1] != 0)
    throw std::invalid_argument("2D frame requires xi0 . v = 0");
  if ((v[0] == 0 && v[1] == 0) || (xi0[0] == 0 && xi0[1] == 0))
    throw std::invalid_argument("2D frame vectors must be nonzero");
  if (K < 1) throw std::invalid_argument("2D box needs K >= 1");
}

void LineSystem::rhs(double, const CVec& u, CVec& du) const {
  const std::complex<double> mtpi(0.0, -2.0 * std::numbers::pi);
  du.assign(u.size(), {});
  const int n = size();
  for (int a = 0; a < n; ++a) {
    const std::complex<double>* ua = &u[2 * a];
    if (ua[0] == 0.0 && ua[1] == 0.0) continue;
    const int ka = wavenumber(a);
    for (int b = 0; b < n; ++b) {
      const std::complex<double>* ub = &u[2 * b];
      if (ub[0] == 0.0 && ub[1] == 0.0) continue;
      int kt = ka + wavenumber(b);
      int it = index(kt);
      if (it < 0) continue;
      double ex = static_cast<double>(wavenumber(b)) * xi0_[0];
      double ey = static_cast<double>(wavenumber(b)) * xi0_[1];
      std::complex<double> dotv = ua[0] * ex + ua[1] * ey;
      if (dotv == 0.0) continue;
      std::complex<double> w = mtpi * dotv;
      du[2 * it] += w * ub[0];
      du[2 * it + 1] += w * ub[1];
    }
  }
}

}  // namespace eulat
