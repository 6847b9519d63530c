#include "eulat/complex2d.hpp"

#include "eulat/galerkin.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eulat {

double Complex2DSolution::xi0_norm() const {
  return std::sqrt(static_cast<double>(xi0[0]) * xi0[0] +
                   static_cast<double>(xi0[1]) * xi0[1]);
}

double Complex2DSolution::T() const {
  return gamma / (2.0 * std::numbers::pi * xi0_norm());
}

std::array<std::complex<double>, 2> Complex2DSolution::mode(int k,
                                                            double t) const {
  if (k == 0) {
    return {std::complex<double>(0.0, xi0[0]), std::complex<double>(0.0, xi0[1])};
  }
  const double r = xi0_norm();
  const double xi_len = std::abs(k) * r;
  const double amp = g(std::abs(k)) * std::exp(-gamma * xi_len);
  // (xi . xi0) = k |xi0|^2
  const double growth = std::exp(2.0 * std::numbers::pi * k * r * r * t);
  const double value = amp * growth;
  return {std::complex<double>(value * v[0], 0.0),
          std::complex<double>(value * v[1], 0.0)};
}

double Complex2DSolution::log_weight(int k, double t, double s) const {
  const double r = xi0_norm();
  const double xi2 = static_cast<double>(k) * k * r * r;
  const double xi_len = std::abs(k) * r;
  const double vv = static_cast<double>(v[0]) * v[0] +
                    static_cast<double>(v[1]) * v[1];
  return s * std::log1p(xi2) + 2.0 * std::log(g(std::abs(k))) -
         2.0 * gamma * xi_len +
         4.0 * std::numbers::pi * k * r * r * t + std::log(vv);
}

Complex2DSolution build_complex_solution(std::array<int, 2> v,
                                         std::array<int, 2> xi0, double gamma,
                                         double alpha_exp) {
  if (v[0] * xi0[0] + v[1] * xi0[1] != 0)
    throw std::invalid_argument("2D frame requires xi0 . v = 0");
  if ((v[0] == 0 && v[1] == 0) || (xi0[0] == 0 && xi0[1] == 0))
    throw std::invalid_argument("2D frame vectors must be nonzero");
  if (!(gamma > 0)) throw std::invalid_argument("gamma must be positive");
  if (!(alpha_exp > 0.5))
    throw std::invalid_argument("alpha_exp must exceed 1/2");

  Complex2DSolution sol;
  sol.v = v;
  sol.xi0 = xi0;
  sol.gamma = gamma;
  sol.alpha_exp = alpha_exp;
  const double r = sol.xi0_norm();
  sol.g = [alpha_exp, r](long long k) {
    return std::pow(static_cast<double>(k) * r, -alpha_exp);
  };
  return sol;
}

Residual2D residual_2d(const Complex2DSolution& sol, int k, double t, int K) {
  LineSystem sys(sol.v, sol.xi0, K);
  CVec u(2 * sys.size());
  for (int j = -K; j <= K; ++j) {
    auto value = sol.mode(j, t);
    u[2 * sys.index(j)] = value[0];
    u[2 * sys.index(j) + 1] = value[1];
  }
  CVec du;
  sys.rhs(t, u, du);

  const double r = sol.xi0_norm();
  const double rate = 2.0 * std::numbers::pi * k * r * r;
  auto value = sol.mode(k, t);
  std::array<std::complex<double>, 2> analytic{
      k == 0 ? std::complex<double>(0.0) : rate * value[0],
      k == 0 ? std::complex<double>(0.0) : rate * value[1]};

  int idx = sys.index(k);
  if (idx < 0) throw std::out_of_range("wavenumber outside the box");
  std::array<std::complex<double>, 2> diff{analytic[0] - du[2 * idx],
                                           analytic[1] - du[2 * idx + 1]};
  Residual2D out;
  out.residual = std::sqrt(std::norm(diff[0]) + std::norm(diff[1]));
  double a = std::sqrt(std::norm(analytic[0]) + std::norm(analytic[1]));
  double b = std::sqrt(std::norm(du[2 * idx]) + std::norm(du[2 * idx + 1]));
  out.relative = out.residual / (1.0 + std::max(a, b));
  return out;
}

double energy(const Complex2DSolution& sol, double t, long long N) {
  const double r = sol.xi0_norm();
  const double vv = static_cast<double>(sol.v[0]) * sol.v[0] +
                    static_cast<double>(sol.v[1]) * sol.v[1];
  KahanSum acc;
  acc.add(r * r);
  long long k_hi = static_cast<long long>(std::floor(N / r));
  for (long long k = 1; k <= k_hi; ++k) {
    double amp = sol.g(k) * std::exp(-sol.gamma * k * r);
    double f2 = amp * amp * vv;
    double e = 4.0 * std::numbers::pi * k * r * r * t;
    acc.add(f2 * std::exp(e));
    acc.add(f2 * std::exp(-e));
  }
  return acc.value();
}

namespace {

/// Running log-sum-exp accumulator.
struct LogSum {
  double max_log = -std::numeric_limits<double>::infinity();
  double scaled = 0;

  void add(double log_term) {
    if (log_term <= max_log) {
      scaled += std::exp(log_term - max_log);
      return;
    }
    scaled = scaled * std::exp(max_log - log_term) + 1.0;
    max_log = log_term;
  }
  double log_value() const { return max_log + std::log(scaled); }
};

}  // namespace

BlowupReport classify_blowup(const Complex2DSolution& sol, double s, double t,
                             long long N_max) {
  if (N_max < 16) throw std::invalid_argument("N_max too small to classify");
  const double r = sol.xi0_norm();
  const long long k_max = static_cast<long long>(std::floor(N_max / r));

  BlowupReport rep;
  LogSum sum;
  sum.add(2.0 * std::log(r));  // mean-mode weight (1+0)^s |i xi0|^2
  std::vector<double> marks;
  long long next_mark = 1;
  for (long long k = 1; k <= k_max; ++k) {
    sum.add(sol.log_weight(static_cast<int>(k), t, s));
    sum.add(sol.log_weight(static_cast<int>(-k), t, s));
    if (k == next_mark) {
      marks.push_back(sum.log_value());
      next_mark <<= 1;
    }
  }
  rep.log_partials = marks;
  if (marks.size() < 5) {
    rep.note = "not enough dyadic doublings";
    return rep;
  }

  std::vector<double> d;
  for (std::size_t i = 1; i < marks.size(); ++i)
    d.push_back(std::max(marks[i] - marks[i - 1], 0.0));
  rep.last_ratio = std::exp(d.back());

  // Increments d_j = log S(2^{j+1}) - log S(2^j) separate the regimes:
  // exponential-tail convergence sends d_j to 0 outright; a power-law
  // convergent tail sends d_j to 0 geometrically (quotient -> 2^sigma < 1);
  // any divergent sum keeps d_j above a positive floor (quotient -> 1 or
  // beyond).  The quotient cut at 0.95 resolves |sigma| down to about 0.07
  // at this depth; anything closer to critical lands in inconclusive.
  const double thresh = std::log1p(1e-3);
  auto last = [&](std::size_t i) { return d[d.size() - 3 + i]; };
  auto quotient = [&](std::size_t i) {
    double a = d[d.size() - 4 + i], b = d[d.size() - 3 + i];
    return a > 0 ? b / a : 0.0;
  };
  bool all_tiny = last(0) <= thresh && last(1) <= thresh && last(2) <= thresh;
  if (all_tiny) {
    rep.verdict = Blowup::convergent;
    rep.note = "dyadic increments below the 1e-3 threshold";
    return rep;
  }

  bool decaying =
      quotient(0) <= 0.95 && quotient(1) <= 0.95 && quotient(2) <= 0.95;
  if (decaying) {
    rep.verdict = Blowup::convergent;
    rep.note = "ratio-1 decays geometrically";
    return rep;
  }

  bool sustained = last(0) > thresh && last(1) > thresh && last(2) > thresh;
  bool steady =
      quotient(0) > 0.95 && quotient(1) > 0.95 && quotient(2) > 0.95;
  if (sustained && steady) {
    rep.verdict = Blowup::divergent;
    rep.note = "increments sustained above threshold, not decaying";
    return rep;
  }

  rep.verdict = Blowup::inconclusive;
  rep.note = "near-critical growth pattern";
  return rep;
}

const char* to_string(Blowup b) {
  switch (b) {
    case Blowup::convergent: return "CONVERGENT";
    case Blowup::divergent: return "DIVERGENT";
    case Blowup::inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

}  // namespace eulat
