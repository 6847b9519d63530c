#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eulat/complex2d.hpp"
#include "eulat/galerkin.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace eulat;
using cplx = std::complex<double>;

namespace {

Complex2DSolution canonical() {
  return build_complex_solution({1, 0}, {0, 1}, 1.0, 0.75);
}

}  // namespace

TEST_CASE("frame validation rejects degenerate 2D data") {
  CHECK_THROWS_AS(build_complex_solution({1, 0}, {1, 0}, 1.0, 0.75),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_complex_solution({0, 0}, {0, 1}, 1.0, 0.75),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_complex_solution({1, 0}, {0, 1}, 0.0, 0.75),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_complex_solution({1, 0}, {0, 1}, 1.0, 0.5),
                  std::invalid_argument);
}

TEST_CASE("critical time and mean mode") {
  auto sol = canonical();
  CHECK(sol.T() == 1.0 / (2.0 * std::numbers::pi));
  auto mean = sol.mode(0, 0.37);
  CHECK(mean[0] == cplx(0.0, 0.0));
  CHECK(mean[1] == cplx(0.0, 1.0));
}

TEST_CASE("modes hit the pure power law at the critical time") {
  auto sol = canonical();
  const double T = sol.T();
  for (int k = 1; k <= 6; ++k) {
    auto u = sol.mode(k, T);
    double got = std::sqrt(std::norm(u[0]) + std::norm(u[1]));
    double want = std::pow(static_cast<double>(k), -0.75);
    CHECK(std::abs(got - want) <= 1e-12 * want);

    auto d = sol.mode(-k, T);
    double down = std::sqrt(std::norm(d[0]) + std::norm(d[1]));
    CHECK(down == doctest::Approx(want * std::exp(-2.0 * k)).epsilon(1e-10));
  }
}

TEST_CASE("partial energy matches the two-term hand value and grows in t") {
  auto sol = canonical();
  double e0 = energy(sol, 0.0, 1);
  CHECK(e0 == doctest::Approx(1.0 + 2.0 * std::exp(-2.0)).epsilon(1e-12));

  double prev = energy(sol, 0.0, 64);
  for (double t : {0.05, 0.1, 0.15, sol.T()}) {
    double e = energy(sol, t, 64);
    CHECK(e > prev);
    prev = e;
  }

  double small = energy(sol, 0.1, 4);
  double large = energy(sol, 0.1, 64);
  CHECK(large > small);
}

TEST_CASE("the truncated 2D convolution is exact at every box point") {
  auto sol = canonical();
  for (double t : {0.0, sol.T() / 2, sol.T(), 2 * sol.T()}) {
    for (int k = -8; k <= 8; ++k) {
      auto r = residual_2d(sol, k, t, 10);
      CHECK(r.relative <= 1e-12);
    }
  }
  auto mean = residual_2d(sol, 0, 0.1, 10);
  CHECK(mean.residual <= 1e-15);
}

TEST_CASE("line integration reproduces the closed form") {
  auto sol = canonical();
  const int K = 6;
  LineSystem line(sol.v, sol.xi0, K);
  CVec u0(2 * line.size());
  for (int k = -K; k <= K; ++k) {
    auto u = sol.mode(k, 0.0);
    u0[2 * line.index(k)] = u[0];
    u0[2 * line.index(k) + 1] = u[1];
  }
  const double t = sol.T() / 2;
  auto states = integrate_adaptive(line.rhs_fn(), u0, 0.0, {t});
  double worst = 0;
  for (int k = -K; k <= K; ++k) {
    auto want = sol.mode(k, t);
    cplx g0 = states[0].u[2 * line.index(k)];
    cplx g1 = states[0].u[2 * line.index(k) + 1];
    double diff = std::sqrt(std::norm(g0 - want[0]) + std::norm(g1 - want[1]));
    double scale = 1.0 + std::sqrt(std::norm(want[0]) + std::norm(want[1]));
    worst = std::max(worst, diff / scale);
  }
  CHECK(worst <= 1e-7);
}

TEST_CASE("the trichotomy verdicts at the canonical probes") {
  auto sol = canonical();
  const double T = sol.T();
  CHECK(classify_blowup(sol, 5.0, 0.9 * T, 100000).verdict ==
        Blowup::convergent);
  CHECK(classify_blowup(sol, -5.0, 1.1 * T, 100000).verdict ==
        Blowup::divergent);
  CHECK(classify_blowup(sol, 0.3, T, 100000).verdict == Blowup::divergent);
  CHECK(classify_blowup(sol, 0.2, T, 100000).verdict == Blowup::convergent);
  CHECK_THROWS_AS(classify_blowup(sol, 0.0, T, 8), std::invalid_argument);
}

TEST_CASE("divergence is monotone in s and t where resolved") {
  auto sol = canonical();
  const double T = sol.T();
  std::vector<double> ss{-5.0, 0.2, 0.3, 5.0};
  std::vector<double> ts{0.9 * T, T, 1.1 * T};
  std::vector<std::vector<Blowup>> verdict(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (double s : ss)
      verdict[i].push_back(classify_blowup(sol, s, ts[i], 100000).verdict);

  for (std::size_t i = 0; i < ts.size(); ++i)
    for (std::size_t a = 0; a < ss.size(); ++a)
      for (std::size_t b = a + 1; b < ss.size(); ++b) {
        if (verdict[i][a] == Blowup::divergent &&
            verdict[i][b] != Blowup::inconclusive)
          CHECK(verdict[i][b] == Blowup::divergent);
        if (verdict[i][b] == Blowup::convergent &&
            verdict[i][a] != Blowup::inconclusive)
          CHECK(verdict[i][a] == Blowup::convergent);
      }

  for (std::size_t a = 0; a < ss.size(); ++a)
    for (std::size_t i = 0; i + 1 < ts.size(); ++i)
      if (verdict[i][a] == Blowup::divergent &&
          verdict[i + 1][a] != Blowup::inconclusive)
        CHECK(verdict[i + 1][a] == Blowup::divergent);
}

TEST_CASE("verdicts carry readable notes") {
  auto sol = canonical();
  auto rep = classify_blowup(sol, 5.0, 0.9 * sol.T(), 100000);
  CHECK_FALSE(rep.note.empty());
  CHECK(rep.log_partials.size() >= 5);
  CHECK(to_string(Blowup::convergent) == std::string("CONVERGENT"));
  CHECK(to_string(Blowup::divergent) == std::string("DIVERGENT"));
  CHECK(to_string(Blowup::inconclusive) == std::string("INCONCLUSIVE"));
}
