#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eulat/analysis.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

using namespace eulat;
using cplx = std::complex<double>;

namespace {

const BumpOracle& half_oracle() {
  static BumpOracle oracle(BumpSpec::half(1.0));
  return oracle;
}

auto fd() {
  return [](int n, double t) { return half_oracle().derivative(n, t); };
}

FourierSolution3D<cplx> calibrated(int K, int M) {
  LatticeFrame frame;
  Box box{K, M};
  auto gen = calibrate_initial_data(
      frame, box, [](Vec3i xi) { return std::exp(-norm(xi)); },
      [](Vec3i xi) { return std::pow(norm(xi), -0.3); }, BumpSpec::half(1.0));
  return build_solution<cplx>(frame, gen, box);
}

SpectralMeasure uniform_measure(int N) {
  SpectralMeasure mu;
  mu.N = N;
  for (int m = -N; m <= N; ++m) mu.weights[m] = 1.0 / (2 * N + 1);
  return mu;
}

}  // namespace

TEST_CASE("Renyi entropy pins the uniform and degenerate cases") {
  CHECK(renyi_entropy(uniform_measure(8), 2.0) ==
        doctest::Approx(std::log(17.0)).epsilon(1e-12));
  CHECK(renyi_entropy(uniform_measure(8), 3.5) ==
        doctest::Approx(std::log(17.0)).epsilon(1e-12));

  SpectralMeasure delta;
  delta.weights[0] = 1.0;
  CHECK(renyi_entropy(delta, 2.0) == doctest::Approx(0.0).epsilon(1e-15));

  SpectralMeasure two;
  two.weights[0] = 0.5;
  two.weights[1] = 0.5;
  CHECK(renyi_entropy(two, 2.0) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));

  CHECK_THROWS_AS(renyi_entropy(uniform_measure(2), 1.0),
                  std::invalid_argument);
}

TEST_CASE("the transversal measure is a probability measure") {
  auto sol = calibrated(2, 4);
  auto mu = mu_measure(sol, 2.0, 4, fd());
  double total = 0;
  for (const auto& [m, w] : mu.weights) {
    CHECK(w >= 0);
    total += w;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

  FourierSolution3D<cplx> hollow;
  hollow.frame = sol.frame;
  hollow.box = Box{1, 1};
  for (int m = -1; m <= 1; ++m) hollow.modes[{0, m}] = {};
  CHECK_THROWS_AS(mu_measure(hollow, 2.0, 1, fd()), std::domain_error);
}

TEST_CASE("moment sums match the calibrated hand value") {
  auto sol = calibrated(1, 2);
  double got = moment_sum(sol, 1.0, 2, 2.0, fd());
  double want = 1.0 + 2.0 * (1.0 + std::pow(2.0, -0.6));
  CHECK(got == doctest::Approx(want).epsilon(1e-12));
  CHECK_THROWS_AS(moment_sum(sol, 1.0, 3, 2.0, fd()), std::out_of_range);
}

TEST_CASE("predicted exponent and its applicability threshold") {
  REQUIRE(predicted_Dq(0.3, 2.0).has_value());
  CHECK(*predicted_Dq(0.3, 2.0) == doctest::Approx(0.8).epsilon(1e-12));
  REQUIRE(predicted_Dq(0.25, 3.0).has_value());
  CHECK(*predicted_Dq(0.25, 3.0) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK_FALSE(predicted_Dq(0.3, 1.5).has_value());
  CHECK_FALSE(predicted_Dq(0.3, 1.0 / 0.6).has_value());
  CHECK_THROWS_AS(predicted_Dq(0.7, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(predicted_Dq(0.0, 2.0), std::invalid_argument);
  CHECK_FALSE(predicted_Dq(0.3, 1.0).has_value());
}

TEST_CASE("entropy slope of a power-law slice matches the prediction") {
  auto weight = [](long long m) { return std::pow(static_cast<double>(m), -0.6); };
  auto curve = entropy_curve(weight, 1.0, 2.0, {14, 24});
  REQUIRE(curve.N.size() == 11);
  CHECK(curve.N.front() == (1LL << 14));
  CHECK(curve.N.back() == (1LL << 24));
  for (std::size_t i = 0; i + 1 < curve.H.size(); ++i)
    CHECK(curve.H[i] < curve.H[i + 1]);
  for (std::size_t i = 0; i < curve.H.size(); ++i)
    CHECK(curve.H[i] <= std::log(2.0 * curve.N[i] + 1));

  auto fit = fit_line(curve);
  CHECK_FALSE(fit.degenerate);
  CHECK(std::abs(fit.fitted - 0.8) <= 0.05);
  CHECK(fit.residual <= 0.05);
}

TEST_CASE("a pure atom gives a flat, degenerate entropy curve") {
  auto fit = fit_line(entropy_curve([](long long) { return 0.0; }, 1.0, 2.0,
                                    {14, 20}));
  CHECK(fit.degenerate);
  CHECK(fit.fitted == 0.0);
}

TEST_CASE("entropy curve validates its inputs") {
  auto weight = [](long long) { return 1.0; };
  CHECK_THROWS_AS(entropy_curve(weight, 1.0, 1.0, {14, 24}),
                  std::invalid_argument);
  CHECK_THROWS_AS(entropy_curve(weight, 1.0, 2.0, {24, 14}),
                  std::invalid_argument);
  CHECK_THROWS_AS(fit_line(entropy_curve(weight, 1.0, 2.0, {14, 16})),
                  std::invalid_argument);
}

TEST_CASE("the fitted exponent from built modes approaches the prediction") {
  auto sol = calibrated(1, 1);
  auto g_abs = [](long long m) {
    return std::exp(1.0) * std::pow(static_cast<double>(m), -0.3);
  };
  auto fit = fit_Dq(sol, 2.0, 2.0, {14, 24}, g_abs, fd());
  CHECK_FALSE(fit.degenerate);
  CHECK(std::abs(fit.fitted - 0.8) <= 0.05);
  CHECK_THROWS_AS(fit_Dq(sol, 1.0, 2.0, {14, 24}, g_abs, fd()),
                  std::invalid_argument);
}

TEST_CASE("sobolev partial sums count the active modes") {
  LatticeFrame frame;
  GeneratorData gen;
  gen.bump = BumpSpec::half(1.0);
  gen.set_g(1, 0.5);
  auto sol = build_solution<cplx>(frame, gen, Box{2, 2});
  CHECK(sobolev_norm(sol, 0.0, 0.0, 2.0, fd()) == 3.0);
  CHECK_THROWS_AS(sobolev_norm(sol, 0.0, 0.0, 3.0, fd()), std::out_of_range);
}

TEST_CASE("extended sums agree with the closed-form tails") {
  auto sol = calibrated(1, 1);
  const double s = 1.0, t = 2.0;
  auto g_abs = [](long long m) {
    return std::exp(1.0) * std::pow(static_cast<double>(m), -0.3);
  };
  auto h_abs = [](long long k) { return std::exp(-static_cast<double>(k)); };

  double box_part = sobolev_norm(sol, s, t, 1.5, fd());
  KahanSum tails;
  const double fval = half_oracle().derivative(0, t);
  for (long long m = 2; m <= 5; ++m) {
    double a = g_abs(m) * fval;
    tails.add(2.0 * std::pow(1.0 + m * m, s) * a * a);
  }
  for (long long k = 2; k <= 5; ++k) {
    double a = h_abs(k);
    tails.add(2.0 * std::pow(1.0 + k * k, s) * a * a);
  }
  double got = sobolev_norm_extended(sol, s, t, 5.0, fd(), g_abs, h_abs);
  CHECK(got == doctest::Approx(box_part + tails.value()).epsilon(1e-12));
}

TEST_CASE("dyadic ratios of the extended sum approach the growth rate") {
  auto sol = calibrated(1, 1);
  auto g_abs = [](long long m) {
    return std::exp(1.0) * std::pow(static_cast<double>(m), -0.3);
  };
  auto h_abs = [](long long) { return 0.0; };
  const double target = std::pow(2.0, 2.4);
  double prev = sobolev_norm_extended(sol, 1.0, 2.0, 1 << 12, fd(), g_abs, h_abs);
  for (int j = 13; j <= 15; ++j) {
    double next =
        sobolev_norm_extended(sol, 1.0, 2.0, 1 << j, fd(), g_abs, h_abs);
    CHECK(std::abs(next / prev - target) <= 0.1 * target);
    prev = next;
  }
}

TEST_CASE("compensated accumulation beats naive summation") {
  KahanSum acc;
  double naive = 0;
  const double tiny = 1e-16;
  acc.add(1.0);
  naive += 1.0;
  for (int i = 0; i < 10000; ++i) {
    acc.add(tiny);
    naive += tiny;
  }
  CHECK(acc.value() == doctest::Approx(1.0 + 1e-12).epsilon(1e-15));
  CHECK(naive == 1.0);
}
