#pragma once

#include "eulat/lattice.hpp"

#include <array>
#include <complex>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace eulat {

/// Raised on malformed or out-of-contract configuration input; the CLI maps
/// it to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Axis seed amplitudes h(k), |k| > 1: either h(k) = e^{-rate |k eta0|} or an
/// explicit table keyed by k (conjugate completion happens at build time).
struct DecayLaw {
  enum class Kind { exponential, table };

  Kind kind = Kind::exponential;
  double rate = 1.0;
  std::map<int, std::complex<double>> table;

  bool operator==(const DecayLaw&) const = default;
};

/// Transversal seed amplitudes g(m), m != 0: either the calibrated power law
/// g(m) = scale * |m xi1|^{-alpha} or an explicit table keyed by m.
struct AmplitudeConfig {
  enum class Kind { power, table };

  Kind kind = Kind::power;
  double alpha = 0.3;
  double scale = std::numbers::e;
  std::map<int, std::complex<double>> table;

  bool operator==(const AmplitudeConfig&) const = default;
};

struct AnalysisConfig {
  std::vector<double> q{2.0};
  double alpha = 0.3;
  int dyadic_lo = 14;
  int dyadic_hi = 24;
  std::vector<double> s{1.0};
  long long N_max = 100000;

  bool operator==(const AnalysisConfig&) const = default;
};

struct Complex2DConfig {
  std::array<int, 2> v{1, 0};
  std::array<int, 2> xi0{0, 1};
  double gamma = 1.0;
  double alpha_exp = 0.75;

  bool operator==(const Complex2DConfig&) const = default;
};

enum class Precision { exact, double_prec };

struct ScenarioConfig {
  std::string scenario = "custom";
  std::optional<LatticeFrame> frame;
  BumpSpec bump = BumpSpec::half(1.0);
  DecayLaw h;
  AmplitudeConfig g;
  Box box{8, 8};
  std::vector<double> sample_times;
  AnalysisConfig analysis;
  std::optional<Complex2DConfig> complex2d;
  std::string out_dir = "out";
  Precision precision = Precision::double_prec;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Parses and validates a JSON config.  Unknown fields anywhere are errors;
/// syntax errors carry line and column; constraint violations carry the field
/// context (e.g. the power-law exponent must satisfy
/// "α must lie in (0, 1/2)").
ScenarioConfig parse_config(const std::string& text);

/// Key-sorted JSON with shortest round-trip numbers;
/// parse_config(serialize_config(c)) == c.
std::string serialize_config(const ScenarioConfig& config);

/// Materializes the seed tables for a box: h over 1 < |k| <= K from the
/// decay law, g over 0 < |m| <= M from the amplitude law.
GeneratorData make_generator(const ScenarioConfig& config,
                             const LatticeFrame& frame);

LatticeFrame config_frame(const ScenarioConfig& config);

}  // namespace eulat
