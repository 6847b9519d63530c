#include "eulat/scenario.hpp"
#include "eulat/textio.hpp"

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"

using namespace eulat;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::string precision;
  int threads = 1;
  unsigned seed = 0;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--config", o.config_path, "JSON config file");
  cmd->add_option("--out", o.out_dir, "output directory override");
  cmd->add_option("--precision", o.precision,
                  "coefficient arithmetic: exact | double")
      ->check(CLI::IsMember({"exact", "double"}));
  cmd->add_option("--threads", o.threads, "worker threads")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed,
                  "accepted for interface compatibility; every computation "
                  "is deterministic");
}

void apply_overrides(ScenarioConfig& c, const CommonOpts& o) {
  if (!o.out_dir.empty()) c.out_dir = o.out_dir;
  if (o.precision == "exact") c.precision = Precision::exact;
  if (o.precision == "double") c.precision = Precision::double_prec;
}

ScenarioConfig load(const CommonOpts& o) {
  ScenarioConfig c;
  if (!o.config_path.empty()) {
    std::string text;
    try {
      text = read_file(o.config_path);
    } catch (const std::exception& e) {
      throw ConfigError(e.what());
    }
    c = parse_config(text);
  }
  apply_overrides(c, o);
  return c;
}

int report(const RunReport& rep) {
  for (const auto& line : rep.checks)
    std::cout << (line.pass ? "[ ok ] " : "[FAIL] ") << line.text << "\n";
  for (const auto& a : rep.artifacts) std::cout << "wrote " << a << "\n";
  return static_cast<int>(rep.status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explicit Fourier-side Euler flows on the torus: "
               "build, verify, analyze, export"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string run_target;
  int bump_max_n = 10;

  CLI::App* c_build =
      app.add_subcommand("build", "assemble the plane solution");
  CLI::App* c_verify = app.add_subcommand(
      "verify", "structure invariants and equation residuals");
  CLI::App* c_analyze = app.add_subcommand(
      "analyze", "entropy, fractal exponents, Sobolev partial sums");
  CLI::App* c_oracle = app.add_subcommand(
      "oracle", "adaptive Galerkin integration against the symbolic branch");
  CLI::App* c_bump =
      app.add_subcommand("bump", "time-profile derivative table as CSV");
  CLI::App* c_run =
      app.add_subcommand("run", "full pipeline for a preset or config file");
  CLI::App* c_export =
      app.add_subcommand("export", "mode records as JSON and CSV");

  for (CLI::App* cmd :
       {c_build, c_verify, c_analyze, c_oracle, c_bump, c_run, c_export})
    add_common(cmd, opts);
  c_bump->add_option("--max-order", bump_max_n, "highest derivative order");
  c_run->add_option("target", run_target, "preset name or config path")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RunReport rep;
    if (c_build->parsed()) {
      rep = run_build(load(opts), opts.threads);
    } else if (c_verify->parsed()) {
      rep = run_verify(load(opts), opts.threads);
    } else if (c_analyze->parsed()) {
      rep = run_analyze(load(opts), opts.threads);
    } else if (c_oracle->parsed()) {
      rep = run_oracle(load(opts), opts.threads);
    } else if (c_bump->parsed()) {
      ScenarioConfig c = load(opts);
      auto times = c.sample_times.empty() ? default_sample_times(c.bump)
                                          : c.sample_times;
      std::string csv = bump_table_csv(c.bump, times, bump_max_n);
      if (!opts.out_dir.empty()) {
        auto path = std::filesystem::path(opts.out_dir) / "bump.csv";
        write_file(path, csv);
        std::cout << "wrote " << path.string() << "\n";
      } else {
        std::cout << csv;
      }
      return 0;
    } else if (c_run->parsed()) {
      ScenarioConfig c;
      if (is_preset(run_target)) {
        c = preset_config(run_target);
      } else {
        std::string text;
        try {
          text = read_file(run_target);
        } catch (const std::exception& e) {
          throw ConfigError("'" + run_target +
                            "' is neither a preset nor a readable config: " +
                            e.what());
        }
        c = parse_config(text);
      }
      apply_overrides(c, opts);
      rep = run_scenario(c, opts.threads);
    } else if (c_export->parsed()) {
      rep = run_export(load(opts), opts.threads);
    }
    return report(rep);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
