#include "eulat/config.hpp"

#include <charconv>
#include <cmath>
#include <set>

#include "json.hpp"

namespace eulat {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

std::pair<int, int> line_col(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

/// Tracks which keys a parser consumed and rejects the rest.
class Fields {
 public:
  Fields(const json& j, std::string ctx) : j_(j), ctx_(std::move(ctx)) {
    if (!j_.is_object()) fail(ctx_ + " must be an object");
  }
  const json* get(const char* name) {
    seen_.insert(name);
    auto it = j_.find(name);
    return it == j_.end() ? nullptr : &*it;
  }
  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key()))
        fail("unknown field '" + it.key() + "' in " + ctx_);
  }

 private:
  const json& j_;
  std::string ctx_;
  std::set<std::string> seen_;
};

double as_double(const json& j, const std::string& ctx) {
  if (!j.is_number()) fail(ctx + " must be a number");
  return j.get<double>();
}

int as_int(const json& j, const std::string& ctx) {
  if (!j.is_number_integer()) fail(ctx + " must be an integer");
  return j.get<int>();
}

long long as_int64(const json& j, const std::string& ctx) {
  if (!j.is_number_integer()) fail(ctx + " must be an integer");
  return j.get<long long>();
}

std::string as_string(const json& j, const std::string& ctx) {
  if (!j.is_string()) fail(ctx + " must be a string");
  return j.get<std::string>();
}

Vec3i as_vec3(const json& j, const std::string& ctx) {
  if (!j.is_array() || j.size() != 3)
    fail(ctx + " must be an array of 3 integers");
  return {as_int(j[0], ctx), as_int(j[1], ctx), as_int(j[2], ctx)};
}

std::array<int, 2> as_vec2(const json& j, const std::string& ctx) {
  if (!j.is_array() || j.size() != 2)
    fail(ctx + " must be an array of 2 integers");
  return {as_int(j[0], ctx), as_int(j[1], ctx)};
}

std::vector<double> as_double_list(const json& j, const std::string& ctx) {
  if (!j.is_array()) fail(ctx + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& e : j) out.push_back(as_double(e, ctx));
  return out;
}

std::complex<double> as_complex(const json& j, const std::string& ctx) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) fail(ctx + " must be [re, im]");
  return {as_double(j[0], ctx), as_double(j[1], ctx)};
}

std::map<int, std::complex<double>> as_table(const json& j,
                                             const std::string& ctx) {
  if (!j.is_object()) fail(ctx + " must map integer keys to values");
  std::map<int, std::complex<double>> out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    int k = 0;
    auto res = std::from_chars(key.data(), key.data() + key.size(), k);
    if (res.ec != std::errc() || res.ptr != key.data() + key.size())
      fail("key '" + key + "' in " + ctx + " is not an integer");
    out[k] = as_complex(it.value(), ctx + "[" + key + "]");
  }
  for (const auto& [k, value] : out) {
    auto other = out.find(-k);
    if (other != out.end() && other->second != std::conj(value))
      fail(ctx + " entries " + std::to_string(k) + " and " +
           std::to_string(-k) + " break conjugate symmetry");
  }
  return out;
}

BumpSpec parse_bump(const json& j) {
  Fields f(j, "bump");
  BumpSpec spec = BumpSpec::half(1.0);
  std::string kind = "half";
  if (const json* v = f.get("kind")) kind = as_string(*v, "bump.kind");
  int max_order = 64;
  if (const json* v = f.get("max_order"))
    max_order = as_int(*v, "bump.max_order");

  try {
    if (kind == "half") {
      double T = 1.0;
      if (const json* v = f.get("T")) T = as_double(*v, "bump.T");
      spec = BumpSpec::half(T, max_order);
    } else if (kind == "compact") {
      const json* v = f.get("window");
      if (!v) fail("bump.window is required for a compact bump");
      auto w = as_double_list(*v, "bump.window");
      if (w.size() != 2) fail("bump.window must be [T1, T2]");
      spec = BumpSpec::compact(w[0], w[1], max_order);
    } else if (kind == "multi") {
      const json* v = f.get("windows");
      if (!v) fail("bump.windows is required for a multi bump");
      if (!v->is_array()) fail("bump.windows must be an array of [T1, T2]");
      std::vector<Interval> windows;
      for (const auto& e : *v) {
        auto w = as_double_list(e, "bump.windows");
        if (w.size() != 2) fail("bump.windows entries must be [T1, T2]");
        windows.push_back({w[0], w[1]});
      }
      spec = BumpSpec::multi(std::move(windows), max_order);
    } else {
      fail("bump.kind must be one of half, compact, multi");
    }
  } catch (const std::invalid_argument& e) {
    fail(std::string("bump: ") + e.what());
  }
  f.finish();
  return spec;
}

DecayLaw parse_h(const json& j) {
  Fields f(j, "h");
  DecayLaw law;
  if (const json* v = f.get("table")) {
    law.kind = DecayLaw::Kind::table;
    law.table = as_table(*v, "h.table");
    for (const auto& [k, value] : law.table)
      if (k >= -1 && k <= 1)
        fail("h.table keys must satisfy |k| > 1, got " + std::to_string(k));
    f.finish();
    return law;
  }
  if (const json* v = f.get("law")) {
    std::string name = as_string(*v, "h.law");
    if (name != "exponential") fail("h.law must be \"exponential\"");
  }
  if (const json* v = f.get("rate")) {
    law.rate = as_double(*v, "h.rate");
    if (!(law.rate > 0)) fail("h.rate must be positive");
  }
  f.finish();
  return law;
}

AmplitudeConfig parse_g(const json& j) {
  Fields f(j, "g");
  AmplitudeConfig cfg;
  if (const json* v = f.get("table")) {
    cfg.kind = AmplitudeConfig::Kind::table;
    cfg.table = as_table(*v, "g.table");
    if (cfg.table.count(0)) fail("g.table keys must be nonzero");
    f.finish();
    return cfg;
  }
  if (const json* v = f.get("law")) {
    std::string name = as_string(*v, "g.law");
    if (name != "power") fail("g.law must be \"power\"");
  }
  if (const json* v = f.get("alpha")) cfg.alpha = as_double(*v, "g.alpha");
  if (const json* v = f.get("scale")) cfg.scale = as_double(*v, "g.scale");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 0.5))
    fail("\xce\xb1 must lie in (0, 1/2)");
  if (!(cfg.scale > 0)) fail("g.scale must be positive");
  f.finish();
  return cfg;
}

AnalysisConfig parse_analysis(const json& j) {
  Fields f(j, "analysis");
  AnalysisConfig a;
  if (const json* v = f.get("q")) a.q = as_double_list(*v, "analysis.q");
  if (const json* v = f.get("alpha")) a.alpha = as_double(*v, "analysis.alpha");
  if (const json* v = f.get("dyadic")) {
    auto d = as_double_list(*v, "analysis.dyadic");
    if (d.size() != 2 || d[0] != std::floor(d[0]) || d[1] != std::floor(d[1]))
      fail("analysis.dyadic must be two integer exponents [lo, hi]");
    a.dyadic_lo = static_cast<int>(d[0]);
    a.dyadic_hi = static_cast<int>(d[1]);
  }
  if (const json* v = f.get("s")) a.s = as_double_list(*v, "analysis.s");
  if (const json* v = f.get("N_max")) a.N_max = as_int64(*v, "analysis.N_max");
  f.finish();

  if (!(a.alpha > 0.0 && a.alpha < 0.5)) fail("\xce\xb1 must lie in (0, 1/2)");
  for (double q : a.q)
    if (!(q > 1.0)) fail("analysis.q entries must exceed 1");
  if (a.dyadic_lo < 1 || a.dyadic_hi <= a.dyadic_lo || a.dyadic_hi > 40)
    fail("analysis.dyadic must satisfy 1 <= lo < hi <= 40");
  if (a.N_max < 16) fail("analysis.N_max must be at least 16");
  return a;
}

Complex2DConfig parse_complex2d(const json& j) {
  Fields f(j, "complex2d");
  Complex2DConfig c;
  if (const json* v = f.get("v")) c.v = as_vec2(*v, "complex2d.v");
  if (const json* v = f.get("xi0")) c.xi0 = as_vec2(*v, "complex2d.xi0");
  if (const json* v = f.get("gamma"))
    c.gamma = as_double(*v, "complex2d.gamma");
  if (const json* v = f.get("alpha_exp"))
    c.alpha_exp = as_double(*v, "complex2d.alpha_exp");
  f.finish();

  if (c.v[0] * c.xi0[0] + c.v[1] * c.xi0[1] != 0)
    fail("complex2d requires xi0 . v = 0");
  if ((c.v[0] == 0 && c.v[1] == 0) || (c.xi0[0] == 0 && c.xi0[1] == 0))
    fail("complex2d frame vectors must be nonzero");
  if (!(c.gamma > 0)) fail("complex2d.gamma must be positive");
  if (!(c.alpha_exp > 0.5)) fail("complex2d.alpha_exp must exceed 1/2");
  return c;
}

LatticeFrame parse_frame(const json& j) {
  Fields f(j, "frame");
  LatticeFrame frame;
  if (const json* v = f.get("v")) frame.v = as_vec3(*v, "frame.v");
  if (const json* v = f.get("eta0")) frame.eta0 = as_vec3(*v, "frame.eta0");
  if (const json* v = f.get("xi1")) frame.xi1 = as_vec3(*v, "frame.xi1");
  frame.xi0 = frame.eta0;
  f.finish();
  try {
    frame.validate();
  } catch (const std::invalid_argument& e) {
    fail(std::string("frame: ") + e.what());
  }
  return frame;
}

json dump_complex(std::complex<double> z) {
  return json::array({z.real(), z.imag()});
}

json dump_table(const std::map<int, std::complex<double>>& table) {
  json out = json::object();
  for (const auto& [k, value] : table) out[std::to_string(k)] = dump_complex(value);
  return out;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte);
    fail("syntax error at line " + std::to_string(line) + ", column " +
         std::to_string(col) + ": " + e.what());
  }

  Fields f(j, "config");
  ScenarioConfig c;
  if (const json* v = f.get("scenario")) c.scenario = as_string(*v, "scenario");
  if (const json* v = f.get("frame")) c.frame = parse_frame(*v);
  if (const json* v = f.get("bump")) c.bump = parse_bump(*v);
  if (const json* v = f.get("h")) c.h = parse_h(*v);
  if (const json* v = f.get("g")) c.g = parse_g(*v);
  if (const json* v = f.get("box")) {
    Fields fb(*v, "box");
    if (const json* k = fb.get("K")) c.box.K = as_int(*k, "box.K");
    if (const json* m = fb.get("M")) c.box.M = as_int(*m, "box.M");
    fb.finish();
    try {
      c.box.validate();
    } catch (const std::invalid_argument& e) {
      fail(std::string("box: ") + e.what());
    }
  }
  if (const json* v = f.get("sample_times"))
    c.sample_times = as_double_list(*v, "sample_times");
  if (const json* v = f.get("analysis")) c.analysis = parse_analysis(*v);
  if (const json* v = f.get("complex2d")) c.complex2d = parse_complex2d(*v);
  if (const json* v = f.get("out_dir")) c.out_dir = as_string(*v, "out_dir");
  if (const json* v = f.get("precision")) {
    std::string p = as_string(*v, "precision");
    if (p == "exact")
      c.precision = Precision::exact;
    else if (p == "double")
      c.precision = Precision::double_prec;
    else
      fail("precision must be \"exact\" or \"double\"");
  }
  f.finish();

  for (std::size_t i = 1; i < c.sample_times.size(); ++i)
    if (!(c.sample_times[i] > c.sample_times[i - 1]))
      fail("sample_times must be strictly increasing");
  return c;
}

std::string serialize_config(const ScenarioConfig& c) {
  json j;
  j["scenario"] = c.scenario;
  if (c.frame) {
    json fr;
    fr["v"] = json::array({c.frame->v.x, c.frame->v.y, c.frame->v.z});
    fr["eta0"] = json::array({c.frame->eta0.x, c.frame->eta0.y, c.frame->eta0.z});
    fr["xi1"] = json::array({c.frame->xi1.x, c.frame->xi1.y, c.frame->xi1.z});
    j["frame"] = fr;
  }
  json bump;
  bump["max_order"] = c.bump.max_order;
  switch (c.bump.kind) {
    case BumpSpec::Kind::half:
      bump["kind"] = "half";
      bump["T"] = c.bump.T;
      break;
    case BumpSpec::Kind::compact:
      bump["kind"] = "compact";
      bump["window"] = json::array({c.bump.windows[0].lo, c.bump.windows[0].hi});
      break;
    case BumpSpec::Kind::multi: {
      bump["kind"] = "multi";
      json ws = json::array();
      for (const auto& w : c.bump.windows)
        ws.push_back(json::array({w.lo, w.hi}));
      bump["windows"] = ws;
      break;
    }
  }
  j["bump"] = bump;

  json h;
  if (c.h.kind == DecayLaw::Kind::exponential) {
    h["law"] = "exponential";
    h["rate"] = c.h.rate;
  } else {
    h["table"] = dump_table(c.h.table);
  }
  j["h"] = h;

  json g;
  if (c.g.kind == AmplitudeConfig::Kind::power) {
    g["law"] = "power";
    g["alpha"] = c.g.alpha;
    g["scale"] = c.g.scale;
  } else {
    g["table"] = dump_table(c.g.table);
  }
  j["g"] = g;

  j["box"] = {{"K", c.box.K}, {"M", c.box.M}};
  j["sample_times"] = c.sample_times;
  j["analysis"] = {{"q", c.analysis.q},
                   {"alpha", c.analysis.alpha},
                   {"dyadic", json::array({c.analysis.dyadic_lo,
                                           c.analysis.dyadic_hi})},
                   {"s", c.analysis.s},
                   {"N_max", c.analysis.N_max}};
  if (c.complex2d) {
    j["complex2d"] = {{"v", json::array({c.complex2d->v[0], c.complex2d->v[1]})},
                      {"xi0", json::array({c.complex2d->xi0[0],
                                           c.complex2d->xi0[1]})},
                      {"gamma", c.complex2d->gamma},
                      {"alpha_exp", c.complex2d->alpha_exp}};
  }
  j["out_dir"] = c.out_dir;
  j["precision"] = c.precision == Precision::exact ? "exact" : "double";
  return j.dump(2) + "\n";
}

GeneratorData make_generator(const ScenarioConfig& config,
                             const LatticeFrame& frame) {
  GeneratorData gen;
  gen.bump = config.bump;
  if (config.h.kind == DecayLaw::Kind::exponential) {
    for (int k = 2; k <= config.box.K; ++k)
      gen.set_h(k, std::exp(-config.h.rate * norm(frame.point(k, 0))));
  } else {
    for (const auto& [k, value] : config.h.table) gen.set_h(k, value);
  }
  if (config.g.kind == AmplitudeConfig::Kind::power) {
    for (int m = 1; m <= config.box.M; ++m)
      gen.set_g(m, config.g.scale *
                       std::pow(norm(frame.point(0, m)), -config.g.alpha));
  } else {
    for (const auto& [m, value] : config.g.table) gen.set_g(m, value);
  }
  return gen;
}

LatticeFrame config_frame(const ScenarioConfig& config) {
  return config.frame ? *config.frame : LatticeFrame{};
}

}  // namespace eulat
