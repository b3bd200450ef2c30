#include "config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

namespace rydw::cli {

namespace {

using nlohmann::json;

// Wraps one JSON object; remembers which keys were consumed so that
// leftovers can be reported as unknown.
class Section {
public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + ": expected an object");
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  std::string key_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json& at(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  std::optional<double> number(const std::string& key) {
    if (!has(key)) return std::nullopt;
    const json& v = j_.at(key);
    if (!v.is_number()) throw ConfigError(key_path(key) + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(key_path(key) + ": must be finite");
    return x;
  }

  double required_number(const std::string& key) {
    auto v = number(key);
    if (!v) throw ConfigError(key_path(key) + ": required key is missing");
    return *v;
  }

  std::optional<long long> integer(const std::string& key) {
    if (!has(key)) return std::nullopt;
    const json& v = j_.at(key);
    if (!v.is_number_integer()) throw ConfigError(key_path(key) + ": expected an integer");
    return v.get<long long>();
  }

  std::optional<std::string> string(const std::string& key) {
    if (!has(key)) return std::nullopt;
    const json& v = j_.at(key);
    if (!v.is_string()) throw ConfigError(key_path(key) + ": expected a string");
    return v.get<std::string>();
  }

  std::optional<bool> boolean(const std::string& key) {
    if (!has(key)) return std::nullopt;
    const json& v = j_.at(key);
    if (!v.is_boolean()) throw ConfigError(key_path(key) + ": expected true or false");
    return v.get<bool>();
  }

  std::optional<Section> child(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return Section(j_.at(key), key_path(key));
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(key_path(it.key()) + ": unknown key");
    }
  }

private:
  std::string where() const { return path_.empty() ? "config" : path_; }

  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

int to_int(long long v, const std::string& path, long long lo, long long hi) {
  if (v < lo || v > hi) {
    throw ConfigError(path + ": " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "]");
  }
  return static_cast<int>(v);
}

// Grid: explicit array, or {"start": x0, "stop": x1, "count": n} (inclusive, linear).
std::vector<double> grid(Section& parent, const std::string& key, double scale) {
  const json& v = parent.at(key);
  const std::string path = parent.key_path(key);
  std::vector<double> out;
  if (v.is_array()) {
    for (const auto& x : v) {
      if (!x.is_number()) throw ConfigError(path + ": grid entries must be numbers");
      out.push_back(x.get<double>() * scale);
    }
  } else if (v.is_object()) {
    Section s(v, path);
    const double start = s.required_number("start");
    const double stop = s.required_number("stop");
    const auto count = s.integer("count");
    s.finish();
    if (!count) throw ConfigError(path + ".count: required key is missing");
    const int n = to_int(*count, path + ".count", 0, 1'000'000);
    for (int i = 0; i < n; ++i) {
      const double x = n == 1 ? start : start + (stop - start) * i / (n - 1);
      out.push_back(x * scale);
    }
  } else {
    throw ConfigError(path + ": expected an array or {start, stop, count}");
  }
  if (out.empty()) throw ConfigError(path + ": grid is empty");
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!std::isfinite(out[i]) || out[i] < 0.0) throw ConfigError(path + ": grid values must be finite and >= 0");
    if (i > 0 && !(out[i] > out[i - 1])) throw ConfigError(path + ": grid must be strictly increasing");
  }
  return out;
}

std::string location(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

}  // namespace

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

PhysicalParams RunConfig::params(int default_max_bosons) const {
  PhysicalParams p = physical;
  p.n_sites = run.n_sites;
  p.max_bosons = run.max_bosons.value_or(default_max_bosons);
  return p;
}

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid JSON at " + location(text, e.byte) + ": " + e.what());
  }

  RunConfig cfg;
  Section root(doc, "");

  if (auto out = root.child("output")) {
    if (auto units = out->string("units")) {
      try {
        cfg.output.units = parse_frequency_units(*units);
      } catch (const std::exception&) {
        throw ConfigError("output.units: expected \"angular\" or \"cyclic\", got \"" + *units + "\"");
      }
    }
    if (auto d = out->string("directory")) cfg.output.directory = *d;
    if (auto pre = out->string("prefix")) cfg.output.prefix = *pre;
    out->finish();
  }
  const double freq = to_angular(1.0, cfg.output.units);

  auto phys = root.child("physical");
  if (!phys) throw ConfigError("physical: required section is missing");
  PhysicalParams& p = cfg.physical;
  p.a = phys->required_number("a");
  p.omega_b = phys->required_number("omega_b") * freq;
  p.alpha = phys->required_number("alpha");
  const bool has_preset = phys->has("c3_preset");
  const bool has_c3 = phys->has("c3_over_hbar");
  if (has_preset && has_c3) throw ConfigError("physical: give either c3_preset or c3_over_hbar, not both");
  if (has_preset) {
    cfg.c3_name = *phys->string("c3_preset");
    try {
      const C3Preset preset = c3_preset(cfg.c3_name);
      p.c3_over_hbar = preset.c3_over_hbar;
      cfg.c3_approximate = preset.approximate;
    } catch (const std::exception&) {
      throw ConfigError("physical.c3_preset: unknown preset \"" + cfg.c3_name + "\" (nq80, nq50)");
    }
  } else if (has_c3) {
    p.c3_over_hbar = *phys->number("c3_over_hbar") * freq;
    cfg.c3_name = "custom";
  }
  if (auto m = phys->number("mass")) p.mass = *m;
  if (auto d = phys->number("delta")) {
    p.delta = *d * freq;
    cfg.delta_given = true;
  }
  phys->finish();
  if (!(p.a > 0.0)) throw ConfigError("physical.a: must be > 0");
  if (!(p.omega_b > 0.0)) throw ConfigError("physical.omega_b: must be > 0");
  if (p.alpha < 0.0) throw ConfigError("physical.alpha: must be >= 0");
  if (!(p.mass > 0.0)) throw ConfigError("physical.mass: must be > 0");
  if (!(p.c3_over_hbar > 0.0)) throw ConfigError("physical.c3_over_hbar: must be > 0");
  if (cfg.delta_given && p.delta == 0.0) throw ConfigError("physical.delta: must be nonzero");
  if (!cfg.delta_given) p = at_sweet_spot(p);

  RunSettings& r = cfg.run;
  if (auto run = root.child("run")) {
    if (auto v = run->integer("n_sites")) r.n_sites = to_int(*v, "run.n_sites", 2, 64);
    if (auto v = run->integer("max_bosons")) r.max_bosons = to_int(*v, "run.max_bosons", 0, 255);
    if (auto v = run->number("tol")) r.tol = *v;
    if (auto v = run->integer("max_iter")) r.max_iter = to_int(*v, "run.max_iter", 1, 100'000'000);
    if (auto v = run->integer("krylov_max")) r.krylov_max = to_int(*v, "run.krylov_max", 4, 100'000);
    if (auto v = run->integer("seed")) {
      if (*v < 0) throw ConfigError("run.seed: must be >= 0");
      r.seed = static_cast<std::uint64_t>(*v);
    }
    if (auto v = run->integer("threads")) r.threads = to_int(*v, "run.threads", 1, 1024);
    if (run->has("alpha_grid")) r.alpha_grid = grid(*run, "alpha_grid", 1.0);
    if (run->has("omega_grid")) r.omega_grid = grid(*run, "omega_grid", freq);
    if (auto v = run->boolean("locate_critical")) r.locate_critical = *v;
    if (auto v = run->boolean("truncation_check")) r.truncation_check = *v;
    if (auto v = run->integer("q_d_index")) r.q_d_index = to_int(*v, "run.q_d_index", -1'000, 1'000);
    if (auto v = run->number("beta_p")) r.beta_p = *v * freq;
    if (auto v = run->number("beta_ratio")) r.beta_ratio = *v;
    if (auto v = run->number("omega_drive")) r.omega_drive = *v * freq;
    if (auto v = run->string("envelope")) r.envelope = *v;
    if (auto v = run->number("ramp_time")) r.ramp_time = *v;
    if (auto v = run->number("t_final")) r.t_final = *v;
    if (auto v = run->number("dt")) r.dt = *v;
    if (auto v = run->integer("record_stride")) r.record_stride = to_int(*v, "run.record_stride", 1, 1'000'000'000);
    if (auto v = run->integer("steps_per_period")) r.steps_per_period = to_int(*v, "run.steps_per_period", 4, 100'000);
    if (run->has("detuning_offsets")) {
      const auto& arr = run->at("detuning_offsets");
      if (!arr.is_array()) throw ConfigError("run.detuning_offsets: expected an array");
      for (const auto& x : arr) {
        if (!x.is_number()) throw ConfigError("run.detuning_offsets: entries must be numbers");
        r.detuning_offsets.push_back(x.get<double>());
      }
    }
    run->finish();
  }
  if (!(r.tol > 0.0)) throw ConfigError("run.tol: must be > 0");
  if (r.beta_p && !(*r.beta_p > 0.0)) throw ConfigError("run.beta_p: must be > 0");
  if (!(r.beta_ratio > 0.0)) throw ConfigError("run.beta_ratio: must be > 0");
  if (r.envelope != "constant" && r.envelope != "cosine_ramp") {
    throw ConfigError("run.envelope: expected \"constant\" or \"cosine_ramp\"");
  }
  if (r.envelope == "cosine_ramp" && !(r.ramp_time > 0.0)) throw ConfigError("run.ramp_time: must be > 0 for cosine_ramp");
  if (r.t_final && !(*r.t_final >= 0.0)) throw ConfigError("run.t_final: must be >= 0");
  if (r.dt < 0.0) throw ConfigError("run.dt: must be >= 0");
  root.finish();

  cfg.canonical = doc.dump();
  cfg.hash = fnv1a(cfg.canonical);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace rydw::cli
