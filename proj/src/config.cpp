#include "vlcsec/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"
#include "vlcsec/error.hpp"

namespace vlcsec {

using nlohmann::json;

void ModelParams::validate() const {
  lambertian.validate();
  geometry.validate();
  secrecy.validate();
  if (!std::isfinite(gamma_th) || gamma_th < 1.0) {
    std::ostringstream msg;
    msg << "secrecy.gamma_th must be >= 1 (got " << gamma_th << ")";
    throw ValidationError(msg.str());
  }
  if (!std::isfinite(xi2_scale) || xi2_scale <= 0.0) {
    throw ValidationError("mutation.xi2_scale must be > 0");
  }
}

ChannelBounds ModelParams::bounds() const {
  validate();
  auto b = compute_bounds(lambertian, geometry);
  b.xi2 *= xi2_scale;
  return b;
}

bool is_sweep_param(std::string_view name) {
  return std::find(std::begin(kSweepParams), std::end(kSweepParams), name) != std::end(kSweepParams);
}

void assign_param(ModelParams& p, std::string_view name, double value) {
  if (name == "P_dB") {
    p.secrecy.P = db_to_linear(value);
  } else if (name == "rho") {
    p.geometry.rho = value;
  } else if (name == "eta_b") {
    p.secrecy.eta_b = value;
  } else if (name == "eta_e") {
    p.secrecy.eta_e = value;
  } else if (name == "gamma_th") {
    p.gamma_th = value;
  } else if (name == "xi") {
    p.secrecy.xi = value;
  } else {
    throw ConfigError("unknown sweep parameter '" + std::string(name) + "'");
  }
}

void SweepSpec::validate() const {
  if (!is_sweep_param(axis)) throw ConfigError("sweep.axis: unknown parameter '" + axis + "'");
  if (values.empty()) throw ConfigError("sweep.values: axis list is empty");
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] > values[i - 1])) throw ConfigError("sweep.values must be strictly increasing");
  }
  if (!curve_param.empty()) {
    if (!is_sweep_param(curve_param)) {
      throw ConfigError("sweep.curves.param: unknown parameter '" + curve_param + "'");
    }
    if (curve_param == axis) throw ConfigError("sweep.curves.param must differ from sweep.axis");
    if (curve_values.empty()) throw ConfigError("sweep.curves.values: list is empty");
  }
}

Mode parse_mode(std::string_view s) {
  if (s == "closed") return Mode::Closed;
  if (s == "quadrature") return Mode::Quadrature;
  if (s == "mc") return Mode::MC;
  if (s == "all") return Mode::All;
  throw ConfigError("mode: expected closed, quadrature, mc or all (got '" + std::string(s) + "')");
}

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Closed: return "closed";
    case Mode::Quadrature: return "quadrature";
    case Mode::MC: return "mc";
    case Mode::All: return "all";
  }
  return "?";
}

PdfKind parse_pdf_kind(std::string_view s) {
  if (s == "gain_bob") return PdfKind::GainBob;
  if (s == "gain_eve") return PdfKind::GainEve;
  if (s == "j_bob") return PdfKind::JBob;
  if (s == "j_eve") return PdfKind::JEve;
  throw ConfigError("pdf.which: expected gain_bob, gain_eve, j_bob or j_eve (got '" +
                    std::string(s) + "')");
}

std::string_view to_string(PdfKind k) {
  switch (k) {
    case PdfKind::GainBob: return "gain_bob";
    case PdfKind::GainEve: return "gain_eve";
    case PdfKind::JBob: return "j_bob";
    case PdfKind::JEve: return "j_eve";
  }
  return "?";
}

namespace {

void check_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ConfigError(where + "." + key + ": unknown key");
    }
  }
}

double number(const json& obj, const std::string& where, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(where + "." + key + ": must be finite");
  return d;
}

void maybe(const json& obj, const std::string& where, const char* key, double& out) {
  if (obj.contains(key)) out = number(obj, where, key);
}

std::uint64_t count(const json& obj, const std::string& where, const char* key) {
  const auto& v = obj.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError(where + "." + key + ": expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::vector<double> number_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw ConfigError(where + ": expected an array of numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

std::vector<double> axis_values(const json& s) {
  const bool has_list = s.contains("values");
  const bool has_range = s.contains("start") || s.contains("stop") || s.contains("step");
  if (has_list && has_range) throw ConfigError("sweep: give either values or start/stop/step, not both");
  if (has_list) return number_list(s.at("values"), "sweep.values");
  if (!has_range) return {};
  for (const char* k : {"start", "stop", "step"}) {
    if (!s.contains(k)) throw ConfigError(std::string("sweep.") + k + ": missing");
  }
  const double start = number(s, "sweep", "start");
  const double stop = number(s, "sweep", "stop");
  const double step = number(s, "sweep", "step");
  if (step <= 0.0) throw ConfigError("sweep.step must be > 0");
  if (stop < start) throw ConfigError("sweep.stop must be >= sweep.start");
  std::vector<double> out;
  const auto n = static_cast<long long>(std::floor((stop - start) / step + 1e-9));
  // Snap to 12 significant digits so 0.1 + 3 * 0.05 prints as 0.25.
  for (long long i = 0; i <= n; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", start + static_cast<double>(i) * step);
    out.push_back(std::strtod(buf, nullptr));
  }
  return out;
}

// Model validation failures surface as config errors naming the field.
template <class F>
void as_config_error(F&& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

RunConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  check_keys(root, "config",
             {"lambertian", "geometry", "secrecy", "sweep", "mode", "mc", "output", "pdf", "mutation"});

  RunConfig cfg;
  auto& p = cfg.model;
  try {
    if (root.contains("lambertian")) {
      const auto& o = root.at("lambertian");
      check_keys(o, "lambertian", {"m", "A", "Ts", "g", "psi_c"});
      maybe(o, "lambertian", "m", p.lambertian.m);
      maybe(o, "lambertian", "A", p.lambertian.A);
      maybe(o, "lambertian", "Ts", p.lambertian.Ts);
      maybe(o, "lambertian", "g", p.lambertian.g);
      if (o.contains("psi_c")) p.lambertian.psi_c = number(o, "lambertian", "psi_c");
    }
    if (root.contains("geometry")) {
      const auto& o = root.at("geometry");
      check_keys(o, "geometry", {"D", "rho", "l"});
      maybe(o, "geometry", "D", p.geometry.D);
      maybe(o, "geometry", "rho", p.geometry.rho);
      maybe(o, "geometry", "l", p.geometry.l);
    }
    if (root.contains("secrecy")) {
      const auto& o = root.at("secrecy");
      check_keys(o, "secrecy", {"xi", "P_dB", "P_linear", "sigma2_b", "sigma2_e", "eta_b", "eta_e",
                                "epsilon", "gamma_th"});
      if (o.contains("P_dB") && o.contains("P_linear")) {
        throw ConfigError("secrecy: P_dB and P_linear are mutually exclusive");
      }
      if (o.contains("P_dB")) p.secrecy.P = db_to_linear(number(o, "secrecy", "P_dB"));
      maybe(o, "secrecy", "P_linear", p.secrecy.P);
      maybe(o, "secrecy", "xi", p.secrecy.xi);
      maybe(o, "secrecy", "sigma2_b", p.secrecy.sigma2_b);
      maybe(o, "secrecy", "sigma2_e", p.secrecy.sigma2_e);
      maybe(o, "secrecy", "eta_b", p.secrecy.eta_b);
      maybe(o, "secrecy", "eta_e", p.secrecy.eta_e);
      maybe(o, "secrecy", "gamma_th", p.gamma_th);
      if (o.contains("epsilon")) p.secrecy.epsilon = number(o, "secrecy", "epsilon");
    }
    if (root.contains("mutation")) {
      const auto& o = root.at("mutation");
      check_keys(o, "mutation", {"xi2_scale"});
      maybe(o, "mutation", "xi2_scale", p.xi2_scale);
    }
    if (root.contains("sweep")) {
      const auto& o = root.at("sweep");
      check_keys(o, "sweep", {"axis", "values", "start", "stop", "step", "curves"});
      if (o.contains("axis")) {
        if (!o.at("axis").is_string()) throw ConfigError("sweep.axis: expected a string");
        cfg.sweep.axis = o.at("axis").get<std::string>();
      }
      cfg.sweep.values = axis_values(o);
      if (o.contains("curves")) {
        const auto& c = o.at("curves");
        check_keys(c, "sweep.curves", {"param", "values"});
        if (!c.contains("param") || !c.at("param").is_string()) {
          throw ConfigError("sweep.curves.param: expected a string");
        }
        cfg.sweep.curve_param = c.at("param").get<std::string>();
        if (!c.contains("values")) throw ConfigError("sweep.curves.values: missing");
        cfg.sweep.curve_values = number_list(c.at("values"), "sweep.curves.values");
      }
      if (!cfg.sweep.axis.empty() && !cfg.sweep.values.empty()) cfg.sweep.validate();
    }
    if (root.contains("mode")) {
      if (!root.at("mode").is_string()) throw ConfigError("mode: expected a string");
      cfg.mode = parse_mode(root.at("mode").get<std::string>());
    }
    if (root.contains("mc")) {
      const auto& o = root.at("mc");
      check_keys(o, "mc", {"samples", "seed", "workers", "batch"});
      if (o.contains("samples")) cfg.mc.n_samples = count(o, "mc", "samples");
      if (o.contains("seed")) cfg.mc.seed = count(o, "mc", "seed");
      if (o.contains("workers")) cfg.mc.n_streams = static_cast<unsigned>(count(o, "mc", "workers"));
      if (o.contains("batch")) cfg.mc.batch = count(o, "mc", "batch");
    }
    if (root.contains("output")) {
      const auto& o = root.at("output");
      check_keys(o, "output", {"csv", "bits"});
      if (o.contains("csv")) {
        if (!o.at("csv").is_string()) throw ConfigError("output.csv: expected a string");
        cfg.output_csv = o.at("csv").get<std::string>();
      }
      if (o.contains("bits")) {
        if (!o.at("bits").is_boolean()) throw ConfigError("output.bits: expected true or false");
        cfg.bits = o.at("bits").get<bool>();
      }
    }
    if (root.contains("pdf")) {
      const auto& o = root.at("pdf");
      check_keys(o, "pdf", {"which", "points"});
      if (o.contains("which")) {
        if (!o.at("which").is_string()) throw ConfigError("pdf.which: expected a string");
        cfg.pdf.which = parse_pdf_kind(o.at("which").get<std::string>());
      }
      if (o.contains("points")) {
        const auto n = count(o, "pdf", "points");
        if (n < 2 || n > 10'000'000) throw ConfigError("pdf.points must lie in [2, 1e7]");
        cfg.pdf.points = static_cast<int>(n);
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  as_config_error([&] {
    (void)p.bounds();
    cfg.mc.validate();
  });
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace vlcsec
