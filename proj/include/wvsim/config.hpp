#pragma once

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wvsim/errors.hpp"
#include "wvsim/qcore.hpp"
#include "wvsim/table.hpp"

namespace wvsim {
namespace config {

enum class Experiment { weak_values, stimulated, spontaneous, ensemble, sweep };
enum class OutFormat { csv, json };

inline const char* experiment_name(Experiment e) {
  switch (e) {
    case Experiment::weak_values: return "weak-values";
    case Experiment::stimulated: return "stimulated";
    case Experiment::spontaneous: return "spontaneous";
    case Experiment::ensemble: return "ensemble";
    case Experiment::sweep: return "sweep";
  }
  return "?";
}

inline Experiment experiment_from_name(const std::string& s, int line) {
  if (s == "weak-values") return Experiment::weak_values;
  if (s == "stimulated") return Experiment::stimulated;
  if (s == "spontaneous") return Experiment::spontaneous;
  if (s == "ensemble") return Experiment::ensemble;
  if (s == "sweep") return Experiment::sweep;
  throw ParseError(line, "experiment", "unknown experiment '" + s + "'");
}

// Everything a run needs, with the documented defaults already filled in.
// The experiment itself carries no default: a config without one is an error.
struct RunConfig {
  std::optional<Experiment> experiment;
  cplx alpha{4.0, 0.0};
  cplx beta{3.0, 0.0};
  std::vector<cplx> pre_amps;   // empty: use the alpha/beta preparation
  std::vector<cplx> post_amps;  // empty: uniform over arms
  double q0 = 40.0;
  double d = 1.0;
  double lambda = 100.0;
  double waist_factor = 1.0;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 42;
  bool excitation = false;
  std::string output_path;
  OutFormat format = OutFormat::csv;
  std::string sweep_axis;
  std::vector<double> sweep_values;
  std::optional<Experiment> sweep_target;
};

namespace detail {

inline std::string strip_space(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  const auto b = s.find_last_not_of(" \t");
  return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
}

}  // namespace detail

inline double parse_real(const std::string& raw, int line, const std::string& field) {
  const std::string s = detail::strip_space(raw);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size())
    throw ParseError(line, field, "not a real number: '" + raw + "'");
  return v;
}

inline std::uint64_t parse_uint(const std::string& raw, int line, const std::string& field) {
  const std::string s = detail::strip_space(raw);
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || s[0] == '-' || end != s.c_str() + s.size())
    throw ParseError(line, field, "not a nonnegative integer: '" + raw + "'");
  return v;
}

inline bool parse_bool(const std::string& raw, int line, const std::string& field) {
  const std::string s = detail::strip_space(raw);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ParseError(line, field, "not a boolean: '" + raw + "'");
}

// Accepts "4", "-3", "4i", "-3i", "2+3i", "2.5-1e+2i", "i", "-i".
inline cplx parse_complex(const std::string& raw, int line, const std::string& field) {
  const std::string s = detail::strip_space(raw);
  if (s.empty()) throw ParseError(line, field, "empty complex number");
  if (s.back() != 'i' && s.back() != 'I') return {parse_real(s, line, field), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  const auto sign_coeff = [&](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    return parse_real(part, line, field);
  };
  // Split before the last sign that is not an exponent sign and not leading.
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E')
      return {parse_real(body.substr(0, i), line, field), sign_coeff(body.substr(i))};
  }
  return {0.0, sign_coeff(body)};
}

inline std::string format_complex(cplx z) {
  if (z.imag() == 0.0) return table::format_real(z.real());
  std::string im = table::format_real(z.imag()) + "i";
  if (z.real() == 0.0) return im;
  return table::format_real(z.real()) + (z.imag() < 0.0 ? "" : "+") + im;
}

inline std::vector<std::string> split_list(const std::string& raw, int line,
                                           const std::string& field) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(raw);
  while (std::getline(in, cur, ',')) out.push_back(cur);
  if (out.empty()) throw ParseError(line, field, "empty list");
  return out;
}

inline std::vector<cplx> parse_complex_list(const std::string& raw, int line,
                                            const std::string& field) {
  std::vector<cplx> out;
  for (const auto& part : split_list(raw, line, field))
    out.push_back(parse_complex(part, line, field));
  return out;
}

inline std::vector<double> parse_real_list(const std::string& raw, int line,
                                           const std::string& field) {
  std::vector<double> out;
  for (const auto& part : split_list(raw, line, field))
    out.push_back(parse_real(part, line, field));
  return out;
}

struct KeyValue {
  std::string key;  // section-qualified, e.g. "stimulated.q0"
  std::string value;
  int line;
};

// Flat key/value format with [section] headers; `#` and `;` start comment
// lines. Keys outside any section keep their bare name (schema_version).
inline std::vector<KeyValue> parse_ini(const std::string& text) {
  std::vector<KeyValue> out;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']' || t.size() < 3)
        throw ParseError(lineno, t, "malformed section header");
      section = detail::trim(t.substr(1, t.size() - 2));
      if (section.empty()) throw ParseError(lineno, t, "empty section name");
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, t, "expected key = value");
    const std::string key = detail::trim(t.substr(0, eq));
    if (key.empty()) throw ParseError(lineno, t, "empty key");
    out.push_back({section.empty() ? key : section + "." + key,
                   detail::trim(t.substr(eq + 1)), lineno});
  }
  return out;
}

// Applies one section-qualified key to the config. Shared by the file parser
// and the flag layer, so both accept the same vocabulary and flags can
// override file values by being applied afterwards.
inline void apply_key(RunConfig& cfg, const std::string& key, const std::string& value,
                      int line) {
  if (key == "schema_version") {
    if (value != "1") throw ParseError(line, key, "unsupported schema_version '" + value + "'");
  } else if (key == "run.experiment") {
    cfg.experiment = experiment_from_name(value, line);
  } else if (key == "selection.alpha") {
    cfg.alpha = parse_complex(value, line, key);
  } else if (key == "selection.beta") {
    cfg.beta = parse_complex(value, line, key);
  } else if (key == "selection.pre") {
    cfg.pre_amps = parse_complex_list(value, line, key);
  } else if (key == "selection.post") {
    cfg.post_amps = parse_complex_list(value, line, key);
  } else if (key == "stimulated.q0") {
    cfg.q0 = parse_real(value, line, key);
  } else if (key == "stimulated.excitation") {
    cfg.excitation = parse_bool(value, line, key);
  } else if (key == "spontaneous.d") {
    cfg.d = parse_real(value, line, key);
  } else if (key == "spontaneous.lambda") {
    cfg.lambda = parse_real(value, line, key);
  } else if (key == "spontaneous.waist_factor") {
    cfg.waist_factor = parse_real(value, line, key);
  } else if (key == "ensemble.trials") {
    cfg.trials = parse_uint(value, line, key);
  } else if (key == "ensemble.seed") {
    cfg.seed = parse_uint(value, line, key);
  } else if (key == "output.path") {
    cfg.output_path = value;
  } else if (key == "output.format") {
    if (value == "csv") cfg.format = OutFormat::csv;
    else if (value == "json") cfg.format = OutFormat::json;
    else throw ParseError(line, key, "format must be csv or json");
  } else if (key == "sweep.axis") {
    cfg.sweep_axis = value;
  } else if (key == "sweep.values") {
    cfg.sweep_values = parse_real_list(value, line, key);
  } else if (key == "sweep.target") {
    cfg.sweep_target = experiment_from_name(value, line);
  } else {
    throw ParseError(line, key, "unknown config key");
  }
}

inline RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  bool saw_version = false;
  for (const KeyValue& kv : parse_ini(text)) {
    if (kv.key == "schema_version") saw_version = true;
    apply_key(cfg, kv.key, kv.value, kv.line);
  }
  if (!saw_version) throw ParseError(0, "schema_version", "config file must declare schema_version = 1");
  return cfg;
}

// The experiment the sweep axis belongs to when the config does not say:
// pointer-strength axes drive the interferometer experiment, geometry axes
// the emission experiment.
inline Experiment resolve_sweep_target(const RunConfig& cfg) {
  if (cfg.sweep_target) return *cfg.sweep_target;
  if (cfg.sweep_axis == "q0" || cfg.sweep_axis == "alpha") return Experiment::stimulated;
  return Experiment::spontaneous;
}

// Full validation before any computation; names the offending field.
inline void validate(const RunConfig& cfg) {
  if (!cfg.experiment) throw ParseError(0, "experiment", "no experiment selected");
  const auto positive = [](double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ValidationError(field, "must be positive and finite");
  };
  positive(cfg.q0, "q0");
  positive(cfg.d, "d");
  positive(cfg.lambda, "lambda");
  positive(cfg.waist_factor, "waist_factor");
  if (!is_finite(cfg.alpha)) throw ValidationError("alpha", "must be finite");
  if (!is_finite(cfg.beta)) throw ValidationError("beta", "must be finite");
  if (!cfg.pre_amps.empty()) {
    double n2 = 0.0;
    for (cplx a : cfg.pre_amps) {
      if (!is_finite(a)) throw ValidationError("pre", "amplitudes must be finite");
      n2 += std::norm(a);
    }
    if (n2 <= 0.0) throw ValidationError("pre", "amplitudes must not all vanish");
  }
  if (!cfg.post_amps.empty()) {
    const std::size_t dim = cfg.pre_amps.empty() ? 2 : cfg.pre_amps.size();
    if (cfg.post_amps.size() != dim)
      throw ValidationError("post", "post amplitudes must match the arm count");
    double n2 = 0.0;
    for (cplx a : cfg.post_amps) {
      if (!is_finite(a)) throw ValidationError("post", "amplitudes must be finite");
      n2 += std::norm(a);
    }
    if (n2 <= 0.0) throw ValidationError("post", "amplitudes must not all vanish");
  }
  if (cfg.experiment == Experiment::ensemble && cfg.trials < 1)
    throw ValidationError("trials", "ensemble needs at least one trial");
  if (cfg.experiment == Experiment::sweep) {
    if (cfg.sweep_axis != "q0" && cfg.sweep_axis != "lambda" && cfg.sweep_axis != "d" &&
        cfg.sweep_axis != "alpha")
      throw ValidationError("sweep.axis", "axis must be one of q0, lambda, d, alpha");
    if (cfg.sweep_values.empty())
      throw ValidationError("sweep.values", "sweep needs at least one value");
    for (double v : cfg.sweep_values)
      if (!std::isfinite(v)) throw ValidationError("sweep.values", "values must be finite");
    if (cfg.sweep_axis != "alpha")
      for (double v : cfg.sweep_values)
        if (!(v > 0.0)) throw ValidationError("sweep.values", "values must be positive");
  }
}

}  // namespace config
}  // namespace wvsim
