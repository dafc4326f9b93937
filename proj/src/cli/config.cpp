#include "hrl/cli/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "hrl/rng.hpp"

namespace hrl::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class T>
T parse_number(const std::string& text, int line, const std::string& key) {
  T value{};
  if constexpr (std::is_floating_point_v<T>) {
    char* end = nullptr;
    value = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(value))
      throw ConfigError(line, "key '" + key + "': expected a finite number, got '" + text + "'");
    return value;
  } else {
    const char* last = text.data() + text.size();
    const auto res = std::from_chars(text.data(), last, value);
    if (text.empty() || res.ec != std::errc() || res.ptr != last)
      throw ConfigError(line, "key '" + key + "': expected an integer, got '" + text + "'");
    return value;
  }
}

template <class T>
std::vector<T> parse_list(const std::string& text, int line, const std::string& key) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number<T>(trim(item), line, key));
  if (out.empty()) throw ConfigError(line, "key '" + key + "': empty list");
  return out;
}

// One entry per accepted key: setter and canonical printer.
struct Field {
  std::function<void(RunConfig&, const std::string&, int, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <class T>
Field scalar(std::function<T&(RunConfig&)> ref) {
  Field f;
  f.set = [ref](RunConfig& c, const std::string& v, int line, const std::string& key) {
    ref(c) = parse_number<T>(v, line, key);
  };
  f.get = [ref](const RunConfig& c) {
    const T& v = ref(const_cast<RunConfig&>(c));
    if constexpr (std::is_floating_point_v<T>) return format_double(v);
    else return std::to_string(v);
  };
  return f;
}

#define HRL_INT(path) scalar<int>([](RunConfig& c) -> int& { return c.path; })
#define HRL_DBL(path) scalar<double>([](RunConfig& c) -> double& { return c.path; })

template <class T>
Field list(std::function<std::vector<T>&(RunConfig&)> ref) {
  Field f;
  f.set = [ref](RunConfig& c, const std::string& v, int line, const std::string& key) {
    ref(c) = parse_list<T>(v, line, key);
  };
  f.get = [ref](const RunConfig& c) {
    std::string out;
    for (const auto& v : ref(const_cast<RunConfig&>(c))) {
      if (!out.empty()) out += ",";
      if constexpr (std::is_floating_point_v<T>) out += format_double(v);
      else out += std::to_string(v);
    }
    return out;
  };
  return f;
}

const std::map<std::string, std::map<std::string, Field>>& schema() {
  static const std::map<std::string, std::map<std::string, Field>> s = {
      {"general",
       {{"format_version", HRL_INT(format_version)},
        {"seed", Field{[](RunConfig& c, const std::string& v, int line, const std::string& key) {
                         c.seed = parse_number<std::uint64_t>(v, line, key);
                       },
                       [](const RunConfig& c) { return std::to_string(c.seed); }}}}},
      {"corpus",
       {{"count", HRL_INT(corpus.count)},
        {"r_min", HRL_DBL(corpus.r_min)},
        {"r_max", HRL_DBL(corpus.r_max)},
        {"knots", HRL_INT(corpus.knots)},
        {"degree", HRL_INT(corpus.degree)},
        {"max_ell", HRL_INT(corpus.max_ell)}}},
      {"verify-1d",
       {{"prop_cases", HRL_INT(verify_1d.prop_cases)},
        {"identity_profiles", HRL_INT(verify_1d.identity_profiles)},
        {"corollary_profiles", HRL_INT(verify_1d.corollary_profiles)},
        {"hardy_profiles", HRL_INT(verify_1d.hardy_profiles)}}},
      {"verify-decomp",
       {{"fields", HRL_INT(verify_decomp.fields)},
        {"fd_points", HRL_INT(verify_decomp.fd_points)},
        {"fd_step", HRL_DBL(verify_decomp.fd_step)}}},
      {"constants", {{"dim_min", HRL_INT(constants.dim_min)}, {"dim_max", HRL_INT(constants.dim_max)}}},
      {"quotient",
       {{"r_min", HRL_DBL(quotient.r_min)},
        {"r_max", HRL_DBL(quotient.r_max)},
        {"basis", HRL_INT(quotient.basis)},
        {"max_ell", HRL_INT(quotient.max_ell)},
        {"wide_r_min", HRL_DBL(quotient.wide_r_min)},
        {"wide_r_max", HRL_DBL(quotient.wide_r_max)},
        {"wide_basis", HRL_INT(quotient.wide_basis)},
        {"starts", HRL_INT(quotient.starts)},
        {"budget", HRL_INT(quotient.budget)},
        {"pn_knots", HRL_INT(quotient.pn_knots)}}},
      {"degeneracy",
       {{"log2_r_min", HRL_INT(degeneracy.log2_r_min)},
        {"log2_r_max", HRL_INT(degeneracy.log2_r_max)},
        {"ramp_factor", HRL_DBL(degeneracy.ramp_factor)}}},
      {"sweep",
       {{"dims", list<int>([](RunConfig& c) -> std::vector<int>& { return c.sweep.dims; })},
        {"weights", list<double>([](RunConfig& c) -> std::vector<double>& { return c.sweep.weights; })},
        {"radial_dim_max", HRL_INT(sweep.radial_dim_max)},
        {"fields_per_family", HRL_INT(sweep.fields_per_family)}}},
  };
  return s;
}

#undef HRL_INT
#undef HRL_DBL

void check_ranges(const RunConfig& c) {
  const auto need = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError(0, what);
  };
  need(c.corpus.count > 0, "[corpus] count must be > 0");
  need(c.corpus.r_min > 0.0 && c.corpus.r_max > c.corpus.r_min, "[corpus] need 0 < r_min < r_max");
  need(c.corpus.degree >= 4, "[corpus] degree must be >= 4");
  need(c.corpus.knots >= c.corpus.degree + 3, "[corpus] knots must be >= degree + 3");
  need(c.quotient.basis >= 2 && c.quotient.wide_basis >= 2, "[quotient] basis must be >= 2");
  need(c.quotient.r_min > 0.0 && c.quotient.r_max > c.quotient.r_min,
       "[quotient] need 0 < r_min < r_max");
  need(c.quotient.starts >= 1 && c.quotient.budget >= c.quotient.starts,
       "[quotient] need starts >= 1 and budget >= starts");
  need(c.degeneracy.log2_r_min >= 1 && c.degeneracy.log2_r_max > c.degeneracy.log2_r_min,
       "[degeneracy] need 1 <= log2_r_min < log2_r_max");
  need(c.constants.dim_min >= 1 && c.constants.dim_max >= c.constants.dim_min,
       "[constants] need 1 <= dim_min <= dim_max");
  for (int d : c.sweep.dims) need(d == 2 || d == 3, "[sweep] dims must be 2 or 3");
  for (double a : c.sweep.weights) need(a < 1.0, "[sweep] weights must be < 1");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig config;
  std::istringstream in(text);
  std::string raw, section = "general";
  int line = 0;
  bool version_seen = false, keys_seen = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find_first_of("#;");
    const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (content.empty()) continue;
    if (content.front() == '[') {
      if (content.back() != ']') throw ConfigError(line, "unterminated section header");
      section = trim(content.substr(1, content.size() - 2));
      if (!schema().count(section)) throw ConfigError(line, "unknown section [" + section + "]");
      continue;
    }
    const auto eq = content.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "expected 'key = value'");
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    const auto& keys = schema().at(section);
    const auto it = keys.find(key);
    if (it == keys.end()) throw ConfigError(line, "unknown key '" + key + "' in [" + section + "]");
    it->second.set(config, value, line, key);
    keys_seen = true;
    if (section == "general" && key == "format_version") {
      version_seen = true;
      if (config.format_version != kFormatVersion)
        throw ConfigError(line, "unsupported format_version " + std::to_string(config.format_version) +
                                    " (expected " + std::to_string(kFormatVersion) + ")");
    }
  }
  if (keys_seen && !version_seen)
    throw ConfigError(0, "missing format_version");
  check_ranges(config);
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(0, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string RunConfig::canonical() const {
  std::string out;
  for (const auto& [section, keys] : schema()) {
    out += "[" + section + "]\n";
    for (const auto& [key, field] : keys) out += key + " = " + field.get(*this) + "\n";
  }
  return out;
}

std::string config_hash(const RunConfig& config) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(child_seed(0, config.canonical())));
  return buf;
}

std::vector<double> power_of_two_grid(int lo, int hi) {
  std::vector<double> out;
  for (int k = lo; k <= hi; ++k) out.push_back(std::ldexp(1.0, k));
  return out;
}

}  // namespace hrl::cli
