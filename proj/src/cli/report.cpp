#include "hrl/cli/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hrl::cli {

const char* flag_name(Flag flag) {
  switch (flag) {
    case Flag::Pass: return "pass";
    case Flag::Fail: return "fail";
    case Flag::Exploratory: return "exploratory";
  }
  return "exploratory";
}

Flag parse_flag(const std::string& text) {
  if (text == "pass") return Flag::Pass;
  if (text == "fail") return Flag::Fail;
  if (text == "exploratory") return Flag::Exploratory;
  throw std::invalid_argument("unknown flag '" + text + "'");
}

ReportRow checked_row(const RowContext& ctx, std::string metric, double value, double bound,
                      double tolerance) {
  ReportRow row{ctx.experiment, ctx.N, ctx.p, ctx.a, ctx.ell, ctx.R, ctx.seed,
                std::move(metric), value, bound, Flag::Fail};
  const double limit = bound >= 0.0 ? bound * (1.0 + tolerance) : bound * (1.0 - tolerance);
  if (value <= limit) row.flag = Flag::Pass;
  return row;
}

ReportRow exploratory_row(const RowContext& ctx, std::string metric, double value) {
  return {ctx.experiment, ctx.N, ctx.p, ctx.a, ctx.ell, ctx.R, ctx.seed,
          std::move(metric), value, std::nullopt, Flag::Exploratory};
}

bool any_failure(const std::vector<ReportRow>& rows) {
  for (const auto& r : rows)
    if (r.flag == Flag::Fail) return true;
  return false;
}

namespace {

constexpr const char* kHeader = "experiment,N,p,a,ell,R,seed,metric,value,bound,flag";

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_real(const std::string& s) {
  // strtod, unlike stod, accepts subnormals and spells out inf/nan.
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw std::invalid_argument("bad real '" + s + "'");
  return v;
}

}  // namespace

std::string to_csv(const std::vector<ReportRow>& rows) {
  std::string out = std::string(kHeader) + "\n";
  for (const auto& r : rows) {
    if (r.experiment.find(',') != std::string::npos || r.metric.find(',') != std::string::npos)
      throw std::invalid_argument("to_csv: identifiers must not contain commas");
    out += r.experiment + "," + std::to_string(r.N) + "," + real(r.p) + "," + real(r.a) + "," +
           std::to_string(r.ell) + "," + real(r.R) + "," + std::to_string(r.seed) + "," + r.metric +
           "," + real(r.value) + "," + (r.bound ? real(*r.bound) : "") + "," + flag_name(r.flag) + "\n";
  }
  return out;
}

std::vector<ReportRow> from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || split_csv(line) != split_csv(kHeader))
    throw std::invalid_argument("from_csv: missing or unexpected header");
  std::vector<ReportRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 11) throw std::invalid_argument("from_csv: expected 11 fields: " + line);
    ReportRow r;
    r.experiment = f[0];
    r.N = std::stoi(f[1]);
    r.p = parse_real(f[2]);
    r.a = parse_real(f[3]);
    r.ell = std::stoi(f[4]);
    r.R = parse_real(f[5]);
    r.seed = std::stoull(f[6]);
    r.metric = f[7];
    r.value = parse_real(f[8]);
    if (!f[9].empty()) r.bound = parse_real(f[9]);
    r.flag = parse_flag(f[10]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string to_json(const std::vector<ReportRow>& rows, const RunMetadata& meta) {
  nlohmann::json doc;
  doc["metadata"] = {{"config_hash", meta.config_hash},
                     {"seed", meta.seed},
                     {"version", meta.version},
                     {"wall_time", meta.wall_time}};
  auto& arr = doc["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    arr.push_back({{"experiment", r.experiment},
                   {"N", r.N},
                   {"p", r.p},
                   {"a", r.a},
                   {"ell", r.ell},
                   {"R", r.R},
                   {"seed", r.seed},
                   {"metric", r.metric},
                   {"value", r.value},
                   {"bound", r.bound ? nlohmann::json(*r.bound) : nlohmann::json(nullptr)},
                   {"flag", flag_name(r.flag)}});
  }
  return doc.dump(1) + "\n";
}

std::vector<ReportRow> from_json(const std::string& text, RunMetadata* meta) {
  const auto doc = nlohmann::json::parse(text);
  if (meta) {
    const auto& m = doc.at("metadata");
    meta->config_hash = m.at("config_hash").get<std::string>();
    meta->seed = m.at("seed").get<std::uint64_t>();
    meta->version = m.at("version").get<std::string>();
    meta->wall_time = m.at("wall_time").get<double>();
  }
  std::vector<ReportRow> rows;
  for (const auto& j : doc.at("rows")) {
    ReportRow r;
    r.experiment = j.at("experiment").get<std::string>();
    r.N = j.at("N").get<int>();
    r.p = j.at("p").get<double>();
    r.a = j.at("a").get<double>();
    r.ell = j.at("ell").get<int>();
    r.R = j.at("R").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.metric = j.at("metric").get<std::string>();
    r.value = j.at("value").get<double>();
    if (!j.at("bound").is_null()) r.bound = j.at("bound").get<double>();
    r.flag = parse_flag(j.at("flag").get<std::string>());
    rows.push_back(std::move(r));
  }
  return rows;
}

void persist(const std::vector<ReportRow>& rows, const std::string& path, Format format,
             const RunMetadata& meta) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("persist: cannot open '" + path + "' for writing");
  out << (format == Format::Csv ? to_csv(rows) : to_json(rows, meta));
  out.flush();
  if (!out) throw std::runtime_error("persist: write failed for '" + path + "'");
}

std::vector<ReportRow> load_rows(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_rows: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const bool json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
  return json ? from_json(ss.str()) : from_csv(ss.str());
}

}  // namespace hrl::cli
