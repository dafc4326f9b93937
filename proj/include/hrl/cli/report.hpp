#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hrl::cli {

enum class Flag { Pass, Fail, Exploratory };
const char* flag_name(Flag flag);
Flag parse_flag(const std::string& text);

/// One measured quantity.  Checked rows carry a bound and pass exactly when
/// value <= bound (1 + tolerance); exploratory rows carry no bound.
struct ReportRow {
  std::string experiment;
  int N = 0;
  double p = 0.0;
  double a = 0.0;
  int ell = 0;
  double R = 0.0;
  std::uint64_t seed = 0;
  std::string metric;
  double value = 0.0;
  std::optional<double> bound;
  Flag flag = Flag::Exploratory;

  bool operator==(const ReportRow&) const = default;
};

/// Row context shared by the rows of one experiment item.
struct RowContext {
  std::string experiment;
  int N = 0;
  double p = 0.0;
  double a = 0.0;
  int ell = 0;
  double R = 0.0;
  std::uint64_t seed = 0;
};

ReportRow checked_row(const RowContext& ctx, std::string metric, double value, double bound,
                      double tolerance);
ReportRow exploratory_row(const RowContext& ctx, std::string metric, double value);

bool any_failure(const std::vector<ReportRow>& rows);

struct RunMetadata {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string version;
  double wall_time = 0.0;  // seconds
};

enum class Format { Csv, Json };

/// experiment,N,p,a,ell,R,seed,metric,value,bound,flag with %.17g reals.
std::string to_csv(const std::vector<ReportRow>& rows);
std::vector<ReportRow> from_csv(const std::string& text);

std::string to_json(const std::vector<ReportRow>& rows, const RunMetadata& meta);
std::vector<ReportRow> from_json(const std::string& text, RunMetadata* meta = nullptr);

/// Writes the rows; throws std::runtime_error naming the path on IO failure.
void persist(const std::vector<ReportRow>& rows, const std::string& path, Format format,
             const RunMetadata& meta);
/// Reads a .csv or .json report by extension.
std::vector<ReportRow> load_rows(const std::string& path);

}  // namespace hrl::cli
