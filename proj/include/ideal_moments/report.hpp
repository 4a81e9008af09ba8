#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ideal_moments/analytic.hpp"
#include "ideal_moments/moments.hpp"

namespace ideal_moments {

/// One CSV line. Empty optionals print as empty cells.
struct ReportRow {
  std::string field;
  std::optional<std::uint64_t> x;
  std::optional<std::uint64_t> y;
  std::string kind;
  std::string empirical;
  std::optional<double> predicted;
  std::optional<double> residual;
  std::optional<double> normalized_residual;
  std::string regime;
  std::optional<double> c2;
  std::uint64_t seed = 0;
  std::optional<double> runtime_ms;
};

inline constexpr const char* kCsvHeader =
    "field,x,y,kind,empirical,predicted,residual,normalized_residual,regime,c2,seed,runtime_ms";

/// %.17g, or empty for NaN and missing values.
std::string format_number(std::optional<double> value);
std::string csv_line(const ReportRow& row);

ReportRow to_row(const MomentResult& result, std::uint64_t seed, bool with_runtime);
ReportRow to_row(const AverageResult& result, std::uint64_t seed, bool with_runtime);
/// Summary of a log-log residual fit: empirical = slope, predicted = 1 (slope of the scale
/// itself), residual = slope - 1, regime = "r2=<r squared>".
ReportRow fit_row(const std::string& field, const std::string& kind, const FitResult& fit,
                  std::uint64_t seed);

nlohmann::json to_json(const ReportRow& row);
nlohmann::json to_json(const MomentResult& result);
nlohmann::json to_json(const AverageResult& result);
nlohmann::json to_json(const AnalyticConstants& constants);
nlohmann::json to_json(const VerifyReport& report);

}  // namespace ideal_moments
