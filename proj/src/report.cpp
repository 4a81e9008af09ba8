#include "ideal_moments/report.hpp"

#include <cmath>
#include <cstdio>

namespace ideal_moments {

std::string format_number(std::optional<double> value) {
  if (!value || std::isnan(*value)) return "";
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", *value);
  return buffer;
}

namespace {

std::string quote(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string format_count(std::optional<std::uint64_t> value) {
  return value ? std::to_string(*value) : "";
}

std::optional<double> finite_or_empty(double value) {
  if (std::isnan(value)) return std::nullopt;
  return value;
}

nlohmann::json number_or_null(std::optional<double> value) {
  if (!value || !std::isfinite(*value)) return nullptr;
  return *value;
}

}  // namespace

std::string csv_line(const ReportRow& row) {
  std::string out;
  out += quote(row.field) + ",";
  out += format_count(row.x) + ",";
  out += format_count(row.y) + ",";
  out += quote(row.kind) + ",";
  out += row.empirical + ",";
  out += format_number(row.predicted) + ",";
  out += format_number(row.residual) + ",";
  out += format_number(row.normalized_residual) + ",";
  out += quote(row.regime) + ",";
  out += format_number(row.c2) + ",";
  out += std::to_string(row.seed) + ",";
  out += format_number(row.runtime_ms);
  return out;
}

ReportRow to_row(const MomentResult& result, std::uint64_t seed, bool with_runtime) {
  ReportRow row;
  row.field = result.field;
  row.x = result.x;
  row.y = result.y;
  row.kind = result.kind;
  row.empirical = to_string(result.empirical);
  row.predicted = result.predicted;
  row.residual = result.residual;
  row.normalized_residual = result.normalized_residual;
  row.regime = result.regime;
  row.c2 = finite_or_empty(result.c2);
  row.seed = seed;
  if (with_runtime) row.runtime_ms = result.runtime_ms;
  return row;
}

ReportRow to_row(const AverageResult& result, std::uint64_t seed, bool with_runtime) {
  ReportRow row;
  row.field = result.field;
  row.x = result.x;
  row.kind = result.kind + "[z=" + result.z + "]";
  row.empirical = result.exact ? to_string(*result.exact) : format_number(result.empirical);
  row.predicted = finite_or_empty(result.predicted);
  row.residual = finite_or_empty(result.residual);
  row.normalized_residual = finite_or_empty(result.normalized_residual);
  row.seed = seed;
  if (with_runtime) row.runtime_ms = result.runtime_ms;
  return row;
}

ReportRow fit_row(const std::string& field, const std::string& kind, const FitResult& fit,
                  std::uint64_t seed) {
  ReportRow row;
  row.field = field;
  row.kind = "fit[" + kind + "]";
  row.empirical = format_number(fit.slope);
  row.predicted = 1.0;
  row.residual = fit.slope - 1.0;
  row.regime = "r2=" + format_number(fit.r_squared);
  row.seed = seed;
  return row;
}

nlohmann::json to_json(const ReportRow& row) {
  nlohmann::json out;
  out["field"] = row.field;
  out["x"] = row.x ? nlohmann::json(*row.x) : nlohmann::json(nullptr);
  out["y"] = row.y ? nlohmann::json(*row.y) : nlohmann::json(nullptr);
  out["kind"] = row.kind;
  out["empirical"] = row.empirical;
  out["predicted"] = number_or_null(row.predicted);
  out["residual"] = number_or_null(row.residual);
  out["normalized_residual"] = number_or_null(row.normalized_residual);
  out["regime"] = row.regime;
  out["c2"] = number_or_null(row.c2);
  out["seed"] = row.seed;
  out["runtime_ms"] = number_or_null(row.runtime_ms);
  return out;
}

nlohmann::json to_json(const MomentResult& result) {
  nlohmann::json out = to_json(to_row(result, 0, false));
  out.erase("seed");
  out.erase("runtime_ms");
  out["error_scale"] = result.error_scale;
  nlohmann::json alternatives = nlohmann::json::array();
  for (const auto& alt : result.alternatives) {
    alternatives.push_back({{"label", alt.label},
                            {"predicted", alt.predicted},
                            {"residual", alt.residual},
                            {"normalized_residual", alt.normalized_residual}});
  }
  out["alternatives"] = alternatives;
  return out;
}

nlohmann::json to_json(const AverageResult& result) {
  nlohmann::json out = to_json(to_row(result, 0, false));
  out.erase("seed");
  out.erase("runtime_ms");
  out["z"] = result.z;
  out["error_scale"] = result.error_scale;
  return out;
}

nlohmann::json to_json(const AnalyticConstants& constants) {
  nlohmann::json out;
  out["field"] = constants.field;
  out["rho"] = constants.rho;
  out["zeta0"] = constants.zeta0;
  out["zeta2"] = constants.zeta2;
  if (constants.zeta0_exact) {
    out["zeta0_exact"] = to_string(constants.zeta0_exact->first) + "/" +
                         to_string(constants.zeta0_exact->second);
  } else {
    out["zeta0_exact"] = nullptr;
  }
  out["digits"] = constants.digits;
  out["provenance"] = constants.provenance;
  return out;
}

nlohmann::json to_json(const VerifyReport& report) {
  nlohmann::json out;
  out["name"] = report.name;
  out["passed"] = report.passed;
  out["first_failure"] =
      report.first_failure ? nlohmann::json(*report.first_failure) : nlohmann::json(nullptr);
  out["checked"] = report.checked;
  out["detail"] = report.detail;
  return out;
}

}  // namespace ideal_moments
