#include "ideal_moments/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <regex>

#include "ideal_moments/cache.hpp"
#include "ideal_moments/errors.hpp"
#include "ideal_moments/moments.hpp"
#include "ideal_moments/numtheory.hpp"
#include "ideal_moments/report.hpp"

namespace ideal_moments {

// ---------------------------------------------------------------------------
// y rules

std::uint64_t YRule::operator()(std::uint64_t x) const {
  const double y = coefficient * std::pow(static_cast<double>(x), exponent);
  if (!(y >= 1.0) || !std::isfinite(y)) throw ConfigError("y-rule gives y < 1 at x=" + std::to_string(x));
  return static_cast<std::uint64_t>(std::llround(y));
}

YRule parse_y_rule(const std::string& text) {
  static const std::regex pattern(
      R"(^\s*(?:y\s*=\s*)?(?:([0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*\*\s*)?x\s*(?:\^\s*([0-9]*\.?[0-9]+))?\s*$)");
  std::smatch match;
  if (!std::regex_match(text, match, pattern)) {
    throw ConfigError("cannot parse y-rule '" + text + "' (expected y=C*x^E)");
  }
  YRule rule;
  if (match[1].matched) rule.coefficient = std::stod(match[1].str());
  if (match[2].matched) rule.exponent = std::stod(match[2].str());
  if (!(rule.coefficient > 0.0) || !(rule.exponent > 0.0)) {
    throw ConfigError("y-rule must be increasing in x: " + text);
  }
  return rule;
}

// ---------------------------------------------------------------------------
// Verification suite

namespace {

VerifyReport combine(std::string name, const std::vector<VerifyReport>& parts) {
  VerifyReport out;
  out.name = std::move(name);
  for (const auto& part : parts) {
    out.checked += part.checked;
    if (!part.passed && out.passed) {
      out.passed = false;
      out.first_failure = part.first_failure;
      out.detail = part.name + ": " + part.detail;
    }
  }
  if (out.passed) out.detail = std::to_string(parts.size()) + " cases";
  return out;
}

}  // namespace

std::vector<VerifyReport> run_verify_suite(const NumberField& field, const VerifyOptions& options) {
  const std::string name = field.descriptor();
  const std::uint64_t n = std::max<std::uint64_t>(options.n, 1);
  std::vector<VerifyReport> out;

  // Ramanujan Dirichlet series, every ideal of norm <= min(200, n), coefficients up to n.
  {
    const RamanujanSeriesContext context(field, n, options.limits);
    std::vector<VerifyReport> parts;
    for (const auto& ideal : context.ideals) {
      if (ideal.norm() > std::min<std::uint64_t>(200, n)) break;
      parts.push_back(verify_ramanujan_series(context, ideal));
      if (!parts.back().passed) break;
    }
    out.push_back(combine("ramanujan series " + name, parts));
  }

  // Divisor convolution for z = 0, 1, 2 up to 20 n.
  {
    const std::uint64_t bound = std::min<std::uint64_t>(20 * n, options.limits.max_table_n);
    const auto counts = ideal_count_table(field, bound, options.limits);
    std::vector<VerifyReport> parts;
    for (unsigned z = 0; z <= 2; ++z) {
      auto table = divisor_coeff_table(field, bound, ZParam(static_cast<std::int64_t>(z)),
                                       options.limits);
      if (options.corrupt && z == 1) {
        const std::uint64_t target = 1 + options.seed % bound;
        table.exact_values()[target] += 1;
      }
      parts.push_back(verify_divisor_convolution(counts, table, z));
    }
    out.push_back(combine("divisor convolution " + name, parts));
  }

  // Local Euler factors of the sigma-pair series at every p <= min(100, n), exponents <= 6.
  {
    std::vector<VerifyReport> parts;
    for (std::uint64_t p : nt::primes_up_to(std::min<std::uint64_t>(100, n))) {
      parts.push_back(verify_sigma_pair_local(field, p, 6, ZParam(0), ZParam(0)));
      parts.push_back(verify_sigma_pair_local(field, p, 6, ZParam(0.5), ZParam(-0.25)));
    }
    out.push_back(combine("sigma-pair euler factor " + name, parts));
  }

  out.push_back(verify_multiplicativity(field, std::min<std::uint64_t>(n, 200)));
  out.push_back(verify_ramanujan_paths(field, n, 100, options.seed));
  return out;
}

// ---------------------------------------------------------------------------
// Command line

namespace {

struct Settings {
  std::vector<std::string> fields;
  std::vector<std::uint64_t> x;
  std::vector<std::uint64_t> y;
  std::string y_rule;
  std::optional<double> z;
  std::optional<double> z1;
  std::optional<double> z2;
  std::string kind;
  std::string c2 = "0.5";
  std::string cache_dir = ".ideal_moments_cache";
  std::string out;
  std::string json;
  std::uint64_t seed = 20240601;
  std::uint64_t max_n = 10'000'000;
  std::uint64_t max_ideals = 20'000'000;
  std::uint64_t n = 500;
  unsigned threads = 1;
  bool corrupt = false;
  bool record_runtime = false;
  std::string tag;
};

ZParam z_value(double v) {
  if (v >= 0.0 && v <= 64.0 && v == std::floor(v)) return ZParam(static_cast<std::int64_t>(v));
  return ZParam(v);
}

std::vector<NumberField> selected_fields(const Settings& s, bool default_all) {
  std::vector<NumberField> out;
  for (const auto& text : s.fields) out.push_back(NumberField::parse(text));
  if (out.empty()) {
    if (!default_all) throw ConfigError("--field is required");
    out = reference_fields();
  }
  return out;
}

ResourceLimits limits_of(const Settings& s) {
  if (s.max_n == 0 || s.max_ideals == 0) throw ConfigError("resource caps must be positive");
  return {s.max_n, s.max_ideals};
}

// Output sink: a file when a path is given, the supplied stream otherwise. Lines are flushed as
// they are written so partial results survive an early exit.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path, std::ios::trunc);
    if (!*file_) throw ConfigError("cannot open output file " + path);
    stream_ = file_.get();
  }
  void line(const std::string& text) { *stream_ << text << '\n' << std::flush; }
  std::ostream& stream() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

void write_json_file(const std::string& path, const nlohmann::json& value) {
  std::ofstream file(path, std::ios::trunc);
  if (!file) throw ConfigError("cannot open JSON output " + path);
  file << value.dump(2) << '\n';
}

int cmd_constants(const Settings& s, std::ostream& out) {
  nlohmann::json result = nlohmann::json::array();
  for (const auto& field : selected_fields(s, true)) result.push_back(to_json(constants(field)));
  if (result.size() == 1) result = result[0];
  if (!s.json.empty()) write_json_file(s.json, result);
  if (!s.out.empty()) write_json_file(s.out, result);
  out << result.dump(2) << '\n';
  return kExitOk;
}

int cmd_verify(const Settings& s, std::ostream& out, std::ostream& err) {
  VerifyOptions options;
  options.n = s.n;
  options.seed = s.seed;
  options.corrupt = s.corrupt;
  options.limits = limits_of(s);
  if (s.n < 2) err << "warning: N=" << s.n << " makes the identity suites vacuous\n";
  Sink sink(s.out, out);
  nlohmann::json reports = nlohmann::json::array();
  bool all_passed = true;
  for (const auto& field : selected_fields(s, true)) {
    for (const auto& report : run_verify_suite(field, options)) {
      std::string line = std::string(report.passed ? "PASS " : "FAIL ") + report.name +
                         " checked=" + std::to_string(report.checked);
      if (report.first_failure) line += " first_failure=" + std::to_string(*report.first_failure);
      if (!report.detail.empty()) line += " (" + report.detail + ")";
      sink.line(line);
      reports.push_back(to_json(report));
      all_passed = all_passed && report.passed;
    }
  }
  if (!s.json.empty()) {
    write_json_file(s.json, {{"n", s.n}, {"seed", s.seed}, {"passed", all_passed},
                             {"reports", reports}});
  }
  return all_passed ? kExitOk : kExitIdentityFailure;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> grid(const Settings& s, bool needs_y) {
  if (s.x.empty()) throw ConfigError("--x is required for moment runs");
  for (auto x : s.x) {
    if (x < 1) throw ConfigError("x values must be >= 1");
  }
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  if (!needs_y) {
    for (auto x : s.x) out.emplace_back(x, 0);
    return out;
  }
  if (!s.y_rule.empty() && !s.y.empty()) throw ConfigError("give either --y or --y-rule, not both");
  if (!s.y_rule.empty()) {
    const YRule rule = parse_y_rule(s.y_rule);
    for (auto x : s.x) out.emplace_back(x, rule(x));
    return out;
  }
  if (s.y.empty()) throw ConfigError("--y or --y-rule is required for first/second moments");
  for (auto x : s.x) {
    for (auto y : s.y) {
      if (y < 1) throw ConfigError("y values must be >= 1");
      out.emplace_back(x, y);
    }
  }
  return out;
}

int cmd_moment(const Settings& s, std::ostream& out, std::ostream& err) {
  static const std::vector<std::string> kinds = {"first", "second", "avg-sigma", "avg-sigma-pair"};
  if (std::find(kinds.begin(), kinds.end(), s.kind) == kinds.end()) {
    throw ConfigError("--kind must be one of first, second, avg-sigma, avg-sigma-pair");
  }
  const auto fields = selected_fields(s, false);
  const ResourceLimits limits = limits_of(s);
  const double c2 = s.c2 == "1" ? 1.0 : 0.5;
  const bool moment = s.kind == "first" || s.kind == "second";
  const auto points = grid(s, moment);
  std::uint64_t max_x = 0;
  for (const auto& [x, y] : points) max_x = std::max(max_x, x);

  const TableCache cache(s.cache_dir);
  auto warn = [&err](const std::string& message) { err << "warning: " << message << '\n'; };
  Sink sink(s.out, out);
  std::unique_ptr<std::ofstream> timing;
  if (!s.out.empty()) timing = std::make_unique<std::ofstream>(s.out + ".timing.log", std::ios::trunc);
  sink.line(kCsvHeader);
  nlohmann::json rows = nlohmann::json::array();
  auto flush_json = [&] {
    if (!s.json.empty()) write_json_file(s.json, rows);
  };
  auto log_time = [&](const std::string& field, std::uint64_t x, std::uint64_t y, double ms) {
    if (timing) *timing << s.kind << ' ' << field << " x=" << x << " y=" << y << " runtime_ms=" << ms << '\n';
  };

  try {
    for (const auto& field : fields) {
      std::vector<std::pair<double, double>> fit_points;
      if (moment) {
        const auto mertens = cache.load_or_build(
            field, "mertens", max_x, [&] { return mertens_table(field, max_x, limits); }, warn);
        MomentOptions options;
        options.threads = s.threads;
        options.c2 = c2;
        options.limits = limits;
        options.mertens = &mertens;
        for (const auto& [x, y] : points) {
          const MomentResult result = s.kind == "first" ? first_moment(field, x, y, options)
                                                        : second_moment(field, x, y, options);
          sink.line(csv_line(to_row(result, s.seed, s.record_runtime)));
          rows.push_back(to_json(result));
          log_time(result.field, x, y, result.runtime_ms);
          fit_points.emplace_back(result.error_scale, result.residual);
        }
      } else {
        CoefficientTable table;
        const ZParam z = z_value(s.z.value_or(std::nan("")));
        if (s.kind == "avg-sigma") {
          if (!s.z) throw ConfigError("--z is required for avg-sigma");
          table = cache.load_or_build(field, "divisor_z=" + z.text(), max_x,
                                      [&] { return divisor_coeff_table(field, max_x, z, limits); },
                                      warn);
        } else {
          if (!s.z1 || !s.z2) throw ConfigError("--z1 and --z2 are required for avg-sigma-pair");
          const ZParam a = z_value(*s.z1);
          const ZParam b = z_value(*s.z2);
          table = cache.load_or_build(
              field, "pair_z1=" + a.text() + "_z2=" + b.text(), max_x,
              [&] { return pair_coeff_table(field, max_x, a, b, limits); }, warn);
        }
        for (const auto& [x, y] : points) {
          const AverageResult result =
              s.kind == "avg-sigma" ? avg_sigma(table, x, z)
                                    : avg_sigma_pair(table, x, z_value(*s.z1), z_value(*s.z2));
          sink.line(csv_line(to_row(result, s.seed, s.record_runtime)));
          rows.push_back(to_json(result));
          log_time(result.field, x, 0, result.runtime_ms);
          fit_points.emplace_back(result.error_scale, result.residual);
        }
      }
      if (fit_points.size() >= 3) {
        try {
          const FitResult fit = fit_error_exponent(fit_points);
          const ReportRow row = fit_row(field.descriptor(), s.kind, fit, s.seed);
          sink.line(csv_line(row));
          rows.push_back(to_json(row));
          if (fit.dropped > 0) warn("fit dropped " + std::to_string(fit.dropped) + " zero residuals");
        } catch (const DomainError& e) {
          warn(std::string("no fit row: ") + e.what());
        }
      }
    }
  } catch (...) {
    flush_json();
    throw;
  }
  flush_json();
  return kExitOk;
}

int cmd_cache(const Settings& s, const std::string& action, std::ostream& out,
              std::ostream& err) {
  const TableCache cache(s.cache_dir);
  if (action == "build") {
    const ResourceLimits limits = limits_of(s);
    const std::uint64_t n = s.n;
    if (n < 1) throw ConfigError("--n must be >= 1");
    auto warn = [&err](const std::string& message) { err << "warning: " << message << '\n'; };
    for (const auto& field : selected_fields(s, false)) {
      std::vector<std::pair<std::string, std::function<CoefficientTable()>>> builders = {
          {"ideal_count", [&] { return ideal_count_table(field, n, limits); }},
          {"mertens", [&] { return mertens_table(field, n, limits); }},
      };
      std::vector<double> zs = {0.0, 1.0, 2.0};
      if (s.z) zs.push_back(*s.z);
      for (double zv : zs) {
        const ZParam z = z_value(zv);
        builders.emplace_back("divisor_z=" + z.text(),
                              [&, z] { return divisor_coeff_table(field, n, z, limits); });
      }
      for (const auto& [tag, build] : builders) {
        cache.load_or_build(field, tag, n, build, warn);
        out << "built " << cache.path_for(field, tag, n).string() << '\n';
      }
    }
    return kExitOk;
  }
  if (action == "validate") {
    std::optional<NumberField> field;
    if (!s.fields.empty()) field = NumberField::parse(s.fields.front());
    bool ok = true;
    for (const auto& check : cache.validate(field)) {
      out << (check.ok ? "OK   " : "BAD  ") << check.path.string() << " " << check.message << '\n';
      ok = ok && check.ok;
    }
    return ok ? kExitOk : kExitIdentityFailure;
  }
  std::optional<NumberField> field;
  if (!s.fields.empty()) field = NumberField::parse(s.fields.front());
  std::optional<std::string> tag;
  if (!s.tag.empty()) tag = s.tag;
  out << "removed " << cache.purge(field, tag) << " file(s)\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ramanujan sums and divisor moments over number fields", "ideal-moments"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file; flags win");
  Settings s;

  app.add_option("--field", s.fields, "Q, Q(sqrt{d}) or Q(zeta{m}); repeatable")->delimiter(';');
  app.add_option("--x", s.x, "x values (comma separated)")->delimiter(',');
  app.add_option("--y", s.y, "y values (comma separated), crossed with x")->delimiter(',');
  app.add_option("--y-rule", s.y_rule, "y as a function of x, e.g. y=x^3");
  app.add_option("--z", s.z, "z for avg-sigma");
  app.add_option("--z1", s.z1, "z1 for avg-sigma-pair");
  app.add_option("--z2", s.z2, "z2 for avg-sigma-pair");
  app.add_option("--kind", s.kind, "first, second, avg-sigma or avg-sigma-pair");
  app.add_option("--c2", s.c2, "yx^2 coefficient convention")
      ->check(CLI::IsMember({"1", "0.5"}));
  app.add_option("--cache-dir", s.cache_dir, "table cache directory")
      ->envname("IDEAL_MOMENTS_CACHE");
  app.add_option("--out", s.out, "output file (CSV for moment, text for verify)");
  app.add_option("--json", s.json, "JSON mirror of the output");
  app.add_option("--seed", s.seed, "seed for sampled checks");
  app.add_option("--max-n", s.max_n, "largest coefficient table");
  app.add_option("--max-ideals", s.max_ideals, "largest ideal enumeration");
  app.add_option("--n", s.n, "table bound for verify and cache build");
  app.add_option("--threads", s.threads, "worker threads for moment sums")
      ->check(CLI::Range(1u, 256u));
  app.add_option("--tag", s.tag, "table tag filter for cache purge");
  app.add_flag("--selftest-corrupt", s.corrupt, "flip one table entry before verifying");
  app.add_flag("--record-runtime", s.record_runtime, "fill the runtime_ms CSV column");
  app.fallthrough();

  auto* constants_cmd = app.add_subcommand("constants", "dump rho, zeta_K(0), zeta_K(2) as JSON");
  auto* verify_cmd = app.add_subcommand("verify", "run the exact identity suites");
  auto* moment_cmd = app.add_subcommand("moment", "moment and divisor-average experiments");
  auto* cache_cmd = app.add_subcommand("cache", "build, validate or purge cached tables");
  cache_cmd->require_subcommand(1);
  auto* cache_build = cache_cmd->add_subcommand("build", "build tables up to --n");
  auto* cache_validate = cache_cmd->add_subcommand("validate", "check cache checksums");
  auto* cache_purge = cache_cmd->add_subcommand("purge", "remove cached tables");
  cache_cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (constants_cmd->parsed()) return cmd_constants(s, out);
    if (verify_cmd->parsed()) return cmd_verify(s, out, err);
    if (moment_cmd->parsed()) return cmd_moment(s, out, err);
    if (cache_build->parsed()) return cmd_cache(s, "build", out, err);
    if (cache_validate->parsed()) return cmd_cache(s, "validate", out, err);
    if (cache_purge->parsed()) return cmd_cache(s, "purge", out, err);
  } catch (const ResourceLimitError& e) {
    err << "resource cap: " << e.what() << '\n';
    return kExitResourceCap;
  } catch (const OverflowError& e) {
    err << "resource cap: " << e.what() << '\n';
    return kExitResourceCap;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const FieldError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::domain_error& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const CacheError& e) {
    err << "cache error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "filesystem error: " << e.what() << '\n';
    return kExitConfigError;
  }
  return kExitConfigError;
}

}  // namespace ideal_moments
