#include "ideal_moments/cache.hpp"

#include <boost/crc.hpp>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "ideal_moments/errors.hpp"

namespace ideal_moments {

namespace {

constexpr std::string_view kMagic = "#ideal-moments-cache v1";
constexpr std::string_view kCrcPrefix = "#crc=";

std::string sanitize(std::string_view text) {
  std::string out;
  for (char c : text) {
    const bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                      c == '-' || c == '.' || c == '=';
    out.push_back(keep ? c : '_');
  }
  return out;
}

std::string format_real(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string header_value(std::string_view header, std::string_view key) {
  const std::string needle = " " + std::string(key) + "=";
  const auto pos = header.find(needle);
  if (pos == std::string_view::npos) throw CacheError("cache header lacks " + std::string(key));
  const auto begin = pos + needle.size();
  const auto end = header.find(' ', begin);
  return std::string(header.substr(begin, end == std::string_view::npos ? end : end - begin));
}

}  // namespace

std::string crc64_hex(std::string_view bytes) {
  boost::crc_optimal<64, 0x42F0E1EBA9EA3693ULL, 0xFFFFFFFFFFFFFFFFULL, 0xFFFFFFFFFFFFFFFFULL,
                     true, true>
      crc;
  crc.process_bytes(bytes.data(), bytes.size());
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(crc.checksum()));
  return buffer;
}

std::string serialize_table(const CoefficientTable& table) {
  std::string body;
  body += kMagic;
  body += " field=" + table.field.descriptor() + " table=" + table.tag +
          " N=" + std::to_string(table.bound) + " values=" + (table.exact() ? "exact" : "real") +
          "\n";
  for (std::uint64_t n = 1; n <= table.bound; ++n) {
    body += std::to_string(n);
    body += ',';
    body += table.exact() ? to_string(table.exact_values()[n]) : format_real(table.real_values()[n]);
    body += '\n';
  }
  return body + std::string(kCrcPrefix) + crc64_hex(body) + "\n";
}

CoefficientTable parse_table(std::string_view text) {
  const auto crc_pos = text.rfind(kCrcPrefix);
  if (crc_pos == std::string_view::npos || (crc_pos > 0 && text[crc_pos - 1] != '\n')) {
    throw CacheError("cache file has no checksum line");
  }
  const std::string_view body = text.substr(0, crc_pos);
  std::string_view stored = text.substr(crc_pos + kCrcPrefix.size());
  while (!stored.empty() && (stored.back() == '\n' || stored.back() == '\r')) stored.remove_suffix(1);
  const std::string actual = crc64_hex(body);
  if (stored != actual) {
    throw CacheError("checksum mismatch: stored " + std::string(stored) + ", computed " + actual);
  }
  const auto header_end = body.find('\n');
  if (header_end == std::string_view::npos || body.substr(0, kMagic.size()) != kMagic) {
    throw CacheError("cache file has no valid header");
  }
  const std::string_view header = body.substr(0, header_end);
  CoefficientTable table;
  table.field = NumberField::parse(header_value(header, "field"));
  table.tag = header_value(header, "table");
  table.bound = std::stoull(header_value(header, "N"));
  const bool exact = header_value(header, "values") == "exact";
  std::vector<Int128> exact_values;
  std::vector<double> real_values;
  if (exact) {
    exact_values.assign(table.bound + 1, 0);
  } else {
    real_values.assign(table.bound + 1, 0.0);
  }
  std::uint64_t expected = 1;
  std::size_t pos = header_end + 1;
  while (pos < body.size()) {
    auto end = body.find('\n', pos);
    if (end == std::string_view::npos) end = body.size();
    const std::string_view line = body.substr(pos, end - pos);
    pos = end + 1;
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) throw CacheError("malformed cache line");
    std::uint64_t n = 0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + comma, n);
    if (ec != std::errc() || n != expected || n > table.bound) {
      throw CacheError("cache rows out of order at n=" + std::to_string(expected));
    }
    const std::string_view value = line.substr(comma + 1);
    if (exact) {
      exact_values[n] = parse_int128(value);
    } else {
      real_values[n] = std::stod(std::string(value));
    }
    ++expected;
  }
  if (expected != table.bound + 1) throw CacheError("cache file is truncated");
  if (exact) {
    table.values = std::move(exact_values);
  } else {
    table.values = std::move(real_values);
  }
  return table;
}

TableCache::TableCache(std::filesystem::path directory) : directory_(std::move(directory)) {}

std::filesystem::path TableCache::path_for(const NumberField& field, std::string_view tag,
                                           std::uint64_t bound) const {
  return directory_ / (sanitize(field.descriptor()) + "__" + sanitize(tag) + "__N" +
                       std::to_string(bound) + ".csv");
}

void TableCache::store(const CoefficientTable& table) const {
  std::filesystem::create_directories(directory_);
  const auto path = path_for(table.field, table.tag, table.bound);
  const auto temp = path.string() + ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot write " + temp);
    out << serialize_table(table);
    if (!out) throw CacheError("write failed for " + temp);
  }
  std::filesystem::rename(temp, path);
}

std::optional<CoefficientTable> TableCache::load(const NumberField& field, std::string_view tag,
                                                 std::uint64_t bound) const {
  const auto path = path_for(field, tag, bound);
  if (!std::filesystem::exists(path)) return std::nullopt;
  CoefficientTable table = parse_table(read_file(path));
  if (!(table.field == field) || table.tag != tag || table.bound != bound) {
    throw CacheError("cache file " + path.string() + " describes a different table");
  }
  return table;
}

CoefficientTable TableCache::load_or_build(
    const NumberField& field, std::string_view tag, std::uint64_t bound,
    const std::function<CoefficientTable()>& build,
    const std::function<void(const std::string&)>& warn) const {
  try {
    if (auto table = load(field, tag, bound)) return std::move(*table);
  } catch (const CacheError& e) {
    if (warn) warn("rebuilding " + path_for(field, tag, bound).string() + ": " + e.what());
  } catch (const std::exception& e) {
    if (warn) warn("rebuilding " + path_for(field, tag, bound).string() + ": " + e.what());
  }
  CoefficientTable table = build();
  store(table);
  return table;
}

std::vector<TableCache::Check> TableCache::validate(const std::optional<NumberField>& field) const {
  std::vector<Check> out;
  if (!std::filesystem::exists(directory_)) return out;
  std::vector<std::filesystem::path> files;
  const std::string prefix = field ? sanitize(field->descriptor()) + "__" : "";
  for (const auto& entry : std::filesystem::directory_iterator(directory_)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".csv") continue;
    if (!prefix.empty() && entry.path().filename().string().rfind(prefix, 0) != 0) continue;
    files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& path : files) {
    Check check{path, false, ""};
    try {
      const CoefficientTable table = parse_table(read_file(path));
      check.ok = true;
      check.message = table.tag + " N=" + std::to_string(table.bound);
    } catch (const std::exception& e) {
      check.message = e.what();
    }
    out.push_back(std::move(check));
  }
  return out;
}

std::size_t TableCache::purge(const std::optional<NumberField>& field,
                              const std::optional<std::string>& tag) const {
  if (!std::filesystem::exists(directory_)) return 0;
  const std::string prefix = field ? sanitize(field->descriptor()) + "__" : "";
  const std::string tag_part = tag ? "__" + sanitize(*tag) + "__" : "";
  std::vector<std::filesystem::path> doomed;
  for (const auto& entry : std::filesystem::directory_iterator(directory_)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".csv") continue;
    const std::string name = entry.path().filename().string();
    if (!prefix.empty() && name.rfind(prefix, 0) != 0) continue;
    if (!tag_part.empty() && name.find(tag_part) == std::string::npos) continue;
    doomed.push_back(entry.path());
  }
  for (const auto& path : doomed) std::filesystem::remove(path);
  return doomed.size();
}

}  // namespace ideal_moments
