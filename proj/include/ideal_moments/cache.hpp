#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ideal_moments/ideals.hpp"

namespace ideal_moments {

/// CRC-64/XZ of the bytes, as 16 lowercase hex digits.
std::string crc64_hex(std::string_view bytes);

/// On-disk store of coefficient tables, one checksummed text file per (field, tag, N).
class TableCache {
 public:
  explicit TableCache(std::filesystem::path directory);

  const std::filesystem::path& directory() const { return directory_; }
  std::filesystem::path path_for(const NumberField& field, std::string_view tag,
                                 std::uint64_t bound) const;

  void store(const CoefficientTable& table) const;
  /// Nullopt when no file exists; CacheError on a malformed file or checksum mismatch.
  std::optional<CoefficientTable> load(const NumberField& field, std::string_view tag,
                                       std::uint64_t bound) const;
  /// Loads when present and intact; otherwise builds, stores and returns. A damaged file is
  /// reported through `warn` and replaced.
  CoefficientTable load_or_build(const NumberField& field, std::string_view tag,
                                 std::uint64_t bound,
                                 const std::function<CoefficientTable()>& build,
                                 const std::function<void(const std::string&)>& warn = {}) const;

  struct Check {
    std::filesystem::path path;
    bool ok = false;
    std::string message;
  };
  /// Checks every cache file, or those of one field.
  std::vector<Check> validate(const std::optional<NumberField>& field = std::nullopt) const;
  /// Removes files matching the field and tag filters; returns how many were removed.
  std::size_t purge(const std::optional<NumberField>& field = std::nullopt,
                    const std::optional<std::string>& tag = std::nullopt) const;

 private:
  std::filesystem::path directory_;
};

/// Serialized form used by the cache, including the trailing checksum line.
std::string serialize_table(const CoefficientTable& table);
CoefficientTable parse_table(std::string_view text);

}  // namespace ideal_moments
