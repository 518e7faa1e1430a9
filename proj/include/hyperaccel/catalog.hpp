#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hyperaccel/hyperterm.hpp"

namespace hyperaccel {

struct CatalogEntry {
  std::string id;
  SeriesSpec series;  // series.target mirrors `target`
  std::optional<TargetConstant> target;  // absent for generated series without a known value
  Rational expected_rate;
  std::string citation;
  std::optional<std::string> note;

  friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

inline constexpr const char* kTranscriptionNote = "transcription-discrepancy";

std::vector<CatalogEntry> builtin_catalog();

// Throws ValidationError unless the series is well formed, its rate equals
// expected_rate and the citation is non-empty.
void validate_entry(const CatalogEntry& e);

// Blank-line separated records of "key = value" lines. Keys: id, z, num,
// den, poly, factor_den, prefactor, start, target, rate, cite, note.
// Parameter and coefficient lists are comma separated; polynomials are
// ascending coefficient lists in k.
std::string format_entries(const std::vector<CatalogEntry>& entries);
std::vector<CatalogEntry> parse_entries(const std::string& text);

std::vector<CatalogEntry> load(const std::filesystem::path& path);
void save(const std::vector<CatalogEntry>& entries, const std::filesystem::path& path);

const CatalogEntry* find_entry(const std::vector<CatalogEntry>& entries, const std::string& id);

enum class ListFormat { text, csv };
std::string render_list(const std::vector<CatalogEntry>& entries, ListFormat format);

}  // namespace hyperaccel
