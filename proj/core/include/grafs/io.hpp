// Copyright 2026 The GRAFS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace grafs {

std::string_view version();

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

/// Provenance stamped on every artifact.
struct ArtifactHeader {
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;

  /// "# grafs <version> config=<16 hex digits> seed=<seed>"
  [[nodiscard]] std::string comment_line() const;
  [[nodiscard]] nlohmann::json to_json() const;
};

std::string hex64(std::uint64_t x);

/// Writes to a sibling temporary and renames over `path`, so readers never
/// observe a partial file.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

/// Row-oriented CSV builder. Cells are either numbers (round-trip formatted)
/// or raw strings, which must not contain commas, quotes or newlines.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  class Row {
   public:
    Row& operator<<(double x);
    Row& operator<<(std::int64_t x);
    Row& operator<<(int x) { return *this << static_cast<std::int64_t>(x); }
    Row& operator<<(std::uint64_t x);
    Row& operator<<(std::string_view s);
    Row& operator<<(const char* s) { return *this << std::string_view(s); }

   private:
    friend class CsvTable;
    std::vector<std::string> cells_;
  };

  Row& add_row();
  [[nodiscard]] std::size_t num_rows() const { return rows_.size(); }
  [[nodiscard]] const std::vector<std::string>& columns() const {
    return columns_;
  }

  /// Column header plus rows, no provenance line.
  [[nodiscard]] std::string body() const;
  /// Provenance comment line followed by body().
  [[nodiscard]] std::string render(const ArtifactHeader& header) const;

 private:
  std::vector<std::string> columns_;
  std::vector<Row> rows_;
};

/// Strips leading '#' comment lines, leaving the part that must be
/// reproducible bit for bit.
std::string csv_body(std::string_view text);

void write_csv(const std::filesystem::path& path, const CsvTable& table,
               const ArtifactHeader& header);

/// Adds {"meta": {...}} and writes pretty-printed JSON.
void write_json(const std::filesystem::path& path, nlohmann::json doc,
                const ArtifactHeader& header);

}  // namespace grafs
