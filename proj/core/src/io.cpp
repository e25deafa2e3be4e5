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

#include "grafs/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <system_error>

#include "grafs/errors.hpp"

namespace grafs {

std::string_view version() { return GRAFS_VERSION; }

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw NumericalError("format_double: to_chars failed");
  return {buf.data(), ptr};
}

std::string hex64(std::uint64_t x) {
  std::array<char, 17> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + 16, x, 16);
  std::string digits(buf.data(), ptr);
  return std::string(16 - digits.size(), '0') + digits;
}

std::string ArtifactHeader::comment_line() const {
  return "# grafs " + std::string(version()) + " config=" + hex64(config_hash) +
         " seed=" + std::to_string(seed);
}

nlohmann::json ArtifactHeader::to_json() const {
  return {{"tool", "grafs"},
          {"version", std::string(version())},
          {"config_hash", hex64(config_hash)},
          {"seed", seed}};
}

void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path parent = path.has_parent_path() ? path.parent_path() : ".";
  std::error_code ec;
  fs::create_directories(parent, ec);
  if (ec) {
    throw std::runtime_error("cannot create directory " + parent.string() +
                             ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename onto " + path.string() + ": " +
                             ec.message());
  }
}

CsvTable::CsvTable(std::vector<std::string> columns)
    : columns_(std::move(columns)) {
  if (columns_.empty()) throw InvalidArgument("CSV table needs columns");
}

CsvTable::Row& CsvTable::Row::operator<<(double x) {
  cells_.push_back(format_double(x));
  return *this;
}

CsvTable::Row& CsvTable::Row::operator<<(std::int64_t x) {
  cells_.push_back(std::to_string(x));
  return *this;
}

CsvTable::Row& CsvTable::Row::operator<<(std::uint64_t x) {
  cells_.push_back(std::to_string(x));
  return *this;
}

CsvTable::Row& CsvTable::Row::operator<<(std::string_view s) {
  if (s.find_first_of(",\"\n\r") != std::string_view::npos) {
    throw InvalidArgument("CSV cell contains a separator: " + std::string(s));
  }
  cells_.emplace_back(s);
  return *this;
}

CsvTable::Row& CsvTable::add_row() { return rows_.emplace_back(); }

std::string CsvTable::body() const {
  std::string out;
  for (std::size_t c = 0; c < columns_.size(); ++c) {
    if (c) out += ',';
    out += columns_[c];
  }
  out += '\n';
  for (const auto& row : rows_) {
    if (row.cells_.size() != columns_.size()) {
      throw InvalidArgument("CSV row has " + std::to_string(row.cells_.size()) +
                            " cells, expected " +
                            std::to_string(columns_.size()));
    }
    for (std::size_t c = 0; c < row.cells_.size(); ++c) {
      if (c) out += ',';
      out += row.cells_[c];
    }
    out += '\n';
  }
  return out;
}

std::string CsvTable::render(const ArtifactHeader& header) const {
  return header.comment_line() + "\n" + body();
}

std::string csv_body(std::string_view text) {
  while (!text.empty() && text.front() == '#') {
    const auto nl = text.find('\n');
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
  }
  return std::string(text);
}

void write_csv(const std::filesystem::path& path, const CsvTable& table,
               const ArtifactHeader& header) {
  write_file_atomic(path, table.render(header));
}

void write_json(const std::filesystem::path& path, nlohmann::json doc,
                const ArtifactHeader& header) {
  doc["meta"] = header.to_json();
  write_file_atomic(path, doc.dump(2) + "\n");
}

}  // namespace grafs
