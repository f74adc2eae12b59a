#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace nrq {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// `%.15g`-style shortest form with up to 15 significant digits, '.' decimal
/// separator regardless of locale.
std::string format_number(double value);

/// Header row always present, ',' separated, '\n' line endings. Refuses
/// NaN/Inf and ragged rows (IoError).
std::string format_csv(const Table& table);

void write_csv(const Table& table, const std::filesystem::path& path);

}  // namespace nrq
