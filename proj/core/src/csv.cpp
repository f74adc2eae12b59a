#include "nrq/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>

#include "nrq/error.hpp"

namespace nrq {

std::string format_number(double value) {
  if (!std::isfinite(value)) throw Error(ErrorKind::IoError, "refusing to serialise a non-finite value");
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 15);
  if (ec != std::errc{}) throw Error(ErrorKind::IoError, "number formatting failed");
  return std::string(buf.data(), ptr);
}

std::string format_csv(const Table& table) {
  std::string out;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size()) {
      throw Error(ErrorKind::IoError, "row width does not match the header");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const Table& table, const std::filesystem::path& path) {
  const std::string text = format_csv(table);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!file) throw Error(ErrorKind::IoError, "write to " + path.string() + " failed");
}

}  // namespace nrq
