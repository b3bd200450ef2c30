#include "csv.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>


namespace rydw::cli {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::pair<std::string, std::string>>& meta,
                     const std::vector<std::string>& columns)
    : path_(path), width_(columns.size()) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_) throw std::runtime_error("cannot write '" + path + "'");
  out_ << "# format: " << kCsvFormat << '\n';
  for (const auto& [key, value] : meta) out_ << "# " << key << ": " << value << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n' << std::flush;
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != width_) throw std::logic_error("csv row width does not match header");
  for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << format_number(values[i]);
  out_ << '\n' << std::flush;
}

void CsvWriter::comment(const std::string& key, const std::string& value) {
  out_ << "# " << key << ": " << value << '\n' << std::flush;
}

}  // namespace rydw::cli
