#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

namespace rydw::cli {

inline constexpr const char* kCsvFormat = "rydw-csv v1";

/// CSV file with a block of `# key: value` comment lines before the header.
/// Every row is flushed as soon as it is written so partial results survive
/// a failing run.
class CsvWriter {
public:
  CsvWriter(const std::string& path, const std::vector<std::pair<std::string, std::string>>& meta,
            const std::vector<std::string>& columns);

  void row(const std::vector<double>& values);
  void comment(const std::string& key, const std::string& value);
  const std::string& path() const { return path_; }

private:
  std::string path_;
  std::ofstream out_;
  std::size_t width_;
};

/// Shortest round-trippable text for a double ("nan" for NaN).
std::string format_number(double x);

}  // namespace rydw::cli
