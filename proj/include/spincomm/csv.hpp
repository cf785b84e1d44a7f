#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace spincomm {

// Writes via a sibling temporary file and a rename, so readers never see a
// partial file. Throws IoError.
void write_file_atomically(const std::filesystem::path& path, const std::string& content);

// Comment lines "# key=value" followed by a header row and numeric rows.
struct CsvTable {
  std::map<std::string, std::string> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  // Index of a column by name; throws InvalidArgument if absent.
  std::size_t column(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

}  // namespace spincomm
