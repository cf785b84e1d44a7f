#include "spincomm/csv.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <system_error>

#include "spincomm/errors.hpp"

namespace spincomm {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void write_file_atomically(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw IoError("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at " + path.string());
  }
}

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw InvalidArgument("CSV has no column '" + name + "'");
  return static_cast<std::size_t>(it - columns.begin());
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  CsvTable table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto body = trim(line.substr(1));
      const auto eq = body.find('=');
      if (eq != std::string::npos) table.meta[trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    if (table.columns.empty()) {
      while (std::getline(ss, cell, ',')) table.columns.push_back(trim(cell));
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw InvalidArgument("non-numeric CSV cell '" + cell + "' in " + path.string());
      }
    }
    if (row.size() != table.columns.size())
      throw InvalidArgument("CSV row width does not match header in " + path.string());
    table.rows.push_back(std::move(row));
  }
  if (table.columns.empty()) throw InvalidArgument("CSV " + path.string() + " has no header row");
  return table;
}

}  // namespace spincomm
