#pragma once

#include <cstddef>
#include <fstream>
#include <string>
#include <vector>

namespace ratenet {

// Shortest decimal that reads back to the same double; "nan", "inf", "-inf".
std::string format_double(double x);

// CSV file whose first lines are "# command: <cmd>" and "# config: <json>".
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::string& command, const std::string& config_json,
            const std::vector<std::string>& columns);

  CsvWriter& operator<<(double x);
  CsvWriter& operator<<(long long x);
  CsvWriter& operator<<(std::size_t x) { return *this << static_cast<long long>(x); }
  CsvWriter& operator<<(int x) { return *this << static_cast<long long>(x); }
  CsvWriter& operator<<(const std::string& s);
  void end_row();

 private:
  void field(const std::string& s);

  std::ofstream out_;
  std::string path_;
  std::size_t columns_;
  std::size_t filled_ = 0;
};

struct CsvHeader {
  std::string command;
  std::string config_json;
};

// Reads the two provenance lines of a CSV written by CsvWriter.
CsvHeader read_csv_header(const std::string& path);

}  // namespace ratenet
