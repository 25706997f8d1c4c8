#include "ratenet/csv.hpp"

#include <charconv>
#include <cmath>

#include "ratenet/error.hpp"

namespace ratenet {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::string& path, const std::string& command, const std::string& config_json,
                     const std::vector<std::string>& columns)
    : out_(path, std::ios::binary), path_(path), columns_(columns.size()) {
  if (!out_) throw Error(Errc::InvalidArgument, "cannot write " + path);
  out_ << "# command: " << command << '\n' << "# config: " << config_json << '\n';
  for (const auto& c : columns) field(c);
  end_row();
}

void CsvWriter::field(const std::string& s) {
  if (filled_++) out_ << ',';
  out_ << s;
}

CsvWriter& CsvWriter::operator<<(double x) {
  field(format_double(x));
  return *this;
}

CsvWriter& CsvWriter::operator<<(long long x) {
  field(std::to_string(x));
  return *this;
}

CsvWriter& CsvWriter::operator<<(const std::string& s) {
  field(s);
  return *this;
}

void CsvWriter::end_row() {
  if (filled_ != columns_) throw Error(Errc::InvalidArgument, "row width mismatch in " + path_);
  out_ << '\n';
  filled_ = 0;
  if (!out_) throw Error(Errc::InvalidArgument, "write failed for " + path_);
}

CsvHeader read_csv_header(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::InvalidArgument, "cannot read " + path);
  CsvHeader h;
  std::string line;
  const std::string cmd = "# command: ", cfg = "# config: ";
  if (!std::getline(in, line) || line.rfind(cmd, 0) != 0)
    throw Error(Errc::InvalidArgument, path + " has no '# command:' line");
  h.command = line.substr(cmd.size());
  if (!std::getline(in, line) || line.rfind(cfg, 0) != 0)
    throw Error(Errc::InvalidArgument, path + " has no '# config:' line");
  h.config_json = line.substr(cfg.size());
  return h;
}

}  // namespace ratenet
