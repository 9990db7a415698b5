#include "qcorr/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>
#include <vector>

namespace qcorr {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_field(std::string_view field, const std::string& path, long line) {
  field = trim(field);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    throw CsvError(path + ": line " + std::to_string(line) + ": cannot parse number '" +
                   std::string(field) + "'");
  if (!std::isfinite(value))
    throw CsvError(path + ": line " + std::to_string(line) + ": non-finite value");
  return value;
}

bool parses_as_pair(const std::string& line) {
  const auto comma = line.find(',');
  if (comma == std::string::npos) return false;
  const auto field_ok = [](std::string_view f) {
    f = trim(f);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    return ec == std::errc{} && ptr == f.data() + f.size();
  };
  const std::string_view rest = std::string_view(line).substr(comma + 1);
  return rest.find(',') == std::string_view::npos &&
         field_ok(std::string_view(line).substr(0, comma)) && field_ok(rest);
}

PairedSample read_paired_csv_impl(const std::string& path, bool has_header, bool auto_header) {
  std::ifstream in(path);
  if (!in) throw CsvError(path + ": cannot open file");

  std::vector<double> xs, ys;
  std::string line;
  long line_no = 0;
  bool at_first_row = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    if (at_first_row) {
      at_first_row = false;
      if (auto_header ? !parses_as_pair(line) : has_header) continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw CsvError(path + ": line " + std::to_string(line_no) + ": expected two fields");
    const std::string_view rest = std::string_view(line).substr(comma + 1);
    if (rest.find(',') != std::string_view::npos)
      throw CsvError(path + ": line " + std::to_string(line_no) + ": expected two fields");
    if (trim(rest).empty())
      throw CsvError(path + ": line " + std::to_string(line_no) + ": missing field");
    xs.push_back(parse_field(std::string_view(line).substr(0, comma), path, line_no));
    ys.push_back(parse_field(rest, path, line_no));
  }
  if (xs.size() < 2) throw CsvError(path + ": need at least 2 data rows");

  return PairedSample(Eigen::Map<const Eigen::ArrayXd>(xs.data(), static_cast<Eigen::Index>(xs.size())),
                      Eigen::Map<const Eigen::ArrayXd>(ys.data(), static_cast<Eigen::Index>(ys.size())));
}

}  // namespace

PairedSample read_paired_csv(const std::string& path, bool has_header) {
  return read_paired_csv_impl(path, has_header, false);
}

PairedSample read_paired_csv_auto(const std::string& path) {
  return read_paired_csv_impl(path, false, true);
}

void write_paired_csv(const std::string& path, const PairedSample& sample, bool with_header) {
  std::ofstream out(path);
  if (!out) throw CsvError(path + ": cannot open file for writing");
  if (with_header) out << "x,y\n";
  char buf[64];
  for (Eigen::Index i = 0; i < sample.n(); ++i) {
    auto [px, ecx] = std::to_chars(buf, buf + sizeof(buf), sample.xs[i]);
    out.write(buf, px - buf);
    out.put(',');
    auto [py, ecy] = std::to_chars(buf, buf + sizeof(buf), sample.ys[i]);
    out.write(buf, py - buf);
    out.put('\n');
  }
  if (!out) throw CsvError(path + ": write failed");
}

}  // namespace qcorr
