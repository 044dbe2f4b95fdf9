#include "donorspin/csv.hpp"

#include <cstdio>
#include <ostream>

namespace donorspin {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvWriter::header(const std::vector<std::string>& names) {
  bool first = true;
  for (const auto& n : names) {
    if (!first) os_ << ',';
    os_ << n;
    first = false;
  }
  os_ << '\n';
}

void CsvWriter::begin_row() { first_in_row_ = true; }

void CsvWriter::field(double v) { field(format_double(v)); }

void CsvWriter::field(int v) { field(std::to_string(v)); }

void CsvWriter::field(const std::string& v) {
  if (!first_in_row_) os_ << ',';
  os_ << v;
  first_in_row_ = false;
}

void CsvWriter::end_row() { os_ << '\n'; }

}  // namespace donorspin
