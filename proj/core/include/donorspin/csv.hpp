#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace donorspin {

// 17-significant-digit, locale-independent float text ('.' decimal point),
// so repeated runs diff bit-stable.
std::string format_double(double v);

// Minimal CSV emitter: ',' separator, LF line endings, one header row.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void header(const std::vector<std::string>& names);
  void begin_row();
  void field(double v);
  void field(int v);
  void field(const std::string& v);
  void end_row();

 private:
  std::ostream& os_;
  bool first_in_row_ = true;
};

}  // namespace donorspin
