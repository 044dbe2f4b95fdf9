#pragma once

#include <stdexcept>
#include <string>

namespace donorspin {

// Eigensolver or root-refinement failure; carries the field at which it happened.
class numeric_error : public std::runtime_error {
 public:
  numeric_error(const std::string& what, double field_tesla)
      : std::runtime_error(what), field_tesla_(field_tesla) {}
  double field_tesla() const { return field_tesla_; }

 private:
  double field_tesla_ = 0.0;
};

// A requested computation would exceed sane resource bounds (e.g. bath size).
class resource_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A transition selector that does not name a valid transition; carries a
// printable list of the valid ones at the reference field.
class unknown_transition_error : public std::runtime_error {
 public:
  unknown_transition_error(const std::string& what, std::string valid_list)
      : std::runtime_error(what), valid_list_(std::move(valid_list)) {}
  const std::string& valid_list() const { return valid_list_; }

 private:
  std::string valid_list_;
};

}  // namespace donorspin
