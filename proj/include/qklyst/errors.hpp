#pragma once

#include <stdexcept>
#include <string>

namespace qklyst {

/// Inputs left the model's physical validity domain (e.g. relativistic beam,
/// photon energy exceeding electron kinetic energy).
class PhysicalValidityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A derived model quantity fell outside its admissible range. Carries the
/// raw out-of-range value so callers can report it instead of clamping.
class ModelRangeError : public std::runtime_error {
 public:
  ModelRangeError(const std::string& what, double raw_value)
      : std::runtime_error(what), raw_value_(raw_value) {}

  double raw_value() const noexcept { return raw_value_; }

 private:
  double raw_value_;
};

}  // namespace qklyst
