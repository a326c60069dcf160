#pragma once

#include <stdexcept>
#include <string>

namespace polyvol {

enum class ErrorKind {
  Domain,          // input outside the admissible set
  OutOfRange,      // size or degree outside the supported range
  Unsupported,     // request not defined for this input (e.g. series for triangles)
  ToleranceTooSmall,
  NotExact,        // exact mode requested for inputs without a rational form
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace polyvol
