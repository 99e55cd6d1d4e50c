#pragma once

#include <stdexcept>
#include <string>

namespace krein {

/// Malformed configuration or input file.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A decomposition failed or a numerical precondition does not hold.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two or more eigenvalues inside the kernel window.
class KernelAmbiguity : public NumericalError {
 public:
  KernelAmbiguity(int count, double window)
      : NumericalError("kernel ambiguity: " + std::to_string(count) +
                       " eigenvalues within +/-" + std::to_string(window) + " of zero"),
        count_(count) {}
  int count() const { return count_; }

 private:
  int count_;
};

/// Right-hand side of a pseudo-inverse has a component along the kernel.
class NotInRange : public NumericalError {
 public:
  explicit NotInRange(double overlap)
      : NumericalError("not in range: relative kernel overlap " + std::to_string(overlap)),
        overlap_(overlap) {}
  double overlap() const { return overlap_; }

 private:
  double overlap_;
};

}  // namespace krein
