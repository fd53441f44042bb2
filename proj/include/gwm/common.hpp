#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace gwm {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// A constructed object would violate one of its stated invariants.
class validation_error : public error {
 public:
  explicit validation_error(const std::string& what) : error(what) {}
};

/// An argument is outside the operation's domain.
class domain_error : public error {
 public:
  explicit domain_error(const std::string& what) : error(what) {}
};

/// A resource or complexity guard tripped (never a silent truncation).
class guard_error : public error {
 public:
  explicit guard_error(const std::string& what) : error(what) {}
};

}  // namespace gwm
