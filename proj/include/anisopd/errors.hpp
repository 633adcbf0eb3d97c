#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace anisopd {

/// Invalid engineering constants or a non positive-definite stiffness.
class ConstitutiveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed scenario input. `line` is 0 when the problem is not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& key, std::size_t line, const std::string& what)
      : std::runtime_error(format(key, line, what)), key_(key), line_(line) {}

  const std::string& key() const noexcept { return key_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& key, std::size_t line, const std::string& what) {
    std::string out;
    if (line > 0) out += "line " + std::to_string(line) + ": ";
    if (!key.empty()) out += "'" + key + "': ";
    return out + what;
  }

  std::string key_;
  std::size_t line_;
};

/// Non-finite value encountered while stepping.
class NumericalAbort : public std::runtime_error {
 public:
  NumericalAbort(long step, std::size_t particle, const std::string& what)
      : std::runtime_error("step " + std::to_string(step) + ", particle " +
                           std::to_string(particle) + ": " + what),
        step_(step),
        particle_(particle) {}

  long step() const noexcept { return step_; }
  std::size_t particle() const noexcept { return particle_; }

 private:
  long step_;
  std::size_t particle_;
};

/// Crack-opening sample cannot be taken at the requested location.
class MeasurementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Stroh eigenproblem has (near) repeated roots or a singular crack compliance.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// API called out of order, e.g. an initial condition after the first step.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace anisopd
