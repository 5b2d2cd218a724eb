#pragma once

#include <stdexcept>
#include <string>

namespace surfqbm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad or missing configuration; key() is the dotted path, e.g. "particle.radius".
class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

// Argument outside the domain of a formula (omega <= 0, Drude pole, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Method / surface mismatch, e.g. asking a perfect conductor for epsilon.
class ModelError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double partial, double abs_error)
      : Error(what), partial_(partial), abs_error_(abs_error) {}
  double partial_value() const noexcept { return partial_; }
  double abs_error() const noexcept { return abs_error_; }

 private:
  double partial_;
  double abs_error_;
};

// Fock basis too small for the state being evolved.
class TruncationError : public Error {
 public:
  using Error::Error;
};

}  // namespace surfqbm
