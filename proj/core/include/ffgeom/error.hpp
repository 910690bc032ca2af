#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ffgeom {

/// Base for every error the toolkit raises on bad input or exhausted budgets.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero in prime field") {}
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// A request whose work or memory would exceed a configured cap. The message
/// always carries the required budget so callers can raise the cap knowingly.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::uint64_t required, std::uint64_t cap)
      : Error(what + ": requires " + std::to_string(required) + " but cap is " +
              std::to_string(cap)),
        required_(required),
        cap_(cap) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t required_;
  std::uint64_t cap_;
};

}  // namespace ffgeom
