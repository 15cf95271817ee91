#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace moddiv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A parameter set or an argument violates a precondition.
class ParamError : public Error {
public:
  explicit ParamError(const std::string& what) : Error(what), violations_{what} {}
  explicit ParamError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}

  /// One entry per violated condition, in the order they were checked.
  const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& item : items) {
      if (!out.empty()) out += '\n';
      out += item;
    }
    return out;
  }

  std::vector<std::string> violations_;
};

/// Malformed text input (key files, ciphertexts, DIMACS, ANF).
class FormatError : public Error {
public:
  using Error::Error;
};

/// A value lies outside the range its type allows (e.g. a share >= 2^(p-q)).
class RangeError : public Error {
public:
  using Error::Error;
};

/// An enumeration or expansion size limit was exceeded.
class GuardError : public Error {
public:
  using Error::Error;
};

}  // namespace moddiv
