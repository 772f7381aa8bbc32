#pragma once

#include <stdexcept>
#include <string>

namespace lcsfrogs {

// Every failure raised by the library. The CLI maps it to exit code 1.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed user input (bad word text, bad rational). CLI exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace lcsfrogs
