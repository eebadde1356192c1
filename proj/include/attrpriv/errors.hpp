#pragma once

#include <stdexcept>
#include <string>

namespace attrpriv {

// Base for all library errors. `code` is a stable machine-readable
// identifier (documented in the README error taxonomy); `what()` carries
// the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Invalid configuration: bad framework, incompatible mechanism/params,
// violated invariants. CLI exit code 1.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// File system / parse failures. CLI exit code 2.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace attrpriv
