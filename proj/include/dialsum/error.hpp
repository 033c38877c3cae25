#pragma once

#include <stdexcept>
#include <string>

namespace dialsum {

enum class ErrorKind { Validation, Io };

// Every failure surfaced by the library. Validation errors map to CLI exit
// status 1, I/O errors to 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error validation_error(const std::string& what) {
  return Error(ErrorKind::Validation, what);
}

inline Error io_error(const std::string& what) {
  return Error(ErrorKind::Io, what);
}

}  // namespace dialsum
