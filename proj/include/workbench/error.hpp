#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace workbench {

// Malformed or invalid user input. `path` locates the offending field
// (a JSON pointer-like string for documents, a unit or arrow id otherwise).
class InputError : public std::runtime_error {
 public:
  InputError(std::string path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message),
        path_(std::move(path)),
        message_(message) {}

  const std::string& path() const noexcept { return path_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string path_;
  std::string message_;
};

// An operation was applied outside its domain: functions on different
// groupoids, an unknown unit, a precondition such as fiber support.
class DomainError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace workbench
