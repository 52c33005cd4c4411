#pragma once

#include <stdexcept>
#include <string>

namespace sring {

enum class ErrorKind {
  invalid_group,
  group_mismatch,
  not_a_partition,
  identity_not_a_cell,
  not_inverse_closed,
  not_closed,
  not_a_subgroup,
  not_a_section,
  not_schurian,
  not_wreath,
  section_not_preserved,
  precondition_failed,
  parse_error,
  io_error,
};

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Thrown when a configured size, node or time bound would be exceeded.
// Callers turn it into an "undecided" verdict.
class ResourceLimit : public std::runtime_error {
 public:
  explicit ResourceLimit(const std::string& what) : std::runtime_error("resource bound: " + what) {}
};

}  // namespace sring
