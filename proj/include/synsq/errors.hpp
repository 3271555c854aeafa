#ifndef SYNSQ_ERRORS_HPP
#define SYNSQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace synsq {

// Bad parameter values (CLI exit code 1).
class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Bad input data or file format (CLI exit code 2).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Violated internal invariant (CLI exit code 3).
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace synsq

#endif  // SYNSQ_ERRORS_HPP
