#ifndef LPA_ERRORS_HPP
#define LPA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lpa {

/// Invalid user input: parse failures, unknown ids, malformed structures.
/// The CLI maps this to exit code 1.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A configured resource guard was exceeded (vertex-count caps on the
/// exponential enumerations, congruence bounds smaller than their inputs).
/// The CLI maps this to exit code 2.
class GuardError : public std::runtime_error {
 public:
  explicit GuardError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace lpa

#endif  // LPA_ERRORS_HPP
