#ifndef BELGAMES_ERRORS_HPP
#define BELGAMES_ERRORS_HPP

#include <stdexcept>

namespace belgames {

// Malformed input: unparsable documents, broken invariants, dimension
// mismatches. CLI exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structurally valid input handed to an operation whose precondition it does
// not meet (e.g. distinct priors where a common prior is required). CLI exit
// code 2.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace belgames

#endif
