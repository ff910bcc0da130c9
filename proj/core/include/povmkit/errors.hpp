#ifndef POVMKIT_ERRORS_HPP
#define POVMKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace povmkit {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input: schema violations, axiom violations, dimension mismatches.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A numerical routine gave up: eigensolver non-convergence, simplex stall.
class SolverError : public Error {
 public:
  using Error::Error;
};

// The answer depends on the tolerance in a way the library refuses to hide:
// non-transitive proportionality chains, ambiguous isomorphism matchings,
// verdicts that contradict each other at the threshold.
class ToleranceAmbiguity : public Error {
 public:
  using Error::Error;
};

}  // namespace povmkit

#endif
