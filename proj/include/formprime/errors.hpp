#ifndef FORMPRIME_ERRORS_HPP
#define FORMPRIME_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace formprime {

/* Precondition violations: bad discriminants, nonprimitive forms where
 * primitivity is required, mismatched groups, ... (CLI exit code 2). */
class domain_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/* Work or memory beyond the configured budget (CLI exit code 3). */
class resource_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/* A quantity left the 64-bit range it was checked into. */
class overflow_error : public domain_error {
  public:
    using domain_error::domain_error;
};

} // namespace formprime

#endif
