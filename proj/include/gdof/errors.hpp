#pragma once

#include <stdexcept>
#include <string>

namespace gdof {

// Every error raised by the library derives from Error so callers (the CLI in
// particular) can map categories onto stable exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define GDOF_DEFINE_ERROR(Name)         \
  class Name : public Error {           \
   public:                              \
    using Error::Error;                 \
  }

GDOF_DEFINE_ERROR(PerfectCsitRegime);
GDOF_DEFINE_ERROR(InvalidConfig);
GDOF_DEFINE_ERROR(OutOfRange);
GDOF_DEFINE_ERROR(ParseError);
GDOF_DEFINE_ERROR(TooManyUsers);
GDOF_DEFINE_ERROR(UnsupportedExponent);
GDOF_DEFINE_ERROR(OutOfAlphabet);
GDOF_DEFINE_ERROR(AlphabetViolation);
GDOF_DEFINE_ERROR(IndexOutOfRange);
GDOF_DEFINE_ERROR(InfeasibleEnumeration);
GDOF_DEFINE_ERROR(SingularMatrix);
GDOF_DEFINE_ERROR(RejectionBudgetExceeded);
GDOF_DEFINE_ERROR(NullSpaceDeficient);
GDOF_DEFINE_ERROR(InvariantViolation);

// Numerical failures are reported separately from invariant violations.
GDOF_DEFINE_ERROR(NumericalFailure);

#undef GDOF_DEFINE_ERROR

}  // namespace gdof
