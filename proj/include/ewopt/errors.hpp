#pragma once

#include <stdexcept>
#include <string>

namespace ewopt {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define EWOPT_DEFINE_ERROR(Name)          \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  };

EWOPT_DEFINE_ERROR(NonHermitianInput)
EWOPT_DEFINE_ERROR(NoConvergence)
EWOPT_DEFINE_ERROR(DimensionMismatch)
EWOPT_DEFINE_ERROR(EmptyInput)
EWOPT_DEFINE_ERROR(InvalidPermutation)
EWOPT_DEFINE_ERROR(InvalidArgument)
EWOPT_DEFINE_ERROR(NotAWitness)
EWOPT_DEFINE_ERROR(WrongLoopStructure)
EWOPT_DEFINE_ERROR(OutOfCertificateRange)
EWOPT_DEFINE_ERROR(NotUnitVector)
EWOPT_DEFINE_ERROR(DegeneratePoint)
EWOPT_DEFINE_ERROR(NotAState)
EWOPT_DEFINE_ERROR(ParseError)

#undef EWOPT_DEFINE_ERROR

}  // namespace ewopt
