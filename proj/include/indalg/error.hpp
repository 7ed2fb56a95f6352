#pragma once

#include <stdexcept>
#include <string>

namespace indalg {

  // Every error raised by the library derives from Error so callers (the CLI
  // in particular) can catch a single type.
  class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

#define INDALG_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  };

  INDALG_DEFINE_ERROR(ParseError)
  INDALG_DEFINE_ERROR(ArityError)
  INDALG_DEFINE_ERROR(WitnessExhausted)
  INDALG_DEFINE_ERROR(NotForm2)
  INDALG_DEFINE_ERROR(InvalidParams)
  INDALG_DEFINE_ERROR(TooLarge)
  INDALG_DEFINE_ERROR(NoGroupInverse)
  INDALG_DEFINE_ERROR(MixedBackends)
  INDALG_DEFINE_ERROR(PreconditionViolated)

#undef INDALG_DEFINE_ERROR

}  // namespace indalg
