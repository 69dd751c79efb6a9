#pragma once

#include <stdexcept>
#include <string>

namespace algparity {

// Base of every error thrown by the library. Callers that only care about
// "bad input" vs "everything else" can catch this one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ALGPARITY_DEFINE_ERROR(Name)            \
  class Name : public Error {                   \
   public:                                      \
    using Error::Error;                         \
  }

ALGPARITY_DEFINE_ERROR(DimensionError);
ALGPARITY_DEFINE_ERROR(ContainmentError);
ALGPARITY_DEFINE_ERROR(InvalidInstance);
ALGPARITY_DEFINE_ERROR(IndexOutOfRange);
ALGPARITY_DEFINE_ERROR(TooLarge);
ALGPARITY_DEFINE_ERROR(NotAnIsogeny);
ALGPARITY_DEFINE_ERROR(NotEquivariant);
ALGPARITY_DEFINE_ERROR(DegeneratePairing);
ALGPARITY_DEFINE_ERROR(AdjointMismatch);
ALGPARITY_DEFINE_ERROR(SearchExhausted);
ALGPARITY_DEFINE_ERROR(ActionMismatch);
ALGPARITY_DEFINE_ERROR(DegenerateRestriction);
ALGPARITY_DEFINE_ERROR(NotSelfDual);
ALGPARITY_DEFINE_ERROR(RetryBudgetExhausted);
ALGPARITY_DEFINE_ERROR(ParseError);

#undef ALGPARITY_DEFINE_ERROR

}  // namespace algparity
