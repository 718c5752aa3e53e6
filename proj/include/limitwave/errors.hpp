#pragma once

#include <stdexcept>
#include <string>

namespace limitwave {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LIMITWAVE_DEFINE_ERROR(Name)          \
  class Name : public Error {                 \
   public:                                    \
    using Error::Error;                       \
  }

LIMITWAVE_DEFINE_ERROR(DimensionMismatch);
LIMITWAVE_DEFINE_ERROR(SingularMatrix);
LIMITWAVE_DEFINE_ERROR(NotExpansive);
LIMITWAVE_DEFINE_ERROR(DualityFailure);
LIMITWAVE_DEFINE_ERROR(NotUnitVector);
LIMITWAVE_DEFINE_ERROR(NotOrthonormal);
LIMITWAVE_DEFINE_ERROR(RepresentationMismatch);
LIMITWAVE_DEFINE_ERROR(InternalError);
LIMITWAVE_DEFINE_ERROR(LevelTooLow);
LIMITWAVE_DEFINE_ERROR(ContextMismatch);
LIMITWAVE_DEFINE_ERROR(SupportOverflow);
LIMITWAVE_DEFINE_ERROR(ParameterOutOfRange);
LIMITWAVE_DEFINE_ERROR(BoxTooSmall);
LIMITWAVE_DEFINE_ERROR(Diverged);
LIMITWAVE_DEFINE_ERROR(InvalidFilter);

#undef LIMITWAVE_DEFINE_ERROR

}  // namespace limitwave
