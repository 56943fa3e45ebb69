#pragma once

#include <stdexcept>
#include <string>

namespace montyhall {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* code() const noexcept = 0;
};

#define MONTYHALL_ERROR(Name)                                            \
  class Name : public Error {                                            \
   public:                                                               \
    using Error::Error;                                                  \
    const char* code() const noexcept override { return #Name; }         \
  }

MONTYHALL_ERROR(InvalidParameter);
MONTYHALL_ERROR(ConditioningOnNull);
MONTYHALL_ERROR(NoChoiceAvailable);
MONTYHALL_ERROR(EmptyArchive);
MONTYHALL_ERROR(PhaseViolation);
MONTYHALL_ERROR(UnknownSession);
MONTYHALL_ERROR(IllegalDoor);

#undef MONTYHALL_ERROR

}  // namespace montyhall
