#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace rotcalc {

// Every domain error carries a stable machine-readable name. The CLI prints
// failures as "ERROR:<name>: <message>" and exits with status 2.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string name, const std::string& message)
      : std::runtime_error(message), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define ROTCALC_ERROR_TYPE(NAME)                       \
  class NAME : public DomainError {                    \
   public:                                             \
    explicit NAME(const std::string& message)          \
        : DomainError(#NAME, message) {}               \
  };

ROTCALC_ERROR_TYPE(NonPositive)
ROTCALC_ERROR_TYPE(NotInRing)
ROTCALC_ERROR_TYPE(InvalidGroup)
ROTCALC_ERROR_TYPE(NotMonotone)
ROTCALC_ERROR_TYPE(Discontinuous)
ROTCALC_ERROR_TYPE(EmptyInput)
ROTCALC_ERROR_TYPE(MismatchedCircumference)
ROTCALC_ERROR_TYPE(EffortExceeded)
ROTCALC_ERROR_TYPE(UnsupportedGroup)
ROTCALC_ERROR_TYPE(NotAMember)
ROTCALC_ERROR_TYPE(CongruenceViolation)
ROTCALC_ERROR_TYPE(ConstructionFailed)
ROTCALC_ERROR_TYPE(WindowTooLarge)
ROTCALC_ERROR_TYPE(SamplesTooCoarse)
ROTCALC_ERROR_TYPE(PartitionMismatch)
ROTCALC_ERROR_TYPE(NotAConjugacy)
ROTCALC_ERROR_TYPE(UnboundName)
ROTCALC_ERROR_TYPE(ParseError)
ROTCALC_ERROR_TYPE(InvalidMap)
ROTCALC_ERROR_TYPE(IoError)

#undef ROTCALC_ERROR_TYPE

// Parse failure with a 1-based byte offset into the source text.
class SyntaxError : public DomainError {
 public:
  SyntaxError(const std::string& message, std::size_t offset)
      : DomainError("SyntaxError",
                    message + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace rotcalc
