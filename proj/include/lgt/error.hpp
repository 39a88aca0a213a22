#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lgt {

enum class Errc {
  InvalidSpec,
  Undecidable,
  VariableUnknown,
  InfiniteRing,
  ContextMismatch,
  ParseError,
  OddSize,
  LinearHasNoForm,
  BadIndices,
  NotInvertible,
  DimensionMismatch,
  OrthogonalityViolated,
  NotIsotropic,
  BadCertificate,
  NotInModule,
  IndexClash,
  IndexOne,
  NotBasedAtIdentity,
  NilpotentS,
  BadLocalData,
  NotLocalRing,
  NotCongruentToIdentity,
  NotInGroup,
  InsufficientCongruence,
  NotDiagonal,
  EntryNotNilpotent,
  NotUnipotentModNil,
  FormNotPreserved,
  BadWord,
  UnknownSuite,
  TwoNotInvertible,
  TemplateNotFound,
  CheckFailed,  // an internal exact verification did not hold
};

std::string_view errc_name(Errc c);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

}  // namespace lgt
