#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arcmub {

enum class Errc {
  NotPrime,
  NotIrreducible,
  DegreeMismatch,
  DivisionByZero,
  FieldMismatch,
  WrongCharacteristic,
  OrderTooLarge,
  AxiomFailure,
  NotAQuadrilateral,
  CoordinatizationFailure,
  ParseError,
  UnknownPoint,
  NotInArc,
  DuplicatePoints,
  OddOrder,
  NotAnOval,
  PointNotOnConic,
  NotAHyperoval,
  EvenCharacteristic,
  DimensionMismatch,
  InvalidArgument,
  Internal,
};

std::string_view errc_name(Errc code) noexcept;

/// Exception carrying a stable error code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace arcmub
