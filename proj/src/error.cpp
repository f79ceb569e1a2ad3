#include "arcmub/error.hpp"

namespace arcmub {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::WrongCharacteristic: return "WrongCharacteristic";
    case Errc::OrderTooLarge: return "OrderTooLarge";
    case Errc::AxiomFailure: return "AxiomFailure";
    case Errc::NotAQuadrilateral: return "NotAQuadrilateral";
    case Errc::CoordinatizationFailure: return "CoordinatizationFailure";
    case Errc::ParseError: return "ParseError";
    case Errc::UnknownPoint: return "UnknownPoint";
    case Errc::NotInArc: return "NotInArc";
    case Errc::DuplicatePoints: return "DuplicatePoints";
    case Errc::OddOrder: return "OddOrder";
    case Errc::NotAnOval: return "NotAnOval";
    case Errc::PointNotOnConic: return "PointNotOnConic";
    case Errc::NotAHyperoval: return "NotAHyperoval";
    case Errc::EvenCharacteristic: return "EvenCharacteristic";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace arcmub
