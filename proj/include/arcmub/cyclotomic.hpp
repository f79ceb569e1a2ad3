#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arcmub/galois.hpp"

namespace arcmub::cyclotomic {

using BigInt = boost::multiprecision::cpp_int;

/// Largest supported root order.
inline constexpr unsigned kMaxOrder = 64;

unsigned euler_phi(unsigned m);

/// Integer coefficients of the m-th cyclotomic polynomial, low-degree first.
const std::vector<long long>& cyclotomic_polynomial(unsigned m);

/// Element of Z[zeta_m] in the power basis 1, zeta, ..., zeta^{phi(m)-1},
/// always reduced modulo Phi_m.
class CycInt {
 public:
  explicit CycInt(unsigned order = 1);

  static CycInt from_int(unsigned order, const BigInt& value);
  /// zeta_m^e; the exponent is taken mod m.
  static CycInt root_of_unity(unsigned order, long long e);
  /// Sum of counts[e] * zeta_m^e over e in [0, counts.size()).
  static CycInt from_exponent_counts(unsigned order, std::span<const long long> counts);
  /// Reduces an arbitrary-length coefficient vector in powers of zeta_m.
  static CycInt from_coeffs(unsigned order, std::span<const BigInt> coeffs);
  /// Parses `zeta m : c0 c1 ...`.
  static CycInt parse(std::string_view text);

  unsigned order() const noexcept { return order_; }
  const std::vector<BigInt>& coeffs() const noexcept { return coeffs_; }

  bool is_zero() const;
  /// True when only the constant coefficient may be nonzero.
  bool is_rational() const;

  /// Re-expresses this element in Z[zeta_L]; m must divide L.
  CycInt lift(unsigned target_order) const;

  CycInt operator+(const CycInt& b) const;
  CycInt operator-(const CycInt& b) const;
  CycInt operator*(const CycInt& b) const;
  CycInt operator-() const;
  CycInt& operator+=(const CycInt& b);
  /// Complex conjugation zeta -> zeta^{-1}.
  CycInt conj() const;

  /// a * conj(a) when that product is a rational integer, else nullopt.
  std::optional<BigInt> magnitude_sq() const;

  /// Equality after lifting to a common order.
  bool operator==(const CycInt& b) const;

  std::string serialize() const;
  /// Decimal approximation for debugging output only.
  std::string approx() const;

 private:
  CycInt(unsigned order, std::vector<BigInt> coeffs) : order_(order), coeffs_(std::move(coeffs)) {}
  unsigned order_;
  std::vector<BigInt> coeffs_;
};

/// The exponential sum of zeta_p^{Tr(m k^2 + n k)} over all k in the field.
CycInt weil_sum(const galois::Field& field, galois::Elem m, galois::Elem n);
/// Bound variant; throws FieldMismatch when the elements live in different fields.
CycInt weil_sum(const galois::FieldElement& m, const galois::FieldElement& n);

struct WeilSurvey {
  galois::Field field;
  /// magnitude_sq[m * q + n]; nullopt flags a non-rational |W|^2.
  std::vector<std::optional<BigInt>> magnitude_sq;
  /// Odd characteristic: every m != 0 entry equals q.
  bool uniform_magnitude = false;
  /// Characteristic 2: each m != 0 row has exactly one nonzero entry.
  bool single_nonzero_per_row = false;
  /// Value of that single nonzero entry when the pattern holds (q^2 expected).
  std::optional<BigInt> row_peak;
  /// Count of entries where magnitude_sq was absent.
  std::size_t alarms = 0;

  const std::optional<BigInt>& at(std::uint32_t m, std::uint32_t n) const {
    return magnitude_sq[static_cast<std::size_t>(m) * field.order() + n];
  }
};

WeilSurvey weil_survey(const galois::Field& field);

}  // namespace arcmub::cyclotomic
