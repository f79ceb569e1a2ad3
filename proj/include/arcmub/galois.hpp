#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace arcmub::galois {

/// Index of a field element in the canonical enumeration of its field.
///
/// The index packs the polynomial-basis coefficients as sum c_i p^i, so
/// integer order equals lexicographic order on coefficient vectors read from
/// the leading coefficient down. The prime subfield occupies indices 0..p-1.
struct Elem {
  std::uint32_t v = 0;

  constexpr auto operator<=>(const Elem&) const = default;
};

namespace detail {
struct FieldTables;
}

/// Immutable handle to GF(p^n). Copies share the same tables.
class Field {
 public:
  /// Builds GF(p^n). Without a modulus the least monic irreducible polynomial
  /// of degree n is chosen (coefficient lists are low-degree first).
  static Field make(unsigned p, unsigned n,
                    std::optional<std::vector<unsigned>> modulus = std::nullopt);

  /// Parses the `GF p n c0 c1 ... cn` description emitted by describe().
  static Field parse(std::string_view text);

  unsigned characteristic() const noexcept;
  unsigned degree() const noexcept;
  unsigned order() const noexcept;
  const std::vector<unsigned>& modulus() const noexcept;

  /// `GF p n c0 ... cn`, modulus coefficients low-degree first.
  std::string describe() const;

  Elem zero() const noexcept { return Elem{0}; }
  Elem one() const noexcept { return Elem{1}; }
  /// The residue class of x (a constant when n = 1).
  Elem x() const noexcept;
  /// The least-index element of multiplicative order q-1.
  Elem primitive() const noexcept;

  /// Element with the given canonical index; throws InvalidArgument if out of range.
  Elem element(std::uint32_t index) const;
  /// Prime-subfield element c mod p.
  Elem constant(long long c) const noexcept;
  std::vector<unsigned> coeffs(Elem a) const;
  Elem from_coeffs(std::span<const unsigned> coeffs) const;

  Elem add(Elem a, Elem b) const noexcept;
  Elem sub(Elem a, Elem b) const noexcept;
  Elem neg(Elem a) const noexcept;
  Elem mul(Elem a, Elem b) const noexcept;
  /// Throws DivisionByZero when b is zero.
  Elem div(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  /// Negative exponents invert first; 0^0 = 1.
  Elem pow(Elem a, long long e) const;

  Elem frobenius(Elem a) const noexcept;
  /// Absolute trace a + a^p + ... + a^{p^{n-1}}; always lands in the prime subfield.
  Elem trace(Elem a) const noexcept;
  /// Zero counts as a square.
  bool is_square(Elem a) const noexcept;
  /// Unique square root in characteristic 2; WrongCharacteristic otherwise.
  Elem sqrt_char2(Elem a) const;

  /// Discrete log base primitive(); a must be nonzero.
  std::uint32_t log(Elem a) const;
  Elem exp(long long e) const noexcept;

  /// Same p, n and modulus.
  bool operator==(const Field& other) const noexcept;

 private:
  explicit Field(std::shared_ptr<const detail::FieldTables> t) : t_(std::move(t)) {}
  std::shared_ptr<const detail::FieldTables> t_;
};

bool is_prime(unsigned n) noexcept;

/// Exhaustive trial division by every monic polynomial of degree <= n/2.
bool is_irreducible(unsigned p, std::span<const unsigned> monic_low_first);

/// Least monic irreducible of degree n (leading coefficient compared first).
std::vector<unsigned> least_irreducible(unsigned p, unsigned n);

/// A field element bound to its field; arithmetic checks that operands agree.
class FieldElement {
 public:
  FieldElement(Field field, Elem e) : field_(std::move(field)), e_(e) {}

  const Field& field() const noexcept { return field_; }
  Elem elem() const noexcept { return e_; }
  std::vector<unsigned> coeffs() const { return field_.coeffs(e_); }

  FieldElement operator+(const FieldElement& b) const;
  FieldElement operator-(const FieldElement& b) const;
  FieldElement operator*(const FieldElement& b) const;
  FieldElement operator/(const FieldElement& b) const;
  FieldElement operator-() const;
  FieldElement inv() const;
  FieldElement pow(long long e) const;
  FieldElement trace() const;
  FieldElement sqrt() const;
  bool is_square() const;

  bool operator==(const FieldElement& b) const;

 private:
  void check_same(const FieldElement& b) const;
  Field field_;
  Elem e_;
};

}  // namespace arcmub::galois
