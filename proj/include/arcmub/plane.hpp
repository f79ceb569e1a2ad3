#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "arcmub/galois.hpp"

namespace arcmub::plane {

using PointId = std::uint32_t;
using LineId = std::uint32_t;
inline constexpr std::uint32_t kNone = 0xFFFFFFFFu;

/// Homogeneous coordinates, canonical when the first nonzero entry is 1.
using Coords = std::array<galois::Elem, 3>;

/// Scales c so its first nonzero coordinate is 1; throws InvalidArgument for (0,0,0).
Coords canonicalize(const galois::Field& field, Coords c);

struct Desarguesian {
  galois::Field field;
};
struct QuasifieldKind {
  std::string tag;
};
struct Imported {};
using PlaneKind = std::variant<Imported, Desarguesian, QuasifieldKind>;

namespace detail {
struct PlaneData;
}

/// Finite incidence structure with d^2+d+1 point slots and an arbitrary
/// list of lines. Immutable; copies share storage.
class Plane {
 public:
  /// Builds incidence tables from line point sets without checking axioms.
  static Plane from_lines(std::string name, unsigned order, std::vector<std::vector<PointId>> lines,
                          PlaneKind kind, std::vector<Coords> point_coords = {});

  const std::string& name() const noexcept;
  unsigned order() const noexcept;
  std::size_t num_points() const noexcept;
  std::size_t num_lines() const noexcept;
  const PlaneKind& kind() const noexcept;
  /// Field of a Desarguesian construction, else nullptr.
  const galois::Field* field() const noexcept;

  std::span<const PointId> line(LineId l) const;
  std::span<const LineId> lines_through(PointId p) const;
  bool incident(PointId p, LineId l) const noexcept;

  /// First line containing both points, kNone if none (or a == b).
  LineId join(PointId a, PointId b) const noexcept;
  /// First common point of two lines, kNone if none (or l == m).
  PointId meet(LineId l, LineId m) const noexcept;
  bool collinear(PointId a, PointId b, PointId c) const noexcept;

  /// Bitset of the points on line l; words_per_set() 64-bit words.
  std::span<const std::uint64_t> line_bits(LineId l) const;
  std::size_t words_per_set() const noexcept;

  /// Coordinates of a Desarguesian point; throws InvalidArgument otherwise.
  const Coords& coords(PointId p) const;
  /// Index of a canonical coordinate triple, kNone if not a point of this plane.
  PointId point_at(const Coords& c) const;
  bool has_coords() const noexcept;

  /// Same order and identical line lists.
  bool same_incidence(const Plane& other) const;

 private:
  explicit Plane(std::shared_ptr<const detail::PlaneData> d) : d_(std::move(d)) {}
  std::shared_ptr<const detail::PlaneData> d_;
};

/// PG(2,q) with points and lines indexed lexicographically by canonical
/// coordinates. Line [a:b:c] holds the points with a z1 + b z2 + c z3 = 0.
Plane pg2(const galois::Field& field);

struct AxiomCheck {
  std::string name;
  bool passed = true;
  std::string witness;
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool all_passed() const noexcept;
  const AxiomCheck* find(std::string_view name) const noexcept;
};

AxiomReport verify_plane_axioms(const Plane& plane);

/// Lexicographically least set of 4 points with no 3 collinear.
std::optional<std::array<PointId, 4>> find_quadrilateral(const Plane& plane);

/// Finite structure with addition and a possibly twisted multiplication on
/// {0, ..., q-1}; 0 and 1 are the identities.
class Quasifield {
 public:
  Quasifield(std::string tag, unsigned order, std::vector<std::uint32_t> add,
             std::vector<std::uint32_t> mul);

  /// The field's own multiplication.
  static Quasifield from_field(const galois::Field& field, std::string tag = "");

  const std::string& tag() const noexcept { return tag_; }
  unsigned order() const noexcept { return order_; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept { return add_[a * order_ + b]; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept { return mul_[a * order_ + b]; }

  /// Exhaustive scan of the quasifield axioms.
  AxiomReport verify() const;

 private:
  std::string tag_;
  unsigned order_;
  std::vector<std::uint32_t> add_, mul_;
};

/// Order-9 near-field on GF(9) = GF(3)[x]/(x^2+1): a o b = a b when b is a
/// square, a^3 b otherwise. Throws AxiomFailure if the table scan fails.
Quasifield nearfield9();

/// Translation plane over a quasifield. Affine point (x,y) has index x*q+y,
/// slope point (m) index q^2+m, and (inf) index q^2+q. Line y = x o m + b has
/// index m*q+b, vertical x = c has q^2+c, the line at infinity q^2+q.
Plane quasifield_plane(const Quasifield& q);

/// The Hall plane of order 9.
Plane hall_plane9();

// Desargues testing

enum class SearchMode { Exhaustive, Random };

struct DesarguesConfig {
  PointId center = kNone;
  std::array<PointId, 3> triangle1{};
  std::array<PointId, 3> triangle2{};
  /// Intersections A1B1^A2B2, B1C1^B2C2, C1A1^C2A2.
  std::array<PointId, 3> axis_points{};
  std::string witness;
};

struct DesarguesSearch {
  std::optional<DesarguesConfig> violation;
  std::uint64_t trials = 0;
  /// True when the full configuration space was enumerated.
  bool exhausted = false;
  /// No violation and the space was not exhausted.
  bool inconclusive() const noexcept { return !violation && !exhausted; }
};

/// Searches centrally perspective triangle pairs for a non-collinear axis.
/// Exhaustive mode walks the canonical enumeration (center, line triple,
/// ordered point pairs) for at most `budget` configurations and returns the
/// enumeration-least violation; random mode draws `budget` seeded samples.
DesarguesSearch find_desargues_violation(const Plane& plane, std::uint64_t budget, std::uint64_t seed,
                                         SearchMode mode = SearchMode::Exhaustive, unsigned workers = 1);

/// Number of configurations in the exhaustive enumeration.
std::uint64_t desargues_space_size(const Plane& plane);

/// Re-checks a violation certificate by incidence alone.
bool verify_desargues_violation(const Plane& plane, const DesarguesConfig& cfg, std::string* why = nullptr);

// Planar ternary rings

/// Coordinatization frame: origin, ideal point of the x-axis, ideal point of
/// the y-axis, unit point (1,1).
struct Frame {
  PointId origin = kNone;
  PointId x_ideal = kNone;
  PointId y_ideal = kNone;
  PointId unit = kNone;
};

/// The frame under which a built-in plane's coordinates are recovered:
/// PG(2,q) uses [0:0:1], [1:0:0], [0:1:0], [1:1:1]; quasifield planes use
/// (0,0), (0), (inf), (1,1). Other planes get the least quadrilateral.
Frame standard_frame(const Plane& plane);

class TernaryRing {
 public:
  TernaryRing(unsigned order, std::vector<std::uint32_t> table, std::vector<PointId> diagonal = {});

  unsigned order() const noexcept { return order_; }
  std::uint32_t operator()(std::uint32_t x, std::uint32_t m, std::uint32_t b) const noexcept {
    return table_[(static_cast<std::size_t>(x) * order_ + m) * order_ + b];
  }
  /// Point of the line OI carrying each label (empty for hand-built tables).
  const std::vector<PointId>& diagonal() const noexcept { return diagonal_; }
  const std::vector<std::uint32_t>& table() const noexcept { return table_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept { return (*this)(a, 1, b); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept { return (*this)(a, b, 0); }

 private:
  unsigned order_;
  std::vector<std::uint32_t> table_;
  std::vector<PointId> diagonal_;
};

/// Planar ternary ring axioms, exhaustively.
AxiomReport verify_ptr_axioms(const TernaryRing& t);

/// Labels: origin 0, unit 1, remaining points of OI (minus its ideal point)
/// 2..d-1 in index order. T(x,m,b) is the y-label of the point with x-label x
/// on the line joining (m) and (0,b).
TernaryRing extract_ternary_ring(const Plane& plane, const Frame& frame);

struct PropertyCheck {
  std::string name;
  bool holds = true;
  std::string witness;
};

struct PtrProperties {
  std::vector<PropertyCheck> checks;
  bool all_hold() const noexcept;
  bool holds(std::string_view name) const noexcept;
};

/// linear, additive/multiplicative associativity and commutativity, and both
/// distributive laws for a+b := T(a,1,b), a*b := T(a,b,0).
PtrProperties ptr_properties(const TernaryRing& t);

// Incidence files

void save_plane(const Plane& plane, std::ostream& out);
/// Parses the incidence format; axiom-checks unless `unchecked`.
Plane load_plane(std::istream& in, bool unchecked = false);
Plane load_plane_file(const std::string& path, bool unchecked = false);
void save_plane_file(const Plane& plane, const std::string& path);

}  // namespace arcmub::plane
