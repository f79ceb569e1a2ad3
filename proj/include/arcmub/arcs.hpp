#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "arcmub/galois.hpp"
#include "arcmub/plane.hpp"

namespace arcmub::arcs {

using plane::Coords;
using plane::LineId;
using plane::Plane;
using plane::PointId;

struct ArcCheck {
  bool is_arc = true;
  /// Lexicographically least collinear triple when is_arc is false.
  std::optional<std::array<PointId, 3>> witness;
};

/// Incidence test: no three of the points on a common line. Duplicates are
/// ignored (the input is a set); throws UnknownPoint for out-of-range ids.
ArcCheck is_arc(const Plane& plane, std::span<const PointId> pts);

/// The same test through 3x3 coordinate determinants; needs PG(2,q) coordinates.
ArcCheck is_arc_by_determinant(const Plane& plane, std::span<const PointId> pts);

/// det [a; b; c] over the field.
galois::Elem det3(const galois::Field& f, const Coords& a, const Coords& b, const Coords& c);

struct TangentReport {
  std::vector<LineId> tangents;
  std::size_t secants = 0;
};

/// Lines through x meeting the point set only in x, and the number of lines
/// through x meeting it twice. Throws NotInArc when x is not a member.
TangentReport tangent_lines(const Plane& plane, std::span<const PointId> arc, PointId x);

/// |pts| = d+1 and an arc. Throws Internal if a member lacks a unique tangent.
bool is_oval(const Plane& plane, std::span<const PointId> pts);

// Conics

/// sum_{i<=j} c_ij z_i z_j with coefficients ordered c11 c12 c13 c22 c23 c33,
/// scaled so the first nonzero coefficient is 1.
class Conic {
 public:
  /// Throws InvalidArgument when every coefficient is zero.
  Conic(galois::Field field, std::array<galois::Elem, 6> coeffs);

  const galois::Field& field() const noexcept { return field_; }
  const std::array<galois::Elem, 6>& coeffs() const noexcept { return c_; }

  galois::Elem eval(const Coords& z) const noexcept;
  bool contains(const Coords& z) const noexcept { return eval(z) == galois::Elem{0}; }

  /// 4 c11 c22 c33 + c12 c13 c23 - c11 c23^2 - c22 c13^2 - c33 c12^2.
  galois::Elem discriminant() const noexcept;
  /// Nonzero discriminant; valid in every characteristic.
  bool proper() const noexcept { return discriminant() != galois::Elem{0}; }

  bool operator==(const Conic& o) const noexcept { return c_ == o.c_; }

 private:
  galois::Field field_;
  std::array<galois::Elem, 6> c_;
};

/// z1 z2 - z3^2.
Conic canonical_conic_form(const galois::Field& f);

/// (1,0,0) together with (s^2, 1, s) for every s, in canonical coordinates.
std::vector<Coords> canonical_conic_coords(const galois::Field& f);

/// canonical_conic_coords as sorted point ids of a PG(2,q) plane.
std::vector<PointId> canonical_conic(const Plane& pg);

/// Sorted ids of every point of pg on the conic.
std::vector<PointId> conic_solutions(const Plane& pg, const Conic& c);

/// Solves for the conic through five distinct points. Absent when the
/// solution space is not one-dimensional or the conic is degenerate.
/// Throws DuplicatePoints for repeated points.
std::optional<Conic> fit_conic_5pts(const galois::Field& f, std::span<const Coords, 5> pts);

/// Every proper conic of PG(2,q) in coefficient order.
std::vector<Conic> enumerate_proper_conics(const galois::Field& f);

// Even order

/// Common point of the tangents of an oval. Throws NotAnOval, or OddOrder
/// when the tangents are not concurrent.
PointId nucleus(const Plane& plane, std::span<const PointId> oval);

/// (C + nucleus(C)) - x. Throws WrongCharacteristic for odd q and
/// PointNotOnConic when x is not in C.
std::vector<PointId> pointed_conic(const Plane& pg, std::span<const PointId> conic, PointId x);

/// Evaluates f (coefficients low-degree first) at t.
galois::Elem eval_poly(const galois::Field& f, std::span<const galois::Elem> poly, galois::Elem t);

/// Coefficients (low-degree first, degree < q) of the polynomial taking the
/// given values at every field element; values are indexed by element.
std::vector<galois::Elem> interpolate(const galois::Field& f, std::span<const galois::Elem> values);

/// {(1,t,f(t))} + {(0,1,0), (0,0,1)}, sorted. Throws WrongCharacteristic for
/// odd q and NotAHyperoval when the set is not a (q+2)-arc.
std::vector<PointId> opoly_hyperoval(const Plane& pg, std::span<const galois::Elem> poly);

enum class OvalClass { Conic, PointedConic, Irregular };

const char* oval_class_name(OvalClass c) noexcept;

struct OvalClassification {
  OvalClass cls = OvalClass::Irregular;
  /// The oval's own conic, or for a pointed conic the conic C it came from.
  std::optional<Conic> conic;
  /// Nucleus of the oval (even order only).
  std::optional<PointId> nucleus;
};

/// Conic, PointedConic or Irregular for an oval of PG(2,q). Odd q is
/// reported Conic without any fitting. Throws NotAnOval, or InvalidArgument
/// for planes without field coordinates.
OvalClassification classify_oval(const Plane& pg, std::span<const PointId> oval);

// Search

struct OvalSearchConfig {
  plane::SearchMode mode = plane::SearchMode::Exhaustive;
  /// Node budget (arc extensions).
  std::uint64_t budget = UINT64_MAX;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  /// Lifts the exhaustive order limit from 9 to 16.
  bool long_mode = false;
  /// Random mode stops after this many distinct ovals.
  std::uint64_t max_ovals = 1;
  /// Keep the ovals themselves, not just their number.
  bool keep_ovals = true;
};

struct OvalSearchResult {
  /// Sorted point sets, lexicographically ordered in exhaustive mode and in
  /// discovery order in random mode.
  std::vector<std::vector<PointId>> ovals;
  std::uint64_t oval_count = 0;
  /// Complete arcs encountered, by size.
  std::map<std::size_t, std::uint64_t> maximal_arcs;
  std::size_t largest_arc = 0;
  std::uint64_t nodes = 0;
  /// Whole search space covered.
  bool exhausted = false;
  /// Random mode found nothing within budget.
  bool budget_exceeded() const noexcept { return !exhausted && oval_count == 0; }
};

/// Backtracking arc extension in point order with a forbidden-point mask.
/// Exhaustive runs are split by first-two-point prefix and merged in prefix
/// order, so the result does not depend on the worker count. Throws
/// OrderTooLarge for exhaustive runs beyond order 9 (16 with long_mode).
OvalSearchResult search_ovals(const Plane& plane, const OvalSearchConfig& cfg);

struct ClassCensus {
  std::uint64_t conic = 0, pointed_conic = 0, irregular = 0;
  std::array<std::optional<std::vector<PointId>>, 3> first;  // first oval of each class
};

ClassCensus classify_all(const Plane& pg, std::span<const std::vector<PointId>> ovals, unsigned workers = 1);

struct HyperovalSearch {
  std::optional<std::vector<galois::Elem>> opoly;  // values f(t) by element index
  std::uint64_t hyperovals = 0;
  std::uint64_t nodes = 0;
  bool exhausted = false;
};

/// Backtracks over hyperovals containing (1,0,0), (0,1,0), (0,0,1), (1,1,1),
/// i.e. permutations f with f(0)=0, f(1)=1, until `accept` returns true for
/// the value table of one of them or the node budget runs out.
HyperovalSearch search_opoly_hyperovals(const Plane& pg, std::uint64_t budget,
                                        const std::function<bool(std::span<const galois::Elem>)>& accept);

}  // namespace arcmub::arcs
