#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arcmub/arcs.hpp"
#include "arcmub/cyclotomic.hpp"
#include "arcmub/galois.hpp"
#include "arcmub/plane.hpp"

namespace arcmub::mub {

using cyclotomic::BigInt;
using cyclotomic::CycInt;

/// Un-normalized vector with cyclotomic entries.
struct MubVector {
  std::vector<CycInt> entries;
  /// When every entry is zeta_r^{e_k}: r and the exponents, used for a
  /// counting shortcut in inner products.
  unsigned phase_order = 0;
  std::optional<std::vector<std::uint32_t>> phases;

  std::size_t dim() const noexcept { return entries.size(); }

  static MubVector from_phases(unsigned order, std::vector<std::uint32_t> exponents);
  /// e_k in dimension d with entries in Z[zeta_order].
  static MubVector standard(unsigned order, std::size_t d, std::size_t k);
};

enum class Provenance { Constructed, Fixture, Imported };

const char* provenance_name(Provenance p) noexcept;

struct MubSet {
  std::size_t d = 0;
  unsigned root_order = 1;
  std::vector<std::vector<MubVector>> bases;
  Provenance provenance = Provenance::Constructed;
};

/// Standard basis plus, for each a, the basis with vectors b having entries
/// zeta_p^{Tr(a k^2 + b k)} at coordinate k. Throws EvenCharacteristic for
/// p = 2 and OrderTooLarge beyond 81.
MubSet wf_mub_set(const galois::Field& field);

/// sum_k conj(u_k) v_k. Throws DimensionMismatch.
CycInt inner_product(const MubVector& u, const MubVector& v);

struct PairCheck {
  std::size_t a = 0, b = 0;  // a == b: orthonormality within basis a
  bool passed = true;
  std::string witness;
};

struct MubReport {
  std::size_t d = 0;
  std::size_t bases = 0;
  /// Within-basis checks first, then cross pairs (a < b) in order.
  std::vector<PairCheck> checks;
  bool all_passed = true;
  /// First failing check, if any.
  std::optional<PairCheck> first_failure;
  bool within_bound() const noexcept { return bases <= d + 1; }
  bool complete() const noexcept { return all_passed && bases == d + 1; }
};

/// Each basis: d vectors, mutually orthogonal, with positive integer norms.
/// Each cross pair: d |<u|v>|^2 = <u|u><v|v>.
MubReport verify_mub_set(const MubSet& s, unsigned workers = 1);

/// The complete set in dimension 2: standard, (1,1),(1,-1), (1,i),(1,-i).
MubSet d2_fixture();

struct Char2Report {
  galois::Field field;
  std::size_t cross_products = 0;
  /// Counts by |<u|v>|^2 over cross pairs of the quadratic-phase bases.
  std::size_t zero = 0, full = 0, unbiased = 0, other = 0;
  /// Basis pairs with identical vector sets.
  std::size_t coinciding_pairs = 0;
  /// Every |<u|v>|^2 equals the Weil-sum magnitude for (a'-a, b'-b).
  bool matches_weil_survey = true;
  std::optional<std::string> zero_witness;
  bool failed() const noexcept { return zero + full + other > 0; }
};

/// Quadratic-phase bases with entries (-1)^{Tr(a k^2 + b k)} and the ways
/// they fail to be unbiased. Throws WrongCharacteristic for odd p.
Char2Report char2_failure_demo(const galois::Field& field);

struct AnalogyReport {
  unsigned d = 0;
  std::string plane;
  std::optional<std::size_t> oval_size;
  std::size_t largest_arc = 0;
  bool search_exhausted = false;
  std::optional<std::size_t> mub_count;  // verified complete-set size
  bool mub_verified = false;
  bool match = false;
  std::vector<std::string> notes;
};

/// Juxtaposes the oval side (from a search result on P) with the MUB side.
/// Throws DimensionMismatch when S has a different dimension than P's order.
AnalogyReport analogy_report(const plane::Plane& p, const arcs::OvalSearchResult& census, const MubSet* s,
                             unsigned workers = 1);

// JSON: {"d":3,"root_order":3,"bases":[[[c0,c1,...], ...], ...]}, one
// coefficient vector (power basis of Z[zeta_root_order]) per entry.
std::string save_mub_json(const MubSet& s);
/// Throws ParseError.
MubSet load_mub_json(std::string_view text);

/// Floating-point import: {"d":..,"bases":[[[[re,im],...],...],...]}; vectors
/// are normalized before checking |<u|v>|^2 = 1/d within `tolerance`.
MubReport verify_numeric_mub_json(std::string_view text, double tolerance);

}  // namespace arcmub::mub
