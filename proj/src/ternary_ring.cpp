#include <algorithm>
#include <sstream>

#include "arcmub/error.hpp"
#include "arcmub/plane.hpp"

namespace arcmub::plane {

TernaryRing::TernaryRing(unsigned order, std::vector<std::uint32_t> table, std::vector<PointId> diagonal)
    : order_(order), table_(std::move(table)), diagonal_(std::move(diagonal)) {
  if (order < 2 || table_.size() != static_cast<std::size_t>(order) * order * order)
    throw Error(Errc::InvalidArgument, "ternary table must have order^3 entries");
  for (auto v : table_)
    if (v >= order) throw Error(Errc::InvalidArgument, "ternary table entry out of range");
}

Frame standard_frame(const Plane& plane) {
  if (const auto* f = plane.field(); f && plane.has_coords()) {
    const galois::Elem z = f->zero(), o = f->one();
    return {plane.point_at({z, z, o}), plane.point_at({o, z, z}), plane.point_at({z, o, z}),
            plane.point_at({o, o, o})};
  }
  if (std::holds_alternative<QuasifieldKind>(plane.kind())) {
    const PointId q = plane.order();
    return {0, q * q, q * q + q, q + 1};
  }
  const auto quad = find_quadrilateral(plane);
  if (!quad) throw Error(Errc::NotAQuadrilateral, "plane has no quadrilateral");
  return {(*quad)[0], (*quad)[1], (*quad)[2], (*quad)[3]};
}

namespace {

std::string fmt3(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  std::ostringstream os;
  os << "(" << a << "," << b << "," << c << ")";
  return os.str();
}

}  // namespace

AxiomReport verify_ptr_axioms(const TernaryRing& t) {
  const std::uint32_t d = t.order();
  AxiomReport r;
  auto check = [&](std::string name, auto&& find_witness) {
    std::string w = find_witness();
    r.checks.push_back({std::move(name), w.empty(), std::move(w)});
  };
  check("T(a,0,c) = T(0,b,c) = c", [&]() -> std::string {
    for (std::uint32_t a = 0; a < d; ++a)
      for (std::uint32_t c = 0; c < d; ++c)
        if (t(a, 0, c) != c || t(0, a, c) != c) return fmt3(a, 0, c);
    return {};
  });
  check("T(a,1,0) = T(1,a,0) = a", [&]() -> std::string {
    for (std::uint32_t a = 0; a < d; ++a)
      if (t(a, 1, 0) != a || t(1, a, 0) != a) return "a=" + std::to_string(a);
    return {};
  });
  check("T(a,b,x) = c uniquely solvable", [&]() -> std::string {
    std::vector<unsigned> seen(d);
    for (std::uint32_t a = 0; a < d; ++a)
      for (std::uint32_t b = 0; b < d; ++b) {
        std::fill(seen.begin(), seen.end(), 0);
        for (std::uint32_t x = 0; x < d; ++x) ++seen[t(a, b, x)];
        for (std::uint32_t c = 0; c < d; ++c)
          if (seen[c] != 1) return fmt3(a, b, c);
      }
    return {};
  });
  check("T(x,a,b) = T(x,a',b') uniquely solvable for a != a'", [&]() -> std::string {
    for (std::uint32_t a = 0; a < d; ++a)
      for (std::uint32_t a2 = 0; a2 < d; ++a2) {
        if (a == a2) continue;
        for (std::uint32_t b = 0; b < d; ++b)
          for (std::uint32_t b2 = 0; b2 < d; ++b2) {
            unsigned n = 0;
            for (std::uint32_t x = 0; x < d; ++x) n += t(x, a, b) == t(x, a2, b2);
            if (n != 1) return "a=" + std::to_string(a) + " a'=" + std::to_string(a2) + " b=" + std::to_string(b) +
                               " b'=" + std::to_string(b2);
          }
      }
    return {};
  });
  check("T(a,x,y) = b, T(a',x,y) = b' uniquely solvable for a != a'", [&]() -> std::string {
    std::vector<unsigned> hits(static_cast<std::size_t>(d) * d);
    for (std::uint32_t a = 0; a < d; ++a)
      for (std::uint32_t a2 = 0; a2 < d; ++a2) {
        if (a == a2) continue;
        std::fill(hits.begin(), hits.end(), 0);
        for (std::uint32_t x = 0; x < d; ++x)
          for (std::uint32_t y = 0; y < d; ++y) ++hits[t(a, x, y) * d + t(a2, x, y)];
        for (std::uint32_t i = 0; i < hits.size(); ++i)
          if (hits[i] != 1)
            return "a=" + std::to_string(a) + " a'=" + std::to_string(a2) + " b=" + std::to_string(i / d) +
                   " b'=" + std::to_string(i % d);
      }
    return {};
  });
  return r;
}

TernaryRing extract_ternary_ring(const Plane& plane, const Frame& frame) {
  const std::array<PointId, 4> quad{frame.origin, frame.x_ideal, frame.y_ideal, frame.unit};
  for (PointId p : quad)
    if (p >= plane.num_points()) throw Error(Errc::NotAQuadrilateral, "frame point out of range");
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k)
        if (plane.collinear(quad[i], quad[j], quad[k]))
          throw Error(Errc::NotAQuadrilateral, "frame points " + fmt3(quad[i], quad[j], quad[k]) + " are collinear");

  auto join = [&](PointId a, PointId b) {
    const LineId l = plane.join(a, b);
    if (l == kNone) throw Error(Errc::CoordinatizationFailure, "no line through two points");
    return l;
  };
  auto meet = [&](LineId a, LineId b) {
    const PointId p = plane.meet(a, b);
    if (p == kNone) throw Error(Errc::CoordinatizationFailure, "two lines do not meet");
    return p;
  };

  const PointId o = frame.origin, x_inf = frame.x_ideal, y_inf = frame.y_ideal, unit = frame.unit;
  const LineId infinity = join(x_inf, y_inf);
  const LineId diag = join(o, unit);
  const PointId diag_inf = meet(diag, infinity);
  const unsigned d = plane.order();

  std::vector<PointId> labels{o, unit};
  for (PointId p : plane.line(diag))
    if (p != o && p != unit && p != diag_inf) labels.push_back(p);
  if (labels.size() != d) throw Error(Errc::CoordinatizationFailure, "line OI does not carry d affine points");
  std::vector<std::uint32_t> label_of(plane.num_points(), kNone);
  for (std::uint32_t i = 0; i < d; ++i) label_of[labels[i]] = i;

  auto label = [&](PointId p) {
    if (label_of[p] == kNone) throw Error(Errc::CoordinatizationFailure, "point is not a labelled diagonal point");
    return label_of[p];
  };
  // Vertical line x = a and horizontal line y = a.
  std::vector<LineId> vertical(d), horizontal(d);
  for (std::uint32_t a = 0; a < d; ++a) {
    vertical[a] = join(labels[a], y_inf);
    horizontal[a] = join(labels[a], x_inf);
  }
  auto point_at = [&](std::uint32_t x, std::uint32_t y) { return meet(vertical[x], horizontal[y]); };
  auto y_of = [&](PointId p) { return label(meet(join(p, x_inf), diag)); };

  std::vector<PointId> slope(d);
  for (std::uint32_t m = 0; m < d; ++m) slope[m] = meet(join(o, point_at(1, m)), infinity);

  std::vector<std::uint32_t> table(static_cast<std::size_t>(d) * d * d);
  for (std::uint32_t m = 0; m < d; ++m)
    for (std::uint32_t b = 0; b < d; ++b) {
      const LineId l = join(slope[m], point_at(0, b));
      for (std::uint32_t x = 0; x < d; ++x)
        table[(static_cast<std::size_t>(x) * d + m) * d + b] = y_of(meet(l, vertical[x]));
    }

  TernaryRing ring(d, std::move(table), std::move(labels));
  const auto report = verify_ptr_axioms(ring);
  for (const auto& c : report.checks)
    if (!c.passed) throw Error(Errc::CoordinatizationFailure, "ternary ring axiom " + c.name + " fails at " + c.witness);
  return ring;
}

bool PtrProperties::all_hold() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.holds; });
}

bool PtrProperties::holds(std::string_view name) const noexcept {
  for (const auto& c : checks)
    if (c.name == name) return c.holds;
  return false;
}

PtrProperties ptr_properties(const TernaryRing& t) {
  const std::uint32_t d = t.order();
  PtrProperties r;
  auto check = [&](std::string name, auto&& pred) {
    std::string w;
    for (std::uint32_t a = 0; a < d && w.empty(); ++a)
      for (std::uint32_t b = 0; b < d && w.empty(); ++b)
        for (std::uint32_t c = 0; c < d && w.empty(); ++c)
          if (!pred(a, b, c)) w = fmt3(a, b, c);
    r.checks.push_back({std::move(name), w.empty(), std::move(w)});
  };
  auto add = [&](std::uint32_t a, std::uint32_t b) { return t.add(a, b); };
  auto mul = [&](std::uint32_t a, std::uint32_t b) { return t.mul(a, b); };
  check("linear", [&](auto a, auto b, auto c) { return t(a, b, c) == add(mul(a, b), c); });
  check("additive associativity", [&](auto a, auto b, auto c) { return add(add(a, b), c) == add(a, add(b, c)); });
  check("additive commutativity", [&](auto a, auto b, auto) { return add(a, b) == add(b, a); });
  check("multiplicative associativity",
        [&](auto a, auto b, auto c) { return mul(mul(a, b), c) == mul(a, mul(b, c)); });
  check("multiplicative commutativity", [&](auto a, auto b, auto) { return mul(a, b) == mul(b, a); });
  check("left distributivity", [&](auto a, auto b, auto c) { return mul(a, add(b, c)) == add(mul(a, b), mul(a, c)); });
  check("right distributivity",
        [&](auto a, auto b, auto c) { return mul(add(a, b), c) == add(mul(a, c), mul(b, c)); });
  return r;
}

}  // namespace arcmub::plane
