#include "arcmub/plane.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "arcmub/error.hpp"

namespace arcmub::plane {

namespace detail {

struct PlaneData {
  std::string name;
  unsigned order = 0;
  std::size_t npoints = 0;
  PlaneKind kind;
  std::vector<std::vector<PointId>> lines;
  std::vector<std::vector<LineId>> through;
  std::size_t words = 0;
  std::vector<std::uint64_t> line_bits;  // lines.size() * words
  std::vector<std::uint32_t> join;       // npoints^2
  std::vector<std::uint32_t> meet;       // nlines^2
  std::vector<Coords> coords;
  std::vector<std::uint32_t> coord_index;  // q^3 entries for Desarguesian planes
};

}  // namespace detail

Coords canonicalize(const galois::Field& field, Coords c) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (c[i].v != 0) {
      const galois::Elem s = field.inv(c[i]);
      for (auto& z : c) z = field.mul(z, s);
      return c;
    }
  }
  throw Error(Errc::InvalidArgument, "(0,0,0) is not a projective point");
}

Plane Plane::from_lines(std::string name, unsigned order, std::vector<std::vector<PointId>> lines,
                        PlaneKind kind, std::vector<Coords> point_coords) {
  auto d = std::make_shared<detail::PlaneData>();
  d->name = std::move(name);
  d->order = order;
  d->npoints = static_cast<std::size_t>(order) * order + order + 1;
  d->kind = std::move(kind);
  d->words = (d->npoints + 63) / 64;
  for (auto& l : lines) {
    std::sort(l.begin(), l.end());
    for (PointId p : l)
      if (p >= d->npoints) throw Error(Errc::UnknownPoint, "point index " + std::to_string(p) + " out of range");
  }
  d->lines = std::move(lines);
  const std::size_t nl = d->lines.size();
  d->through.assign(d->npoints, {});
  d->line_bits.assign(nl * d->words, 0);
  d->join.assign(d->npoints * d->npoints, kNone);
  for (LineId l = 0; l < nl; ++l) {
    const auto& pts = d->lines[l];
    for (PointId p : pts) {
      d->through[p].push_back(l);
      d->line_bits[l * d->words + p / 64] |= std::uint64_t{1} << (p % 64);
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        auto& a = d->join[pts[i] * d->npoints + pts[j]];
        if (a == kNone) {
          a = l;
          d->join[pts[j] * d->npoints + pts[i]] = l;
        }
      }
  }
  d->meet.assign(nl * nl, kNone);
  for (PointId p = 0; p < d->npoints; ++p) {
    const auto& ls = d->through[p];
    for (std::size_t i = 0; i < ls.size(); ++i)
      for (std::size_t j = i + 1; j < ls.size(); ++j) {
        auto& a = d->meet[ls[i] * nl + ls[j]];
        if (a == kNone) {
          a = p;
          d->meet[ls[j] * nl + ls[i]] = p;
        }
      }
  }
  d->coords = std::move(point_coords);
  if (const auto* des = std::get_if<Desarguesian>(&d->kind); des && !d->coords.empty()) {
    const std::size_t q = des->field.order();
    d->coord_index.assign(q * q * q, kNone);
    for (PointId p = 0; p < d->coords.size(); ++p) {
      const auto& c = d->coords[p];
      d->coord_index[(c[0].v * q + c[1].v) * q + c[2].v] = p;
    }
  }
  return Plane(std::move(d));
}

const std::string& Plane::name() const noexcept { return d_->name; }
unsigned Plane::order() const noexcept { return d_->order; }
std::size_t Plane::num_points() const noexcept { return d_->npoints; }
std::size_t Plane::num_lines() const noexcept { return d_->lines.size(); }
const PlaneKind& Plane::kind() const noexcept { return d_->kind; }

const galois::Field* Plane::field() const noexcept {
  if (const auto* des = std::get_if<Desarguesian>(&d_->kind)) return &des->field;
  return nullptr;
}

std::span<const PointId> Plane::line(LineId l) const {
  if (l >= d_->lines.size()) throw Error(Errc::InvalidArgument, "line index out of range");
  return d_->lines[l];
}

std::span<const LineId> Plane::lines_through(PointId p) const {
  if (p >= d_->npoints) throw Error(Errc::UnknownPoint, "point index " + std::to_string(p) + " out of range");
  return d_->through[p];
}

bool Plane::incident(PointId p, LineId l) const noexcept {
  if (p >= d_->npoints || l >= d_->lines.size()) return false;
  return (d_->line_bits[l * d_->words + p / 64] >> (p % 64)) & 1u;
}

LineId Plane::join(PointId a, PointId b) const noexcept {
  if (a >= d_->npoints || b >= d_->npoints) return kNone;
  return d_->join[a * d_->npoints + b];
}

PointId Plane::meet(LineId l, LineId m) const noexcept {
  const std::size_t nl = d_->lines.size();
  if (l >= nl || m >= nl) return kNone;
  return d_->meet[l * nl + m];
}

bool Plane::collinear(PointId a, PointId b, PointId c) const noexcept {
  if (a == b || b == c || a == c) return true;
  const LineId l = join(a, b);
  return l != kNone && incident(c, l);
}

std::span<const std::uint64_t> Plane::line_bits(LineId l) const {
  return {d_->line_bits.data() + l * d_->words, d_->words};
}

std::size_t Plane::words_per_set() const noexcept { return d_->words; }

const Coords& Plane::coords(PointId p) const {
  if (p >= d_->coords.size()) throw Error(Errc::InvalidArgument, "plane has no coordinates for this point");
  return d_->coords[p];
}

PointId Plane::point_at(const Coords& c) const {
  const auto* f = field();
  if (!f || d_->coord_index.empty()) return kNone;
  const std::size_t q = f->order();
  if (c[0].v >= q || c[1].v >= q || c[2].v >= q) return kNone;
  return d_->coord_index[(c[0].v * q + c[1].v) * q + c[2].v];
}

bool Plane::has_coords() const noexcept { return !d_->coords.empty(); }

bool Plane::same_incidence(const Plane& other) const {
  return d_->order == other.d_->order && d_->lines == other.d_->lines;
}

Plane pg2(const galois::Field& field) {
  const std::uint32_t q = field.order();
  if (q > 32) throw Error(Errc::OrderTooLarge, "PG(2,q) is built only for q <= 32");
  std::vector<Coords> triples;
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b)
      for (std::uint32_t c = 0; c < q; ++c) {
        const std::uint32_t first = a != 0 ? a : (b != 0 ? b : c);
        if (first == 1) triples.push_back({galois::Elem{a}, galois::Elem{b}, galois::Elem{c}});
      }
  std::vector<std::vector<PointId>> lines(triples.size());
  for (std::size_t l = 0; l < triples.size(); ++l) {
    const auto& f = triples[l];
    for (PointId p = 0; p < triples.size(); ++p) {
      const auto& z = triples[p];
      const auto s = field.add(field.add(field.mul(f[0], z[0]), field.mul(f[1], z[1])), field.mul(f[2], z[2]));
      if (s.v == 0) lines[l].push_back(p);
    }
  }
  std::ostringstream name;
  name << "PG(2," << q << ")";
  return Plane::from_lines(name.str(), q, std::move(lines), Desarguesian{field}, std::move(triples));
}

bool AxiomReport::all_passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

const AxiomCheck* AxiomReport::find(std::string_view name) const noexcept {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::optional<std::array<PointId, 4>> find_quadrilateral(const Plane& plane) {
  const PointId np = static_cast<PointId>(plane.num_points());
  for (PointId a = 0; a < np; ++a)
    for (PointId b = a + 1; b < np; ++b)
      for (PointId c = b + 1; c < np; ++c) {
        if (plane.collinear(a, b, c)) continue;
        for (PointId e = c + 1; e < np; ++e)
          if (!plane.collinear(a, b, e) && !plane.collinear(a, c, e) && !plane.collinear(b, c, e))
            return std::array<PointId, 4>{a, b, c, e};
      }
  return std::nullopt;
}

AxiomReport verify_plane_axioms(const Plane& plane) {
  AxiomReport r;
  const std::size_t d = plane.order();
  const std::size_t n = d * d + d + 1;
  const std::size_t np = plane.num_points();
  const std::size_t nl = plane.num_lines();

  auto add = [&](std::string name, bool ok, std::string witness = {}) {
    r.checks.push_back({std::move(name), ok, ok ? std::string() : std::move(witness)});
  };

  add("point count", np == n, "expected " + std::to_string(n) + " points, found " + std::to_string(np));
  add("line count", nl == n, "expected " + std::to_string(n) + " lines, found " + std::to_string(nl));

  {
    std::string w;
    for (LineId l = 0; l < nl && w.empty(); ++l)
      if (plane.line(l).size() != d + 1)
        w = "line " + std::to_string(l) + " has " + std::to_string(plane.line(l).size()) + " points";
    add("points per line", w.empty(), w);
  }
  {
    std::string w;
    for (PointId p = 0; p < np && w.empty(); ++p)
      if (plane.lines_through(p).size() != d + 1)
        w = "point " + std::to_string(p) + " lies on " + std::to_string(plane.lines_through(p).size()) + " lines";
    add("lines per point", w.empty(), w);
  }

  // Point-line bitsets per point, for counting common lines.
  const std::size_t lw = (nl + 63) / 64;
  std::vector<std::uint64_t> pbits(np * lw, 0);
  for (PointId p = 0; p < np; ++p)
    for (LineId l : plane.lines_through(p)) pbits[p * lw + l / 64] |= std::uint64_t{1} << (l % 64);
  {
    std::string w;
    for (PointId a = 0; a < np && w.empty(); ++a)
      for (PointId b = a + 1; b < np && w.empty(); ++b) {
        std::size_t common = 0;
        for (std::size_t k = 0; k < lw; ++k) common += std::popcount(pbits[a * lw + k] & pbits[b * lw + k]);
        if (common != 1)
          w = "points " + std::to_string(a) + " and " + std::to_string(b) + " share " + std::to_string(common) +
              " lines";
      }
    add("two points on one line", w.empty(), w);
  }
  {
    std::string w;
    const std::size_t pw = plane.words_per_set();
    for (LineId a = 0; a < nl && w.empty(); ++a)
      for (LineId b = a + 1; b < nl && w.empty(); ++b) {
        std::size_t common = 0;
        const auto la = plane.line_bits(a), lb = plane.line_bits(b);
        for (std::size_t k = 0; k < pw; ++k) common += std::popcount(la[k] & lb[k]);
        if (common != 1)
          w = "lines " + std::to_string(a) + " and " + std::to_string(b) + " share " + std::to_string(common) +
              " points";
      }
    add("two lines meet in one point", w.empty(), w);
  }
  {
    const auto quad = find_quadrilateral(plane);
    std::string none = "no 4 points in general position";
    add("quadrilateral exists", quad.has_value(), none);
  }
  return r;
}

}  // namespace arcmub::plane
