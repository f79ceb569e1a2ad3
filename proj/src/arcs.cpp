#include "arcmub/arcs.hpp"

#include <algorithm>

#include "arcmub/error.hpp"

namespace arcmub::arcs {

using galois::Elem;
using galois::Field;

namespace {

std::vector<PointId> as_set(const Plane& plane, std::span<const PointId> pts) {
  std::vector<PointId> s(pts.begin(), pts.end());
  for (PointId p : s)
    if (p >= plane.num_points())
      throw Error(Errc::UnknownPoint, "point " + std::to_string(p) + " is not in " + plane.name());
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

// Number of members on each line.
std::vector<std::uint32_t> line_counts(const Plane& plane, std::span<const PointId> s) {
  std::vector<std::uint32_t> cnt(plane.num_lines(), 0);
  for (PointId p : s)
    for (LineId l : plane.lines_through(p)) ++cnt[l];
  return cnt;
}

// Tangent through each member of a sorted set if it is an oval.
std::optional<std::vector<LineId>> oval_tangents(const Plane& plane, std::span<const PointId> s) {
  if (s.size() != plane.order() + 1) return std::nullopt;
  const auto cnt = line_counts(plane, s);
  if (std::ranges::any_of(cnt, [](std::uint32_t c) { return c >= 3; })) return std::nullopt;
  std::vector<LineId> tangents;
  for (PointId x : s) {
    std::size_t ones = 0, twos = 0;
    for (LineId l : plane.lines_through(x)) {
      if (cnt[l] == 1) {
        ++ones;
        tangents.push_back(l);
      } else if (cnt[l] == 2) {
        ++twos;
      }
    }
    if (ones != 1 || twos != plane.order())
      throw Error(Errc::Internal, "oval point " + std::to_string(x) + " lacks a unique tangent");
  }
  return tangents;
}

// Common point of the tangents; OddOrder when they do not concur.
PointId tangent_meet(const Plane& plane, std::span<const LineId> tangents) {
  const PointId n = plane.meet(tangents[0], tangents[1]);
  for (LineId t : tangents)
    if (n == plane::kNone || !plane.incident(n, t))
      throw Error(Errc::OddOrder, "tangents of the oval are not concurrent (order " + std::to_string(plane.order()) + ")");
  return n;
}

const Field& field_of(const Plane& pg) {
  const Field* f = pg.field();
  if (!f) throw Error(Errc::InvalidArgument, pg.name() + " has no field coordinates");
  return *f;
}

// Rows of the conic system: monomials z1^2 z1z2 z1z3 z2^2 z2z3 z3^2.
std::array<Elem, 6> monomials(const Field& f, const Coords& z) {
  return {f.mul(z[0], z[0]), f.mul(z[0], z[1]), f.mul(z[0], z[2]),
          f.mul(z[1], z[1]), f.mul(z[1], z[2]), f.mul(z[2], z[2])};
}

// Conic through every point of s (|s| >= 5 uses the first five).
std::optional<Conic> conic_through(const Plane& pg, std::span<const PointId> s) {
  const Field& f = field_of(pg);
  if (s.size() >= 5) {
    std::array<Coords, 5> five;
    for (int i = 0; i < 5; ++i) five[i] = pg.coords(s[i]);
    auto c = fit_conic_5pts(f, five);
    if (!c) return std::nullopt;
    for (PointId p : s)
      if (!c->contains(pg.coords(p))) return std::nullopt;
    return c;
  }
  // Too few points to pin a conic down: look for one whose zero set is s.
  for (const Conic& c : enumerate_proper_conics(f)) {
    const auto sol = conic_solutions(pg, c);
    if (sol.size() == s.size() && std::equal(sol.begin(), sol.end(), s.begin())) return c;
  }
  return std::nullopt;
}

}  // namespace

ArcCheck is_arc(const Plane& plane, std::span<const PointId> pts) {
  const auto s = as_set(plane, pts);
  ArcCheck out;
  if (std::ranges::all_of(line_counts(plane, s), [](std::uint32_t c) { return c < 3; })) return out;
  // Members of each line, as positions into s.
  std::vector<std::vector<std::uint32_t>> on_line(plane.num_lines());
  for (std::uint32_t i = 0; i < s.size(); ++i)
    for (LineId l : plane.lines_through(s[i])) on_line[l].push_back(i);
  for (std::uint32_t i = 0; i < s.size(); ++i)
    for (std::uint32_t j = i + 1; j < s.size(); ++j) {
      const LineId l = plane.join(s[i], s[j]);
      if (l == plane::kNone) continue;
      for (std::uint32_t k : on_line[l])
        if (k > j) {
          out.is_arc = false;
          out.witness = std::array{s[i], s[j], s[k]};
          return out;
        }
    }
  return out;
}

Elem det3(const Field& f, const Coords& a, const Coords& b, const Coords& c) {
  auto m = [&](Elem x, Elem y) { return f.mul(x, y); };
  const Elem t1 = m(a[0], f.sub(m(b[1], c[2]), m(b[2], c[1])));
  const Elem t2 = m(a[1], f.sub(m(b[0], c[2]), m(b[2], c[0])));
  const Elem t3 = m(a[2], f.sub(m(b[0], c[1]), m(b[1], c[0])));
  return f.add(f.sub(t1, t2), t3);
}

ArcCheck is_arc_by_determinant(const Plane& plane, std::span<const PointId> pts) {
  const Field& f = field_of(plane);
  const auto s = as_set(plane, pts);
  ArcCheck out;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      for (std::size_t k = j + 1; k < s.size(); ++k)
        if (det3(f, plane.coords(s[i]), plane.coords(s[j]), plane.coords(s[k])) == Elem{0}) {
          out.is_arc = false;
          out.witness = std::array{s[i], s[j], s[k]};
          return out;
        }
  return out;
}

TangentReport tangent_lines(const Plane& plane, std::span<const PointId> arc, PointId x) {
  const auto s = as_set(plane, arc);
  if (!std::binary_search(s.begin(), s.end(), x))
    throw Error(Errc::NotInArc, "point " + std::to_string(x) + " is not a member");
  TangentReport r;
  for (LineId l : plane.lines_through(x)) {
    std::size_t hits = 0;
    for (PointId p : s) hits += plane.incident(p, l);
    if (hits == 1) r.tangents.push_back(l);
    else if (hits == 2) ++r.secants;
  }
  return r;
}

bool is_oval(const Plane& plane, std::span<const PointId> pts) {
  return oval_tangents(plane, as_set(plane, pts)).has_value();
}

// Conics

Conic::Conic(Field field, std::array<Elem, 6> coeffs) : field_(std::move(field)), c_(coeffs) {
  const auto lead = std::find_if(c_.begin(), c_.end(), [](Elem e) { return e != Elem{0}; });
  if (lead == c_.end()) throw Error(Errc::InvalidArgument, "conic with all coefficients zero");
  const Elem s = field_.inv(*lead);
  for (Elem& e : c_) e = field_.mul(e, s);
}

Elem Conic::eval(const Coords& z) const noexcept {
  const auto mono = monomials(field_, z);
  Elem acc{0};
  for (int i = 0; i < 6; ++i) acc = field_.add(acc, field_.mul(c_[i], mono[i]));
  return acc;
}

Elem Conic::discriminant() const noexcept {
  const Field& f = field_;
  const auto [c11, c12, c13, c22, c23, c33] = c_;
  auto m = [&](Elem a, Elem b) { return f.mul(a, b); };
  Elem d = m(f.constant(4), m(c11, m(c22, c33)));
  d = f.add(d, m(c12, m(c13, c23)));
  d = f.sub(d, m(c11, m(c23, c23)));
  d = f.sub(d, m(c22, m(c13, c13)));
  d = f.sub(d, m(c33, m(c12, c12)));
  return d;
}

Conic canonical_conic_form(const Field& f) {
  return Conic(f, {Elem{0}, f.one(), Elem{0}, Elem{0}, Elem{0}, f.neg(f.one())});
}

std::vector<Coords> canonical_conic_coords(const Field& f) {
  std::vector<Coords> out{{f.one(), Elem{0}, Elem{0}}};
  for (std::uint32_t s = 0; s < f.order(); ++s) {
    const Elem e{s};
    out.push_back(plane::canonicalize(f, {f.mul(e, e), f.one(), e}));
  }
  return out;
}

std::vector<PointId> canonical_conic(const Plane& pg) {
  const Field& f = field_of(pg);
  std::vector<PointId> out;
  for (const Coords& c : canonical_conic_coords(f)) out.push_back(pg.point_at(c));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PointId> conic_solutions(const Plane& pg, const Conic& c) {
  field_of(pg);
  std::vector<PointId> out;
  for (PointId p = 0; p < pg.num_points(); ++p)
    if (c.contains(pg.coords(p))) out.push_back(p);
  return out;
}

std::optional<Conic> fit_conic_5pts(const Field& f, std::span<const Coords, 5> pts) {
  std::array<Coords, 5> canon;
  for (int i = 0; i < 5; ++i) canon[i] = plane::canonicalize(f, pts[i]);
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      if (canon[i] == canon[j]) throw Error(Errc::DuplicatePoints, "fit_conic_5pts needs five distinct points");

  std::array<std::array<Elem, 6>, 5> a;
  for (int i = 0; i < 5; ++i) a[i] = monomials(f, canon[i]);
  // Reduced row echelon form.
  std::array<int, 5> pivot_col{};
  int rank = 0;
  for (int col = 0; col < 6 && rank < 5; ++col) {
    int r = rank;
    while (r < 5 && a[r][col] == Elem{0}) ++r;
    if (r == 5) continue;
    std::swap(a[r], a[rank]);
    const Elem s = f.inv(a[rank][col]);
    for (Elem& e : a[rank]) e = f.mul(e, s);
    for (int o = 0; o < 5; ++o) {
      if (o == rank || a[o][col] == Elem{0}) continue;
      const Elem factor = a[o][col];
      for (int k = 0; k < 6; ++k) a[o][k] = f.sub(a[o][k], f.mul(factor, a[rank][k]));
    }
    pivot_col[rank++] = col;
  }
  if (rank != 5) return std::nullopt;
  int free_col = 0;
  for (int k = 0; k < 5 && pivot_col[k] == free_col; ++k) ++free_col;
  std::array<Elem, 6> c{};
  c[free_col] = f.one();
  for (int k = 0; k < 5; ++k) c[pivot_col[k]] = f.neg(a[k][free_col]);
  Conic conic(f, c);
  if (!conic.proper()) return std::nullopt;
  return conic;
}

std::vector<Conic> enumerate_proper_conics(const Field& f) {
  const std::uint32_t q = f.order();
  std::vector<Conic> out;
  for (int lead = 5; lead >= 0; --lead) {
    // Coefficients before `lead` are zero, lead is one, the rest are free.
    const int free = 5 - lead;
    std::uint64_t total = 1;
    for (int i = 0; i < free; ++i) total *= q;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::array<Elem, 6> c{};
      c[lead] = f.one();
      std::uint64_t v = code;
      for (int k = 5; k > lead; --k) {
        c[k] = Elem{static_cast<std::uint32_t>(v % q)};
        v /= q;
      }
      Conic conic(f, c);
      if (conic.proper()) out.push_back(conic);
    }
  }
  std::sort(out.begin(), out.end(), [](const Conic& x, const Conic& y) { return x.coeffs() < y.coeffs(); });
  return out;
}

// Even order

PointId nucleus(const Plane& plane, std::span<const PointId> oval) {
  const auto tangents = oval_tangents(plane, as_set(plane, oval));
  if (!tangents) throw Error(Errc::NotAnOval, "nucleus needs an oval");
  return tangent_meet(plane, *tangents);
}

std::vector<PointId> pointed_conic(const Plane& pg, std::span<const PointId> conic, PointId x) {
  const Field& f = field_of(pg);
  if (f.characteristic() != 2) throw Error(Errc::WrongCharacteristic, "pointed conics need characteristic 2");
  auto s = as_set(pg, conic);
  const auto it = std::lower_bound(s.begin(), s.end(), x);
  if (it == s.end() || *it != x) throw Error(Errc::PointNotOnConic, "point " + std::to_string(x) + " is not on the conic");
  const PointId n = nucleus(pg, s);
  s.erase(std::lower_bound(s.begin(), s.end(), x));
  s.insert(std::lower_bound(s.begin(), s.end(), n), n);
  return s;
}

Elem eval_poly(const Field& f, std::span<const Elem> poly, Elem t) {
  Elem acc{0};
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = f.add(f.mul(acc, t), *it);
  return acc;
}

std::vector<Elem> interpolate(const Field& f, std::span<const Elem> values) {
  // f(x) = sum_a v_a (1 - (x - a)^{q-1}) and (x - a)^{q-1} = sum_j a^{q-1-j} x^j.
  const std::uint32_t q = f.order();
  if (values.size() != q) throw Error(Errc::InvalidArgument, "interpolate needs one value per field element");
  std::vector<Elem> c(q, Elem{0});
  c[0] = values[0];
  for (std::uint32_t j = 1; j < q; ++j) {
    Elem s{0};
    for (std::uint32_t a = 0; a < q; ++a) s = f.add(s, f.mul(values[a], f.pow(Elem{a}, q - 1 - j)));
    c[j] = f.neg(s);
  }
  while (c.size() > 1 && c.back() == Elem{0}) c.pop_back();
  return c;
}

std::vector<PointId> opoly_hyperoval(const Plane& pg, std::span<const Elem> poly) {
  const Field& f = field_of(pg);
  if (f.characteristic() != 2) throw Error(Errc::WrongCharacteristic, "hyperovals need characteristic 2");
  for (Elem c : poly)
    if (c.v >= f.order()) throw Error(Errc::InvalidArgument, "polynomial coefficient outside the field");
  std::vector<PointId> pts{pg.point_at({Elem{0}, f.one(), Elem{0}}), pg.point_at({Elem{0}, Elem{0}, f.one()})};
  for (std::uint32_t t = 0; t < f.order(); ++t) pts.push_back(pg.point_at({f.one(), Elem{t}, eval_poly(f, poly, Elem{t})}));
  std::sort(pts.begin(), pts.end());
  const auto check = is_arc(pg, pts);
  if (!check.is_arc) {
    const auto& w = *check.witness;
    throw Error(Errc::NotAHyperoval, "points " + std::to_string(w[0]) + ", " + std::to_string(w[1]) + ", " +
                                         std::to_string(w[2]) + " are collinear");
  }
  return pts;
}

const char* oval_class_name(OvalClass c) noexcept {
  switch (c) {
    case OvalClass::Conic: return "conic";
    case OvalClass::PointedConic: return "pointed_conic";
    case OvalClass::Irregular: return "irregular";
  }
  return "?";
}

OvalClassification classify_oval(const Plane& pg, std::span<const PointId> oval) {
  const Field& f = field_of(pg);
  const auto s = as_set(pg, oval);
  const auto tangents = oval_tangents(pg, s);
  if (!tangents) throw Error(Errc::NotAnOval, "classification needs exactly d+1 points, no three collinear");
  OvalClassification out;
  if (f.characteristic() != 2) {
    out.cls = OvalClass::Conic;
    return out;
  }
  const PointId n = tangent_meet(pg, *tangents);
  out.nucleus = n;
  if (auto c = conic_through(pg, s)) {
    out.cls = OvalClass::Conic;
    out.conic = std::move(c);
    return out;
  }
  // O + N is a hyperoval; O is a pointed conic iff dropping some other
  // point of it leaves a conic.
  std::vector<PointId> h = s;
  h.insert(std::lower_bound(h.begin(), h.end(), n), n);
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i] == n) continue;
    std::vector<PointId> rest = h;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    if (auto c = conic_through(pg, rest)) {
      out.cls = OvalClass::PointedConic;
      out.conic = std::move(c);
      return out;
    }
  }
  out.cls = OvalClass::Irregular;
  return out;
}

}  // namespace arcmub::arcs
