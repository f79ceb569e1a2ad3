#include <algorithm>
#include <bit>
#include <set>

#include "arcmub/arcs.hpp"
#include "arcmub/error.hpp"
#include "arcmub/rng.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace arcmub;
using namespace arcmub::arcs;
using galois::Elem;
using galois::Field;
using plane::pg2;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an arcmub::Error");
  return Errc::Internal;
}

std::array<std::uint32_t, 3> raw(const Coords& c) { return {c[0].v, c[1].v, c[2].v}; }

oracle::NaiveField naive(const Field& f) { return {f.characteristic(), f.modulus()}; }

PointId pt(const Plane& pg, std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  return pg.point_at(plane::canonicalize(*pg.field(), {Elem{a}, Elem{b}, Elem{c}}));
}

// Number of k-subsets of PG(2,q) with no three points collinear, by naive determinants.
std::uint64_t brute_arc_count(const Plane& pg, std::size_t k) {
  const auto nf = naive(*pg.field());
  const std::uint32_t n = static_cast<std::uint32_t>(pg.num_points());
  std::vector<std::uint32_t> pick;
  std::uint64_t count = 0;
  auto rec = [&](auto&& self, std::uint32_t from) -> void {
    if (pick.size() == k) {
      ++count;
      return;
    }
    for (std::uint32_t x = from; x < n; ++x) {
      bool ok = true;
      for (std::size_t i = 0; i < pick.size() && ok; ++i)
        for (std::size_t j = i + 1; j < pick.size() && ok; ++j)
          ok = nf.det3(raw(pg.coords(pick[i])), raw(pg.coords(pick[j])), raw(pg.coords(x))) != 0;
      if (!ok) continue;
      pick.push_back(x);
      self(self, x + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return count;
}

const std::vector<Elem> kIrregularOpoly16 = {Elem{0}, Elem{0}, Elem{7},  Elem{0}, Elem{1},  Elem{0}, Elem{10}, Elem{0},
                                             Elem{3}, Elem{0}, Elem{6},  Elem{0}, Elem{15}, Elem{0}, Elem{7}};

}  // namespace

TEST_CASE("is_arc examples") {
  const Plane p3 = pg2(Field::make(3, 1));
  CHECK(is_arc(p3, canonical_conic(p3)).is_arc);
  const auto line = p3.line(5);
  const auto r = is_arc(p3, std::vector<PointId>(line.begin(), line.end()));
  CHECK_FALSE(r.is_arc);
  REQUIRE(r.witness.has_value());
  CHECK(p3.collinear((*r.witness)[0], (*r.witness)[1], (*r.witness)[2]));
  CHECK(is_arc(p3, std::vector<PointId>{}).is_arc);
  CHECK(is_arc(p3, std::vector<PointId>{4, 9}).is_arc);
  CHECK(code_of([&] { is_arc(p3, std::vector<PointId>{0, 13}); }) == Errc::UnknownPoint);
}

TEST_CASE("incidence and determinant arc tests agree") {
  Rng rng(3);
  for (auto [p, n] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}, {7u, 1u}, {2u, 3u}, {3u, 2u}}) {
    const Plane pg = pg2(Field::make(p, n));
    for (int trial = 0; trial < 300; ++trial) {
      std::vector<PointId> pts;
      const std::size_t k = 3 + rng.below(pg.order() + 1);
      while (pts.size() < k) pts.push_back(static_cast<PointId>(rng.below(pg.num_points())));
      const auto a = is_arc(pg, pts), b = is_arc_by_determinant(pg, pts);
      REQUIRE(a.is_arc == b.is_arc);
      CHECK(a.witness == b.witness);
    }
    CHECK(is_arc_by_determinant(pg, canonical_conic(pg)).is_arc);
  }
  CHECK_THROWS_AS(is_arc_by_determinant(plane::hall_plane9(), std::vector<PointId>{0, 1, 2}), Error);
}

TEST_CASE("parametrized conic determinants factor as stated") {
  for (auto [p, n] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}, {7u, 1u}, {2u, 3u}, {3u, 2u}}) {
    const Field f = Field::make(p, n);
    const auto nf = naive(f);
    const std::uint32_t q = f.order();
    auto row = [&](std::uint32_t s) { return Coords{f.mul(Elem{s}, Elem{s}), f.one(), Elem{s}}; };
    const Coords top{f.one(), Elem{0}, Elem{0}};
    for (std::uint32_t s1 = 0; s1 < q; ++s1)
      for (std::uint32_t s2 = 0; s2 < q; ++s2) {
        REQUIRE(det3(f, top, row(s1), row(s2)).v == nf.sub(s2, s1));
        for (std::uint32_t s3 = 0; s3 < q; ++s3) {
          const std::uint32_t expected = nf.mul(nf.mul(nf.sub(s1, s2), nf.sub(s2, s3)), nf.sub(s3, s1));
          REQUIRE(det3(f, row(s1), row(s2), row(s3)).v == expected);
        }
      }
  }
}

TEST_CASE("tangent_lines examples") {
  const Plane p4 = pg2(Field::make(2, 2));
  const auto conic4 = canonical_conic(p4);
  for (PointId x : conic4) {
    const auto t = tangent_lines(p4, conic4, x);
    CHECK(t.tangents.size() == 1);
    CHECK(t.secants == 4);
  }
  const Plane p2 = pg2(Field::make(2, 1));
  const std::vector<PointId> tri{0, 1, 3};
  REQUIRE(is_arc(p2, tri).is_arc);
  const auto t2 = tangent_lines(p2, tri, 0);
  CHECK(t2.tangents.size() == 1);
  CHECK(t2.secants == 2);

  auto hyper = conic4;
  hyper.push_back(nucleus(p4, conic4));
  for (PointId x : hyper) {
    const auto t = tangent_lines(p4, hyper, x);
    CHECK(t.tangents.empty());
    CHECK(t.secants == 5);
  }
  CHECK(code_of([&] { tangent_lines(p2, tri, 6); }) == Errc::NotInArc);
}

TEST_CASE("is_oval examples") {
  const Plane p5 = pg2(Field::make(5, 1));
  const auto c5 = canonical_conic(p5);
  CHECK(is_oval(p5, c5));
  CHECK_FALSE(is_oval(p5, std::span(c5).first(5)));
  const Plane p4 = pg2(Field::make(2, 2));
  auto h = canonical_conic(p4);
  h.push_back(nucleus(p4, h));
  CHECK(is_arc(p4, h).is_arc);
  CHECK_FALSE(is_oval(p4, h));
}

TEST_CASE("canonical_conic examples and sizes") {
  const Field f3 = Field::make(3, 1);
  const auto c3 = canonical_conic_coords(f3);
  const std::set<Coords> got(c3.begin(), c3.end());
  const std::set<Coords> want{{Elem{1}, Elem{0}, Elem{0}}, {Elem{0}, Elem{1}, Elem{0}}, {Elem{1}, Elem{1}, Elem{1}},
                              {Elem{1}, Elem{1}, Elem{2}}};
  CHECK(got == want);
  const auto c2 = canonical_conic_coords(Field::make(2, 1));
  CHECK(std::set<Coords>(c2.begin(), c2.end()) ==
        std::set<Coords>{{Elem{1}, Elem{0}, Elem{0}}, {Elem{0}, Elem{1}, Elem{0}}, {Elem{1}, Elem{1}, Elem{1}}});

  for (auto [p, n] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}, {7u, 1u}, {2u, 3u}, {3u, 2u}, {2u, 4u}}) {
    const Field f = Field::make(p, n);
    const Plane pg = pg2(f);
    const auto c = canonical_conic(pg);
    CHECK(std::set<PointId>(c.begin(), c.end()).size() == f.order() + 1);
    CHECK(is_arc(pg, c).is_arc);
    // z1 z2 = z3^2 on every point.
    for (PointId x : c) CHECK(canonical_conic_form(f).contains(pg.coords(x)));
    CHECK(conic_solutions(pg, canonical_conic_form(f)) == c);
  }
}

TEST_CASE("conic_solutions examples") {
  const Field f3 = Field::make(3, 1);
  const Plane p3 = pg2(f3);
  const Conic canon(f3, {Elem{0}, Elem{1}, Elem{0}, Elem{0}, Elem{0}, Elem{2}});
  CHECK(canon == canonical_conic_form(f3));
  CHECK(conic_solutions(p3, canon) == canonical_conic(p3));

  const Conic square(f3, {Elem{1}, Elem{0}, Elem{0}, Elem{0}, Elem{0}, Elem{0}});
  CHECK_FALSE(square.proper());
  const auto sol = conic_solutions(p3, square);
  CHECK(sol.size() == 4);
  for (PointId x : sol) CHECK(p3.coords(x)[0] == Elem{0});

  const Field f8 = Field::make(2, 3);
  const Plane p8 = pg2(f8);
  const Conic c8(f8, {Elem{1}, Elem{1}, Elem{0}, Elem{0}, Elem{0}, Elem{1}});
  REQUIRE(c8.proper());
  const auto s8 = conic_solutions(p8, c8);
  CHECK(s8.size() == 9);
  CHECK(is_arc(p8, s8).is_arc);
  CHECK_THROWS_AS(Conic(f8, {}), Error);
}

TEST_CASE("discriminant properness matches point-set structure") {
  Rng rng(5);
  for (auto [p, n] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}, {7u, 1u}, {2u, 3u}, {3u, 2u}}) {
    const Field f = Field::make(p, n);
    const auto nf = naive(f);
    const Plane pg = pg2(f);
    const std::uint32_t q = f.order();
    for (int trial = 0; trial < 400; ++trial) {
      std::array<Elem, 6> c;
      for (auto& e : c) e = Elem{static_cast<std::uint32_t>(rng.below(q))};
      if (std::all_of(c.begin(), c.end(), [](Elem e) { return e.v == 0; })) continue;
      const Conic conic(f, c);
      // Zero set by naive evaluation.
      std::vector<PointId> zero;
      for (PointId x = 0; x < pg.num_points(); ++x) {
        const auto z = raw(pg.coords(x));
        const std::uint32_t mono[6] = {nf.mul(z[0], z[0]), nf.mul(z[0], z[1]), nf.mul(z[0], z[2]),
                                       nf.mul(z[1], z[1]), nf.mul(z[1], z[2]), nf.mul(z[2], z[2])};
        std::uint32_t v = 0;
        for (int i = 0; i < 6; ++i) v = nf.add(v, nf.mul(conic.coeffs()[i].v, mono[i]));
        if (v == 0) zero.push_back(x);
      }
      CHECK(conic_solutions(pg, conic) == zero);
      const bool oval_like = zero.size() == q + 1 && is_arc_by_determinant(pg, zero).is_arc;
      REQUIRE_MESSAGE(conic.proper() == oval_like, "q=" << q);
    }
  }
}

TEST_CASE("proper conic census") {
  // Oracle: walk canonical coefficient vectors, keep those whose naive zero set is a (q+1)-arc.
  for (auto [p, n] : {std::pair{2u, 1u}, {3u, 1u}}) {
    const Field f = Field::make(p, n);
    const auto nf = naive(f);
    const Plane pg = pg2(f);
    const std::uint32_t q = f.order();
    std::uint64_t oracle_count = 0;
    std::set<std::vector<PointId>> zero_sets;
    std::uint32_t total = 1;
    for (int i = 0; i < 6; ++i) total *= q;
    for (std::uint32_t code = 1; code < total; ++code) {
      std::array<std::uint32_t, 6> c;
      std::uint32_t v = code;
      for (int i = 5; i >= 0; --i) {
        c[i] = v % q;
        v /= q;
      }
      const auto lead = std::find_if(c.begin(), c.end(), [](std::uint32_t x) { return x != 0; });
      if (*lead != 1) continue;
      std::vector<PointId> zero;
      for (PointId x = 0; x < pg.num_points(); ++x) {
        const auto z = raw(pg.coords(x));
        const std::uint32_t mono[6] = {nf.mul(z[0], z[0]), nf.mul(z[0], z[1]), nf.mul(z[0], z[2]),
                                       nf.mul(z[1], z[1]), nf.mul(z[1], z[2]), nf.mul(z[2], z[2])};
        std::uint32_t s = 0;
        for (int i = 0; i < 6; ++i) s = nf.add(s, nf.mul(c[i], mono[i]));
        if (s == 0) zero.push_back(x);
      }
      if (zero.size() == q + 1 && is_arc_by_determinant(pg, zero).is_arc) {
        ++oracle_count;
        zero_sets.insert(zero);
      }
    }
    const auto proper = enumerate_proper_conics(f);
    CHECK(proper.size() == oracle_count);
    CHECK(proper.size() == q * q * q * q * q - q * q);
    // Distinct proper conics have distinct point sets.
    CHECK(zero_sets.size() == oracle_count);
  }
  for (auto [p, n] : {std::pair{2u, 2u}, {5u, 1u}}) {
    const Field f = Field::make(p, n);
    const std::uint32_t q = f.order();
    CHECK(enumerate_proper_conics(f).size() == q * q * q * q * q - q * q);
  }
}

TEST_CASE("fit_conic_5pts examples") {
  const Field f7 = Field::make(7, 1);
  const Plane p7 = pg2(f7);
  const auto c7 = canonical_conic(p7);
  const Conic canon = canonical_conic_form(f7);
  // Every 5-subset of the 8 conic points.
  for (std::uint32_t mask = 0; mask < 256; ++mask) {
    if (std::popcount(mask) != 5) continue;
    std::array<Coords, 5> five;
    int k = 0;
    for (int i = 0; i < 8; ++i)
      if (mask >> i & 1) five[k++] = p7.coords(c7[i]);
    const auto fit = fit_conic_5pts(f7, five);
    REQUIRE(fit.has_value());
    CHECK(*fit == canon);
  }
  // Three on the line z1 = 0.
  const std::array<Coords, 5> bad{Coords{Elem{0}, Elem{0}, Elem{1}}, Coords{Elem{0}, Elem{1}, Elem{0}},
                                  Coords{Elem{0}, Elem{1}, Elem{1}}, Coords{Elem{1}, Elem{0}, Elem{0}},
                                  Coords{Elem{1}, Elem{2}, Elem{3}}};
  CHECK_FALSE(fit_conic_5pts(f7, bad).has_value());
  std::array<Coords, 5> dup{Coords{Elem{0}, Elem{0}, Elem{1}}, Coords{Elem{0}, Elem{0}, Elem{2}},
                            Coords{Elem{0}, Elem{1}, Elem{1}}, Coords{Elem{1}, Elem{0}, Elem{0}},
                            Coords{Elem{1}, Elem{2}, Elem{3}}};
  CHECK(code_of([&] { fit_conic_5pts(f7, dup); }) == Errc::DuplicatePoints);

  // A pointed conic of PG(2,8): five of its points including the ex-nucleus
  // fit a conic that misses the rest.
  const Field f8 = Field::make(2, 3);
  const Plane p8 = pg2(f8);
  const auto c8 = canonical_conic(p8);
  const PointId x = pt(p8, 1, 0, 0);
  const PointId nuc = nucleus(p8, c8);
  const auto pc = pointed_conic(p8, c8, x);
  std::vector<PointId> others;
  for (PointId y : pc)
    if (y != nuc) others.push_back(y);
  const std::array<Coords, 5> five{p8.coords(nuc), p8.coords(others[0]), p8.coords(others[1]), p8.coords(others[2]),
                                   p8.coords(others[3])};
  const auto fit = fit_conic_5pts(f8, five);
  REQUIRE(fit.has_value());
  for (std::size_t i = 4; i < others.size(); ++i) CHECK_FALSE(fit->contains(p8.coords(others[i])));
}

TEST_CASE("nucleus examples") {
  const Plane p2 = pg2(Field::make(2, 1));
  CHECK(p2.coords(nucleus(p2, canonical_conic(p2))) == Coords{Elem{0}, Elem{0}, Elem{1}});
  const Plane p4 = pg2(Field::make(2, 2));
  const auto c4 = canonical_conic(p4);
  const PointId n4 = nucleus(p4, c4);
  for (PointId x : c4) CHECK(p4.incident(n4, tangent_lines(p4, c4, x).tangents.front()));

  for (auto q : {3u, 5u, 7u}) {
    const Plane pg = pg2(Field::make(q, 1));
    CHECK(code_of([&] { nucleus(pg, canonical_conic(pg)); }) == Errc::OddOrder);
  }
  const Plane p9 = pg2(Field::make(3, 2));
  CHECK(code_of([&] { nucleus(p9, canonical_conic(p9)); }) == Errc::OddOrder);
  CHECK(code_of([&] { nucleus(p4, std::span(c4).first(4)); }) == Errc::NotAnOval);
}

TEST_CASE("even-order conics: concurrent tangents, hyperovals, pointed conics") {
  Rng rng(17);
  for (auto n : {1u, 2u, 3u}) {
    const Field f = Field::make(2, n);
    const Plane pg = pg2(f);
    const auto all = enumerate_proper_conics(f);
    const std::size_t take = n == 3 ? 200 : all.size();
    for (std::size_t i = 0; i < take; ++i) {
      const Conic& c = n == 3 ? all[rng.below(all.size())] : all[i];
      const auto pts = conic_solutions(pg, c);
      const PointId nuc = nucleus(pg, pts);
      auto h = pts;
      h.push_back(nuc);
      REQUIRE(is_arc(pg, h).is_arc);
      REQUIRE(h.size() == f.order() + 2);
      for (PointId x : pts) REQUIRE(is_oval(pg, pointed_conic(pg, pts, x)));
    }
  }
}

TEST_CASE("pointed_conic examples") {
  const Plane p8 = pg2(Field::make(2, 3));
  const auto c8 = canonical_conic(p8);
  const PointId x = pt(p8, 1, 0, 0);
  const auto pc = pointed_conic(p8, c8, x);
  CHECK(pc.size() == 9);
  CHECK(is_oval(p8, pc));
  CHECK(std::binary_search(pc.begin(), pc.end(), nucleus(p8, c8)));
  std::vector<PointId> shared;
  std::set_intersection(pc.begin(), pc.end(), c8.begin(), c8.end(), std::back_inserter(shared));
  CHECK(shared.size() == 8);
  CHECK(classify_oval(p8, pc).cls == OvalClass::PointedConic);

  const Plane p4 = pg2(Field::make(2, 2));
  const auto c4 = canonical_conic(p4);
  const auto pc4 = pointed_conic(p4, c4, pt(p4, 1, 0, 0));
  CHECK(is_oval(p4, pc4));
  CHECK(classify_oval(p4, pc4).cls == OvalClass::Conic);

  const Plane p16 = pg2(Field::make(2, 4));
  const auto c16 = canonical_conic(p16);
  CHECK(classify_oval(p16, pointed_conic(p16, c16, c16[3])).cls == OvalClass::PointedConic);

  const Plane p3 = pg2(Field::make(3, 1));
  CHECK(code_of([&] { pointed_conic(p3, canonical_conic(p3), 1); }) == Errc::WrongCharacteristic);
  const PointId off = pt(p8, 0, 0, 1);
  REQUIRE_FALSE(std::binary_search(c8.begin(), c8.end(), off));
  CHECK(code_of([&] { pointed_conic(p8, c8, off); }) == Errc::PointNotOnConic);
}

TEST_CASE("polynomial interpolation round-trips") {
  Rng rng(9);
  for (auto [p, n] : {std::pair{2u, 2u}, {2u, 4u}, {3u, 2u}, {5u, 1u}}) {
    const Field f = Field::make(p, n);
    std::vector<Elem> values(f.order());
    for (auto& v : values) v = Elem{static_cast<std::uint32_t>(rng.below(f.order()))};
    const auto poly = interpolate(f, values);
    CHECK(poly.size() <= f.order());
    for (std::uint32_t t = 0; t < f.order(); ++t) CHECK(eval_poly(f, poly, Elem{t}) == values[t]);
  }
}

TEST_CASE("opoly_hyperoval examples") {
  const Field f4 = Field::make(2, 2);
  const Plane p4 = pg2(f4);
  const auto h4 = opoly_hyperoval(p4, std::vector<Elem>{Elem{0}, Elem{0}, Elem{1}});
  CHECK(h4.size() == 6);
  CHECK(is_arc(p4, h4).is_arc);
  for (auto n : {2u, 3u, 4u}) {
    const Plane pg = pg2(Field::make(2, n));
    CHECK(code_of([&] { opoly_hyperoval(pg, std::vector<Elem>{Elem{0}, Elem{1}}); }) == Errc::NotAHyperoval);
  }
  // Over GF(2), x and x^2 are the same function.
  CHECK(opoly_hyperoval(pg2(Field::make(2, 1)), std::vector<Elem>{Elem{0}, Elem{1}}).size() == 4);
  const Plane p2 = pg2(Field::make(2, 1));
  const auto h2 = opoly_hyperoval(p2, std::vector<Elem>{Elem{0}, Elem{0}, Elem{1}});
  CHECK(h2 == std::vector<PointId>{pt(p2, 0, 0, 1), pt(p2, 0, 1, 0), pt(p2, 1, 0, 0), pt(p2, 1, 1, 1)});
  const Plane p3 = pg2(Field::make(3, 1));
  CHECK(code_of([&] { opoly_hyperoval(p3, std::vector<Elem>{Elem{0}, Elem{0}, Elem{1}}); }) == Errc::WrongCharacteristic);
}

TEST_CASE("search_ovals census in PG(2,2) and PG(2,4)") {
  const Plane p2 = pg2(Field::make(2, 1));
  const auto r2 = search_ovals(p2, {});
  CHECK(r2.exhausted);
  CHECK(r2.oval_count == 28);
  CHECK(r2.oval_count == 35 - 7);  // triangles: C(7,3) minus the 7 lines
  CHECK(r2.oval_count == brute_arc_count(p2, 3));
  CHECK(r2.maximal_arcs == std::map<std::size_t, std::uint64_t>{{4, 7}});

  const Plane p4 = pg2(Field::make(2, 2));
  const auto r4 = search_ovals(p4, {});
  CHECK(r4.oval_count == 1008);
  CHECK(r4.oval_count == brute_arc_count(p4, 5));
  CHECK(r4.maximal_arcs == std::map<std::size_t, std::uint64_t>{{6, 168}});
  CHECK(brute_arc_count(p4, 6) == 168);
  CHECK(r4.oval_count == 6 * r4.maximal_arcs.at(6));
  CHECK(r4.largest_arc == 6);
  // Emitted once each, sorted, lexicographic.
  CHECK(std::is_sorted(r4.ovals.begin(), r4.ovals.end()));
  CHECK(std::adjacent_find(r4.ovals.begin(), r4.ovals.end()) == r4.ovals.end());
  for (const auto& o : r4.ovals) REQUIRE(is_oval(p4, o));
  const auto cls = classify_all(p4, r4.ovals);
  CHECK(cls.conic == 1008);
  CHECK(cls.pointed_conic + cls.irregular == 0);
}

TEST_CASE("search_ovals census in odd order") {
  const Plane p3 = pg2(Field::make(3, 1));
  const auto r3 = search_ovals(p3, {});
  CHECK(r3.oval_count == 234);
  CHECK(r3.oval_count == brute_arc_count(p3, 4));
  const Plane p5 = pg2(Field::make(5, 1));
  const auto r5 = search_ovals(p5, {});
  // Every oval is a conic: one per proper conic.
  CHECK(r5.oval_count == 3125 - 25);
  std::set<std::vector<PointId>> conics;
  for (const Conic& c : enumerate_proper_conics(*p5.field())) conics.insert(conic_solutions(p5, c));
  CHECK(std::set<std::vector<PointId>>(r5.ovals.begin(), r5.ovals.end()) == conics);
}

TEST_CASE("PG(2,8) census splits into conics and pointed conics") {
  const Plane p8 = pg2(Field::make(2, 3));
  OvalSearchConfig cfg;
  const auto r = search_ovals(p8, cfg);
  CHECK(r.exhausted);
  CHECK(r.oval_count == 327040);
  CHECK(r.maximal_arcs.at(10) == 32704);
  const auto cls = classify_all(p8, r.ovals, 2);
  CHECK(cls.conic == 32704);  // q^5 - q^2 proper conics
  CHECK(cls.pointed_conic == 294336);
  CHECK(cls.irregular == 0);
  REQUIRE(cls.first[1].has_value());
  CHECK(classify_oval(p8, *cls.first[1]).cls == OvalClass::PointedConic);

  cfg.workers = 3;
  const auto r3 = search_ovals(p8, cfg);
  CHECK(r3.ovals == r.ovals);
  CHECK(r3.maximal_arcs == r.maximal_arcs);
  CHECK(r3.nodes == r.nodes);
}

TEST_CASE("search budgets and modes") {
  const Plane p4 = pg2(Field::make(2, 2));
  OvalSearchConfig cfg;
  cfg.budget = 1500;
  const auto a = search_ovals(p4, cfg);
  CHECK_FALSE(a.exhausted);
  CHECK(a.nodes <= 1500);
  cfg.workers = 4;
  const auto b = search_ovals(p4, cfg);
  CHECK(b.ovals == a.ovals);
  CHECK(b.nodes == a.nodes);

  OvalSearchConfig rnd;
  rnd.mode = plane::SearchMode::Random;
  rnd.seed = 21;
  rnd.max_ovals = 40;
  rnd.budget = 1000000;
  const auto r1 = search_ovals(p4, rnd), r2 = search_ovals(p4, rnd);
  CHECK(r1.ovals == r2.ovals);
  CHECK(r1.oval_count == 40);
  CHECK(std::set<std::vector<PointId>>(r1.ovals.begin(), r1.ovals.end()).size() == 40);
  for (const auto& o : r1.ovals) CHECK(is_oval(p4, o));
  rnd.budget = 2;
  const auto starved = search_ovals(p4, rnd);
  CHECK(starved.budget_exceeded());

  CHECK(code_of([] { search_ovals(pg2(Field::make(11, 1)), {}); }) == Errc::OrderTooLarge);
  CHECK(code_of([] { search_ovals(pg2(Field::make(2, 4)), {}); }) == Errc::OrderTooLarge);
}

TEST_CASE("ovals of the Hall plane") {
  const Plane hall = plane::hall_plane9();
  OvalSearchConfig rnd;
  rnd.mode = plane::SearchMode::Random;
  rnd.seed = 2;
  rnd.max_ovals = 10;
  rnd.budget = 10000000;
  const auto r = search_ovals(hall, rnd);
  REQUIRE(r.oval_count == 10);
  for (const auto& o : r.ovals) CHECK(is_oval(hall, o));

  OvalSearchConfig ex;
  ex.keep_ovals = true;
  const auto all = search_ovals(hall, ex);
  CHECK(all.exhausted);
  CHECK(all.oval_count > 0);
  const std::set<std::vector<PointId>> everything(all.ovals.begin(), all.ovals.end());
  for (const auto& o : r.ovals) CHECK(everything.count(o) == 1);
  for (std::size_t i = 0; i < all.ovals.size(); i += 97) CHECK(is_oval(hall, all.ovals[i]));
  CHECK_THROWS_AS(classify_oval(hall, r.ovals.front()), Error);
}

TEST_CASE("odd order ovals are conics") {
  for (auto [p, n] : {std::pair{3u, 1u}, {5u, 1u}, {7u, 1u}, {3u, 2u}}) {
    const Plane pg = pg2(Field::make(p, n));
    OvalSearchConfig rnd;
    rnd.mode = plane::SearchMode::Random;
    rnd.max_ovals = 25;
    rnd.budget = 10000000;
    for (const auto& o : search_ovals(pg, rnd).ovals) {
      CHECK(classify_oval(pg, o).cls == OvalClass::Conic);
      if (o.size() < 5) continue;
      const std::array<Coords, 5> five{pg.coords(o[0]), pg.coords(o[1]), pg.coords(o[2]), pg.coords(o[3]),
                                       pg.coords(o[4])};
      const auto fit = fit_conic_5pts(*pg.field(), five);
      REQUIRE(fit.has_value());
      for (PointId x : o) CHECK(fit->contains(pg.coords(x)));
    }
  }
}

TEST_CASE("an irregular oval in PG(2,16)") {
  const Field f16 = Field::make(2, 4);
  const Plane p16 = pg2(f16);
  const auto h = opoly_hyperoval(p16, kIrregularOpoly16);
  CHECK(h.size() == 18);
  const auto nf = naive(f16);
  // Oracle: no 17 of the 18 points lie on a common conic.
  for (std::size_t drop = 0; drop < h.size(); ++drop) {
    std::vector<std::array<std::uint32_t, 3>> rest;
    for (std::size_t i = 0; i < h.size(); ++i)
      if (i != drop) rest.push_back(raw(p16.coords(h[i])));
    CHECK_FALSE(nf.on_common_conic(rest));
  }
  for (std::size_t drop = 0; drop < h.size(); ++drop) {
    std::vector<PointId> oval = h;
    oval.erase(oval.begin() + static_cast<std::ptrdiff_t>(drop));
    CHECK(classify_oval(p16, oval).cls == OvalClass::Irregular);
  }
  // The regular hyperoval x^2 is covered by the same oracle.
  const auto reg = opoly_hyperoval(p16, std::vector<Elem>{Elem{0}, Elem{0}, Elem{1}});
  std::vector<std::array<std::uint32_t, 3>> conic_part;
  for (PointId x : reg)
    if (x != pt(p16, 0, 1, 0)) conic_part.push_back(raw(p16.coords(x)));
  CHECK(nf.on_common_conic(conic_part));
}

TEST_CASE("frame hyperoval search in PG(2,16) reaches an irregular oval") {
  const Plane p16 = pg2(Field::make(2, 4));
  const auto& f = *p16.field();
  const auto r = search_opoly_hyperovals(p16, UINT64_MAX, [&](std::span<const Elem> values) {
    const auto h = opoly_hyperoval(p16, interpolate(f, values));
    return classify_oval(p16, std::span(h).subspan(1)).cls == OvalClass::Irregular;
  });
  REQUIRE(r.opoly.has_value());
  CHECK(interpolate(f, *r.opoly) == kIrregularOpoly16);

  const Plane p4 = pg2(Field::make(2, 2));
  const auto all4 = search_opoly_hyperovals(p4, UINT64_MAX, [](auto) { return false; });
  CHECK(all4.exhausted);
  // Through a fixed 4-arc of PG(2,4): the 2 remaining points must come from
  // the 2 points off the diagonal line, so exactly one hyperoval.
  CHECK(all4.hyperovals == 1);
}
