// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "arcmub/arcs.hpp"
#include "arcmub/certificates.hpp"
#include "arcmub/cli.hpp"
#include "arcmub/cyclotomic.hpp"
#include "arcmub/error.hpp"
#include "arcmub/mub.hpp"
#include "arcmub/plane.hpp"
#include "oracles.hpp"

using namespace arcmub;
using arcs::OvalClass;
using galois::Elem;
using galois::Field;
using plane::Coords;
using plane::Plane;
using plane::PointId;
using nlohmann::json;

namespace {

// Thrown by expect() with the reason a criterion failed.
struct Miss : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Miss(what);
}

Field gf(unsigned q) {
  unsigned p = 2;
  while (q % p) ++p;
  unsigned n = 0;
  for (unsigned r = q; r > 1; r /= p) ++n;
  return Field::make(p, n);
}

std::string qs(unsigned q) { return "q=" + std::to_string(q); }

oracle::NaiveField naive(const Field& f) { return {f.characteristic(), f.modulus()}; }

int cli(const std::vector<std::string>& args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  if (out) *out = o.str();
  return code;
}

std::filesystem::path scratch() {
  static const auto dir = [] {
    auto d = std::filesystem::temp_directory_path() / ("arcmub_accept_" + std::to_string(::getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir;
}

// 1
std::string conic_cardinality() {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u}) {
    const Plane pg = plane::pg2(gf(q));
    const auto c = arcs::canonical_conic(pg);
    expect(c.size() == q + 1, qs(q) + ": conic has " + std::to_string(c.size()) + " points");
    expect(arcs::is_arc(pg, c).is_arc, qs(q) + ": conic is not an arc");
  }
  return "q in {2,3,4,5,7,8,9,16}: q+1 points, arc";
}

// 2
std::string determinant_identities() {
  std::uint64_t cases = 0;
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    const Field f = gf(q);
    const auto nf = naive(f);
    auto row = [&](std::uint32_t s) { return Coords{f.mul(Elem{s}, Elem{s}), f.one(), Elem{s}}; };
    const Coords top{f.one(), f.zero(), f.zero()};
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) {
        expect(arcs::det3(f, top, row(a), row(b)).v == nf.sub(b, a), qs(q) + ": two-parameter determinant");
        for (std::uint32_t c = 0; c < q; ++c, ++cases)
          expect(arcs::det3(f, row(a), row(b), row(c)).v == nf.mul(nf.mul(nf.sub(a, b), nf.sub(b, c)), nf.sub(c, a)),
                 qs(q) + ": three-parameter determinant");
      }
  }
  return std::to_string(cases) + " parameter triples, q <= 9";
}

// 3
std::string nucleus_behavior() {
  for (unsigned q : {2u, 4u, 8u, 16u}) {
    const Plane pg = plane::pg2(gf(q));
    auto c = arcs::canonical_conic(pg);
    const PointId n = arcs::nucleus(pg, c);
    for (PointId x : c) {
      const auto t = arcs::tangent_lines(pg, c, x);
      expect(t.tangents.size() == 1 && pg.incident(n, t.tangents[0]), qs(q) + ": tangent misses the nucleus");
    }
    c.push_back(n);
    expect(c.size() == q + 2 && arcs::is_arc(pg, c).is_arc, qs(q) + ": conic + nucleus is not a (q+2)-arc");
  }
  for (unsigned q : {3u, 5u, 7u, 9u}) {
    const Plane pg = plane::pg2(gf(q));
    bool odd = false;
    try {
      arcs::nucleus(pg, arcs::canonical_conic(pg));
    } catch (const Error& e) {
      odd = e.code() == Errc::OddOrder;
    }
    expect(odd, qs(q) + ": expected OddOrder");
  }
  return "concurrent for q in {2,4,8,16}, OddOrder for q in {3,5,7,9}";
}

// 4
std::string pointed_conic_dichotomy() {
  for (unsigned q : {4u, 8u, 16u}) {
    const Plane pg = plane::pg2(gf(q));
    const auto c = arcs::canonical_conic(pg);
    const OvalClass want = q == 4 ? OvalClass::Conic : OvalClass::PointedConic;
    for (PointId x : c) {
      const auto got = arcs::classify_oval(pg, arcs::pointed_conic(pg, c, x)).cls;
      expect(got == want, qs(q) + ": pointed conic classified " + arcs::oval_class_name(got));
    }
  }
  return "GF(4) conic; GF(8), GF(16) pointed_conic (every removed point)";
}

// 5
std::string table_reproduction() {
  std::ostringstream note;
  for (unsigned n : {1u, 2u, 3u}) {
    const Plane pg = plane::pg2(Field::make(2, n));
    const auto t0 = std::chrono::steady_clock::now();
    const auto s = arcs::search_ovals(pg, {});
    const auto cls = arcs::classify_all(pg, s.ovals);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    expect(s.exhausted, pg.name() + ": census not exhaustive");
    expect(cls.conic > 0 && cls.irregular == 0, pg.name() + ": conic/irregular counts");
    expect((cls.pointed_conic > 0) == (n == 3), pg.name() + ": pointed_conic count " + std::to_string(cls.pointed_conic));
    note << pg.name() << " " << cls.conic << "/" << cls.pointed_conic << "/" << cls.irregular;
    if (n == 3) note << " in " << std::fixed << std::setprecision(1) << secs << " s";
    note << "; ";
  }
  // n = 4 fast path: a supplied o-polynomial checked by construction and classification.
  const Plane p16 = plane::pg2(Field::make(2, 4));
  std::vector<Elem> poly;
  for (std::uint32_t v : {0, 0, 7, 0, 1, 0, 10, 0, 3, 0, 6, 0, 15, 0, 7}) poly.push_back(Elem{v});
  const auto h = arcs::opoly_hyperoval(p16, poly);
  expect(arcs::classify_oval(p16, std::span(h).subspan(1)).cls == OvalClass::Irregular, "PG(2,16) o-polynomial oval");
  std::string grid;
  expect(cli({"reproduce-table"}, &grid) == 0, "reproduce-table exit code");
  expect(grid.find("inconclusive (long mode required)") != std::string::npos, "n>=4 irregular cell without --long");
  note << "PG(2,16) supplied o-polynomial irregular";
  return note.str();
}

// 6
std::string census_cross_checks() {
  const Plane p2 = plane::pg2(Field::make(2, 1));
  const auto nf = naive(*p2.field());
  auto raw = [&](PointId x) {
    const auto& c = p2.coords(x);
    return std::array<std::uint32_t, 3>{c[0].v, c[1].v, c[2].v};
  };
  // Ovals of PG(2,2) are the non-collinear triples: C(7,3) minus the 7 lines.
  std::uint64_t triangles = 0;
  for (PointId a = 0; a < 7; ++a)
    for (PointId b = a + 1; b < 7; ++b)
      for (PointId c = b + 1; c < 7; ++c) triangles += nf.det3(raw(a), raw(b), raw(c)) != 0;
  const auto s2 = arcs::search_ovals(p2, {});
  expect(triangles == 35 - 7 && s2.oval_count == triangles, "PG(2,2): " + std::to_string(s2.oval_count) + " ovals");
  const auto s4 = arcs::search_ovals(plane::pg2(Field::make(2, 2)), {});
  const auto it = s4.maximal_arcs.find(6);
  const std::uint64_t hyper = it == s4.maximal_arcs.end() ? 0 : it->second;
  expect(s4.oval_count == 1008, "PG(2,4): " + std::to_string(s4.oval_count) + " ovals");
  expect(hyper == 168 && s4.oval_count == 6 * hyper, "PG(2,4): " + std::to_string(hyper) + " hyperovals");
  return "PG(2,2) 28 = C(7,3)-7; PG(2,4) 1008 = 6 x 168";
}

// 7
std::string weil_sums() {
  for (unsigned q : {3u, 5u, 9u, 27u}) {
    const auto s = cyclotomic::weil_survey(gf(q));
    for (std::uint32_t m = 1; m < q; ++m)
      for (std::uint32_t n = 0; n < q; ++n)
        expect(s.at(m, n) && *s.at(m, n) == q, qs(q) + ": |W|^2 != q at m=" + std::to_string(m));
  }
  for (unsigned q : {2u, 4u, 8u, 16u}) {
    const auto s = cyclotomic::weil_survey(gf(q));
    for (std::uint32_t m = 1; m < q; ++m) {
      unsigned nonzero = 0;
      for (std::uint32_t n = 0; n < q; ++n) {
        expect(s.at(m, n).has_value(), qs(q) + ": irrational magnitude");
        if (*s.at(m, n) != 0) ++nonzero;
      }
      expect(nonzero == 1, qs(q) + ": row m=" + std::to_string(m) + " has " + std::to_string(nonzero) + " nonzero");
    }
  }
  return "odd q: |W|^2 = q; q = 2^k: one nonzero per row";
}

// 8
std::string mub_completeness() {
  for (unsigned d : {3u, 5u, 7u, 9u, 25u, 27u}) {
    const auto r = mub::verify_mub_set(mub::wf_mub_set(gf(d)));
    expect(r.bases == d + 1 && r.all_passed && r.complete(), "d=" + std::to_string(d));
  }
  const auto r2 = mub::verify_mub_set(mub::d2_fixture());
  expect(r2.bases == 3 && r2.all_passed, "d=2 fixture");
  for (unsigned q : {2u, 4u, 8u}) {
    const auto c = mub::char2_failure_demo(gf(q));
    expect(c.zero > 0 && c.zero_witness.has_value(), qs(q) + ": no exact zero");
  }
  return "d+1 bases for d in {3,5,7,9,25,27}; d=2 fixture 3 bases; zeros at q=2,4,8";
}

// 9
std::string hall_plane() {
  const auto qf = plane::nearfield9();
  expect(qf.verify().all_passed(), "nearfield9 axioms");
  const Plane hall = plane::hall_plane9();
  expect(hall.num_points() == 91 && hall.num_lines() == 91, "91 points and lines");
  for (plane::LineId l = 0; l < hall.num_lines(); ++l) expect(hall.line(l).size() == 10, "10 points per line");
  expect(plane::verify_plane_axioms(hall).all_passed(), "Hall plane axioms");
  const auto v = plane::find_desargues_violation(hall, UINT64_MAX, 0);
  expect(v.violation.has_value(), "no Desargues violation found");
  expect(plane::verify_desargues_violation(hall, *v.violation), "violation does not re-verify");
  const auto cert = cert::desargues_certificate(hall, cert::plane_source(hall), *v.violation);
  expect(cert::verify_certificate(cert, ".").ok, "violation certificate");
  const auto hp = plane::ptr_properties(plane::extract_ternary_ring(hall, plane::standard_frame(hall)));
  const Plane pg9 = plane::pg2(Field::make(3, 2));
  const auto gp = plane::ptr_properties(plane::extract_ternary_ring(pg9, plane::standard_frame(pg9)));
  expect(!hp.all_hold(), "Hall PTR has all field properties");
  expect(gp.all_hold(), "PG(2,9) PTR lacks a field property");
  std::string failing;
  for (const auto& c : hp.checks)
    if (!c.holds) failing += (failing.empty() ? "" : ", ") + c.name;
  return "violation after " + std::to_string(v.trials) + " configurations; Hall PTR fails " + failing;
}

// 10
std::string hall_ovals() {
  const auto dir = scratch();
  const std::string inc = (dir / "hall.inc").string(), out = (dir / "hall_ovals.json").string();
  expect(cli({"plane", "save", "--plane", "hall", "--out", inc}) == 0, "saving the Hall plane");
  expect(cli({"oval-census", "--in", inc, "--mode", "random", "--seed", "1", "--count", "5", "--out", out}) == 0,
         "random oval search");
  std::ifstream f(out);
  const json doc = json::parse(f);
  expect(doc["certificates"].size() == 5, "5 ovals requested, " + std::to_string(doc["certificates"].size()) + " emitted");
  const Plane hall = plane::load_plane_file(inc);
  for (const auto& c : doc["certificates"])
    expect(arcs::is_oval(hall, c["points"].get<std::vector<PointId>>()), "emitted set is not an oval");
  expect(cli({"verify-cert", out}) == 0, "verify-cert on the emitted certificates");
  arcs::OvalSearchConfig cfg;
  cfg.keep_ovals = false;
  const auto all = arcs::search_ovals(hall, cfg);
  expect(all.exhausted && all.oval_count > 0, "exhaustive Hall census");
  return "5 ten-point ovals from seeded random search re-verified; exhaustive census " +
         std::to_string(all.oval_count) + " ovals";
}

// 11
std::string analogy() {
  std::ostringstream note;
  for (unsigned d : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    const Field f = gf(d);
    const Plane pg = plane::pg2(f);
    arcs::OvalSearchConfig cfg;
    cfg.keep_ovals = false;
    const auto s = arcs::search_ovals(pg, cfg);
    std::optional<mub::MubSet> set;
    if (d == 2) set = mub::d2_fixture();
    else if (f.characteristic() != 2) set = mub::wf_mub_set(f);
    const auto a = mub::analogy_report(pg, s, set ? &*set : nullptr);
    expect(a.search_exhausted && a.oval_size == d + 1, "d=" + std::to_string(d) + ": oval size");
    if (set) expect(a.mub_verified && a.mub_count == d + 1, "d=" + std::to_string(d) + ": MUB count");
    expect(a.match, "d=" + std::to_string(d) + ": no match");
    note << " d=" << d << ":" << d + 1 << "/" << (set ? std::to_string(*a.mub_count) : "-");
  }
  return "oval size/MUB count" + note.str();
}

// 12
std::string determinism() {
  for (const char* n : {"1", "2", "3"}) {
    std::string ref;
    for (const char* w : {"1", "4", "8"}) {
      std::string out;
      expect(cli({"oval-census", "--p", "2", "--n", n, "--workers", w, "--format", "json"}, &out) == 0, "census run");
      json doc = json::parse(out);
      expect(doc["run"]["workers"] == std::stoi(w), "worker count not recorded");
      doc.erase("run");
      const std::string body = doc.dump();
      if (ref.empty()) ref = body;
      expect(body == ref, std::string("PG(2,2^") + n + ") output differs at " + w + " workers");
    }
  }
  return "PG(2,2), PG(2,4), PG(2,8) censuses identical at 1, 4, 8 workers";
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<std::string()>>> criteria = {
      {"conic cardinality and arc property", conic_cardinality},
      {"determinant identities", determinant_identities},
      {"nucleus behavior", nucleus_behavior},
      {"pointed-conic dichotomy", pointed_conic_dichotomy},
      {"table reproduction", table_reproduction},
      {"census cross-checks", census_cross_checks},
      {"Weil sums", weil_sums},
      {"MUB completeness", mub_completeness},
      {"Hall plane of order 9", hall_plane},
      {"oval search in the Hall plane", hall_ovals},
      {"analogy report", analogy},
      {"determinism across worker counts", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = true;
    try {
      detail = criteria[i].second();
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2zu  %-34s %7.2f s  %s\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].first, secs, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  std::filesystem::remove_all(scratch());
  return failed ? 1 : 0;
}
