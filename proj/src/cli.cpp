#include "arcmub/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "arcmub/arcs.hpp"
#include "arcmub/certificates.hpp"
#include "arcmub/cyclotomic.hpp"
#include "arcmub/error.hpp"
#include "arcmub/galois.hpp"
#include "arcmub/mub.hpp"
#include "arcmub/plane.hpp"

namespace arcmub::cli {

namespace fs = std::filesystem;
using cert::json;
using galois::Elem;
using galois::Field;
using plane::Plane;
using plane::PointId;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::optional<unsigned> p, n, order;
  std::string in, out, mode = "exhaustive", format, plane = "pg";
  std::optional<std::uint64_t> budget;
  std::uint64_t seed = 0;
  std::optional<unsigned> workers;
  bool long_mode = false;

  bool survey = false, verify = false, d2 = false, unchecked = false, numeric = false;
  std::vector<unsigned> points, opoly, at;
  double tolerance = 1e-9;
  std::uint64_t count = 1;
};

struct Report {
  json doc = json::object();
  std::string text;
  int code = 0;
};

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

template <class Range>
std::string list(const Range& r) {
  std::vector<std::string> parts;
  for (const auto& x : r) parts.push_back(std::to_string(x));
  return join(parts, " ");
}

json big_json(const cyclotomic::BigInt& v) {
  if (v >= INT64_MIN && v <= INT64_MAX) return static_cast<std::int64_t>(v);
  return v.str();
}

unsigned resolve_workers(const Options& o) {
  if (o.workers) {
    if (*o.workers == 0) throw UsageError("--workers must be at least 1");
    return *o.workers;
  }
  if (const char* env = std::getenv("ARCMUB_WORKERS"); env && *env) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1 || v > 4096) throw UsageError("ARCMUB_WORKERS must be a positive integer");
    return static_cast<unsigned>(v);
  }
  return 1;
}

plane::SearchMode search_mode(const Options& o) {
  return o.mode == "random" ? plane::SearchMode::Random : plane::SearchMode::Exhaustive;
}

Field field_of(const Options& o) {
  if (o.order) {
    unsigned q = *o.order, p = 0, n = 0;
    for (unsigned d = 2; d <= q && !p; ++d)
      if (q % d == 0) p = d;
    if (!p) throw UsageError("--order must be a prime power >= 2");
    while (q % p == 0) {
      q /= p;
      ++n;
    }
    if (q != 1) throw UsageError("--order " + std::to_string(*o.order) + " is not a prime power");
    if (o.p && *o.p != p) throw UsageError("--p disagrees with --order");
    return Field::make(p, n);
  }
  if (!o.p) throw UsageError("--p (or --order) is required");
  return Field::make(*o.p, o.n.value_or(1));
}

struct PlaneChoice {
  Plane plane;
  json source;
};

PlaneChoice plane_of(const Options& o) {
  if (!o.in.empty()) {
    Plane pl = plane::load_plane_file(o.in, o.unchecked);
    return {pl, cert::plane_source(pl, o.in)};
  }
  if (o.plane == "hall") return {plane::hall_plane9(), json{{"builtin", "hall9"}}};
  Plane pl = plane::pg2(field_of(o));
  return {pl, cert::plane_source(pl)};
}

Plane pg_of(const Options& o) {
  if (!o.in.empty() || o.plane != "pg") throw UsageError("this command needs PG(2,q): give --p/--n or --order");
  return plane::pg2(field_of(o));
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

// Appends certificates after checking each one re-verifies.
bool attach_certificates(Report& r, const std::vector<json>& certs) {
  bool ok = true;
  json arr = json::array();
  for (const json& c : certs) {
    const auto v = cert::verify_certificate(c, fs::current_path());
    if (!v.ok) {
      ok = false;
      r.text += "certificate self-check failed: " + v.detail + "\n";
    }
    arr.push_back(c);
  }
  r.doc["certificates"] = std::move(arr);
  if (!ok) r.code = 1;
  return ok;
}

// field

Report cmd_field(const Options& o) {
  const Field f = field_of(o);
  const unsigned q = f.order();
  Report r;
  std::vector<bool> seen(q, false);
  for (unsigned k = 0; k + 1 < q; ++k) seen[f.exp(k).v] = true;
  const bool cyclic = std::count(seen.begin() + 1, seen.end(), true) == static_cast<long>(q - 1);
  r.doc["field"] = f.describe();
  r.doc["order"] = q;
  r.doc["characteristic"] = f.characteristic();
  r.doc["degree"] = f.degree();
  r.doc["primitive"] = f.primitive().v;
  r.doc["cyclic_group"] = cyclic;
  json elems = json::array();
  std::ostringstream t;
  t << f.describe() << "\n";
  t << "order " << q << ", characteristic " << f.characteristic() << ", degree " << f.degree() << "\n";
  t << "primitive element: " << f.primitive().v << "\n";
  t << "nonzero elements form a cyclic group: " << yes_no(cyclic) << "\n";
  t << std::setw(6) << "index" << "  " << std::setw(12) << "coeffs" << std::setw(6) << "log" << std::setw(7) << "trace"
    << std::setw(8) << "square" << "\n";
  for (unsigned i = 0; i < q; ++i) {
    const Elem e{i};
    json je{{"index", i}, {"coeffs", f.coeffs(e)}, {"trace", f.trace(e).v}, {"square", f.is_square(e)}};
    je["log"] = i ? json(f.log(e)) : json(nullptr);
    t << std::setw(6) << i << "  " << std::setw(12) << list(f.coeffs(e)) << std::setw(6)
      << (i ? std::to_string(f.log(e)) : "-") << std::setw(7) << f.trace(e).v << std::setw(8) << yes_no(f.is_square(e))
      << "\n";
    elems.push_back(std::move(je));
  }
  r.doc["elements"] = std::move(elems);
  r.text = t.str();
  r.code = cyclic ? 0 : 1;
  return r;
}

// weil

Report cmd_weil(const Options& o) {
  const Field f = field_of(o);
  const unsigned q = f.order();
  Report r;
  r.doc["field"] = f.describe();
  std::ostringstream t;
  if (!o.at.empty()) {
    if (o.at.size() != 2 || o.at[0] >= q || o.at[1] >= q) throw UsageError("--at needs two element indices m,n below q");
    const auto w = cyclotomic::weil_sum(f, Elem{o.at[0]}, Elem{o.at[1]});
    const auto m = w.magnitude_sq();
    r.doc["m"] = o.at[0];
    r.doc["n"] = o.at[1];
    r.doc["sum"] = w.serialize();
    r.doc["magnitude_sq"] = m ? big_json(*m) : json(nullptr);
    t << "W(" << o.at[0] << "," << o.at[1] << ") over " << f.describe() << " = " << w.serialize() << "\n";
    t << "|W|^2 = " << (m ? m->str() : "not rational") << "\n";
    r.text = t.str();
    return r;
  }
  const auto s = cyclotomic::weil_survey(f);
  json rows = json::array();
  for (unsigned m = 0; m < q; ++m) {
    json row = json::array();
    for (unsigned n = 0; n < q; ++n) row.push_back(s.at(m, n) ? big_json(*s.at(m, n)) : json(nullptr));
    rows.push_back(std::move(row));
  }
  if (o.survey) r.doc["magnitude_sq"] = std::move(rows);
  r.doc["alarms"] = s.alarms;
  const bool odd = f.characteristic() != 2;
  bool holds;
  if (odd) {
    holds = s.uniform_magnitude && s.alarms == 0;
    r.doc["uniform_magnitude"] = s.uniform_magnitude;
  } else {
    holds = s.single_nonzero_per_row && s.alarms == 0;
    r.doc["single_nonzero_per_row"] = s.single_nonzero_per_row;
    r.doc["row_peak"] = s.row_peak ? big_json(*s.row_peak) : json(nullptr);
  }
  if (o.survey) {
    t << "|W(m,n)|^2 over " << f.describe() << " (rows m, columns n)\n";
    std::size_t width = 1;
    for (const auto& v : s.magnitude_sq) width = std::max(width, v ? v->str().size() : 1);
    width += 1;
    t << std::setw(4) << "m\\n";
    for (unsigned n = 0; n < q; ++n) t << std::setw(static_cast<int>(width)) << n;
    t << "\n";
    for (unsigned m = 0; m < q; ++m) {
      t << std::setw(4) << m;
      for (unsigned n = 0; n < q; ++n)
        t << std::setw(static_cast<int>(width)) << (s.at(m, n) ? s.at(m, n)->str() : "?");
      t << "\n";
    }
  }
  if (odd)
    t << (holds ? "all m!=0 rows equal " + std::to_string(q) : "m!=0 rows are NOT uniformly " + std::to_string(q)) << "\n";
  else
    t << (holds ? "each m!=0 row vanishes at all but one n (peak " + s.row_peak->str() + ")"
                : "the single-nonzero pattern FAILS")
      << "\n";
  r.text = t.str();
  r.code = holds ? 0 : 1;
  return r;
}

// conic

Report cmd_conic(const Options& o) {
  const Plane pg = pg_of(o);
  const Field& f = *pg.field();
  const json source = cert::plane_source(pg);
  const unsigned q = f.order();
  Report r;
  std::ostringstream t;
  const auto pts = arcs::canonical_conic(pg);
  const bool arc = arcs::is_arc(pg, pts).is_arc;
  const bool size_ok = pts.size() == q + 1u;
  bool ok = arc && size_ok && arcs::canonical_conic_form(f).proper();
  r.doc["plane"] = pg.name();
  r.doc["points"] = pts;
  r.doc["size"] = pts.size();
  r.doc["is_arc"] = arc;
  t << "conic z1 z2 = z3^2 in " << pg.name() << ": " << pts.size() << " points, arc: " << yes_no(arc) << "\n";
  std::vector<json> certs{cert::oval_certificate(pg, source, pts)};
  if (q % 2 == 0) {
    const PointId nuc = arcs::nucleus(pg, pts);
    std::vector<PointId> h = pts;
    h.push_back(nuc);
    const bool hyper = arcs::is_arc(pg, h).is_arc && h.size() == q + 2u;
    ok = ok && hyper;
    const auto pc = arcs::pointed_conic(pg, pts, pts.front());
    const auto cls = arcs::classify_oval(pg, pc);
    r.doc["nucleus"] = nuc;
    r.doc["hyperoval"] = hyper;
    r.doc["pointed_conic"] = {{"removed", pts.front()}, {"class", arcs::oval_class_name(cls.cls)}};
    t << "tangents concur at the nucleus " << nuc << "; conic + nucleus is a " << h.size()
      << "-arc: " << yes_no(hyper) << "\n";
    t << "pointed conic (nucleus in, point " << pts.front() << " out) classifies as " << arcs::oval_class_name(cls.cls)
      << "\n";
    certs.push_back(cert::oval_certificate(pg, source, pc));
  } else {
    std::string why;
    try {
      arcs::nucleus(pg, pts);
      ok = false;
      why = "tangents concur, unexpected for odd order";
    } catch (const Error& e) {
      if (e.code() != Errc::OddOrder) throw;
      why = "tangents are not concurrent (odd order)";
    }
    r.doc["nucleus"] = nullptr;
    t << why << "\n";
  }
  if (!attach_certificates(r, certs)) ok = false;
  r.text += t.str();
  if (!ok) r.code = 1;
  return r;
}

// oval-census

json census_json(const Plane& p, const arcs::OvalSearchResult& s, const std::optional<arcs::ClassCensus>& cls,
                 plane::SearchMode mode) {
  json c{{"plane", p.name()},
         {"order", p.order()},
         {"mode", mode == plane::SearchMode::Exhaustive ? "exhaustive" : "random"},
         {"exhausted", s.exhausted},
         {"nodes", s.nodes},
         {"ovals", s.oval_count},
         {"largest_arc", s.largest_arc}};
  json arcs_by_size = json::array();
  for (const auto& [size, count] : s.maximal_arcs) arcs_by_size.push_back({{"size", size}, {"count", count}});
  c["maximal_arcs"] = std::move(arcs_by_size);
  if (cls)
    c["classes"] = {{"conic", cls->conic}, {"pointed_conic", cls->pointed_conic}, {"irregular", cls->irregular}};
  else
    c["classes"] = nullptr;
  if (mode == plane::SearchMode::Random && !s.exhausted && s.oval_count == 0) c["status"] = "budget_exceeded";
  return c;
}

std::string census_text(const json& c) {
  std::ostringstream t;
  t << "oval census of " << c["plane"].get<std::string>() << " (order " << c["order"] << ")\n";
  t << "mode " << c["mode"].get<std::string>() << ", "
    << (c["exhausted"].get<bool>() ? "search space exhausted" : "within budget, not exhaustive") << ", nodes "
    << c["nodes"] << "\n";
  t << "ovals: " << c["ovals"] << "\n";
  t << "complete arcs by size:";
  for (const auto& e : c["maximal_arcs"]) t << " " << e["size"] << ":" << e["count"];
  t << "\nlargest arc: " << c["largest_arc"] << "\n";
  if (!c["classes"].is_null())
    t << "classes: conic " << c["classes"]["conic"] << ", pointed_conic " << c["classes"]["pointed_conic"]
      << ", irregular " << c["classes"]["irregular"] << "\n";
  if (c.contains("status")) t << "no oval found within budget\n";
  return t.str();
}

Report cmd_oval_census(const Options& o, unsigned workers) {
  const auto [pl, source] = plane_of(o);
  arcs::OvalSearchConfig cfg;
  cfg.mode = search_mode(o);
  cfg.budget = o.budget.value_or(UINT64_MAX);
  cfg.seed = o.seed;
  cfg.workers = workers;
  cfg.long_mode = o.long_mode;
  cfg.max_ovals = std::max<std::uint64_t>(1, o.count);
  const auto s = arcs::search_ovals(pl, cfg);
  std::optional<arcs::ClassCensus> cls;
  std::vector<json> certs;
  if (pl.has_coords()) {
    cls = arcs::classify_all(pl, s.ovals, workers);
    for (const auto& first : cls->first)
      if (first) certs.push_back(cert::oval_certificate(pl, source, *first));
  } else {
    for (std::size_t i = 0; i < s.ovals.size() && i < std::max<std::uint64_t>(1, o.count); ++i)
      certs.push_back(cert::oval_certificate(pl, source, s.ovals[i]));
  }
  Report r;
  r.doc["census"] = census_json(pl, s, cls, cfg.mode);
  r.text = census_text(r.doc["census"]);
  attach_certificates(r, certs);
  r.text += "certificates: " + std::to_string(certs.size()) + (r.code ? " (self-check FAILED)" : " re-verified") + "\n";
  return r;
}

// classify

Report cmd_classify(const Options& o) {
  const Plane pg = pg_of(o);
  const Field& f = *pg.field();
  const json source = cert::plane_source(pg);
  std::vector<PointId> oval;
  json c;
  Report r;
  if (!o.opoly.empty()) {
    std::vector<Elem> poly;
    for (unsigned v : o.opoly) poly.push_back(f.element(v));
    const auto h = arcs::opoly_hyperoval(pg, poly);
    oval.assign(h.begin() + 1, h.end());
    c = cert::oval_certificate(pg, source, oval);
    c["opoly"] = o.opoly;
    r.doc["hyperoval"] = h;
  } else if (!o.points.empty()) {
    oval.assign(o.points.begin(), o.points.end());
    c = cert::oval_certificate(pg, source, oval);
  } else {
    throw UsageError("classify needs --points or --opoly");
  }
  r.doc["class"] = c["class"];
  r.text = "oval of " + pg.name() + " classifies as " + c["class"].get<std::string>() + "\n";
  if (!c["nucleus"].is_null()) r.text += "nucleus: " + c["nucleus"].dump() + "\n";
  if (!c["conic_coeffs"].is_null()) r.text += "conic coefficients: " + c["conic_coeffs"].dump() + "\n";
  attach_certificates(r, {c});
  return r;
}

// plane

Report axiom_report(const Plane& p, const plane::AxiomReport& rep) {
  Report r;
  std::ostringstream t;
  t << "plane " << p.name() << " order " << p.order() << ": " << p.num_points() << " points, " << p.num_lines()
    << " lines\n";
  json checks = json::array();
  for (const auto& c : rep.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"witness", c.witness}});
    t << (c.passed ? "  pass  " : "  FAIL  ") << c.name << (c.passed ? "" : ": " + c.witness) << "\n";
  }
  t << (rep.all_passed() ? "all projective-plane axioms hold\n" : "axiom failure\n");
  r.doc["plane"] = p.name();
  r.doc["order"] = p.order();
  r.doc["points"] = p.num_points();
  r.doc["lines"] = p.num_lines();
  r.doc["axioms"] = std::move(checks);
  r.doc["all_passed"] = rep.all_passed();
  r.text = t.str();
  r.code = rep.all_passed() ? 0 : 1;
  return r;
}

Report cmd_plane_build(const Options& o) {
  const auto [pl, source] = plane_of(o);
  Report r = axiom_report(pl, plane::verify_plane_axioms(pl));
  r.doc["plane_source"] = source;
  return r;
}

Report cmd_plane_verify(Options o) {
  if (o.in.empty()) throw UsageError("plane verify needs --in");
  o.unchecked = true;
  const auto [pl, source] = plane_of(o);
  Report r = axiom_report(pl, plane::verify_plane_axioms(pl));
  r.doc["plane_source"] = source;
  return r;
}

// ptr

Report cmd_ptr(const Options& o) {
  const auto [pl, source] = plane_of(o);
  const auto frame = plane::standard_frame(pl);
  const auto ring = plane::extract_ternary_ring(pl, frame);
  const auto axioms = plane::verify_ptr_axioms(ring);
  const auto props = plane::ptr_properties(ring);
  Report r;
  std::ostringstream t;
  t << "planar ternary ring of " << pl.name() << " (frame " << frame.origin << " " << frame.x_ideal << " "
    << frame.y_ideal << " " << frame.unit << ")\n";
  t << "ternary ring axioms: " << (axioms.all_passed() ? "pass" : "FAIL") << "\n";
  json jp = json::array();
  for (const auto& c : props.checks) {
    jp.push_back({{"name", c.name}, {"holds", c.holds}, {"witness", c.witness}});
    t << "  " << std::left << std::setw(30) << c.name << std::right << (c.holds ? "holds" : "fails: " + c.witness)
      << "\n";
  }
  t << (props.all_hold() ? "all field properties hold\n" : "at least one field property fails\n");
  r.doc["plane"] = pl.name();
  r.doc["plane_source"] = source;
  r.doc["frame"] = {frame.origin, frame.x_ideal, frame.y_ideal, frame.unit};
  r.doc["axioms_passed"] = axioms.all_passed();
  r.doc["properties"] = std::move(jp);
  r.doc["field_properties_hold"] = props.all_hold();
  r.text = t.str();
  r.code = axioms.all_passed() ? 0 : 1;
  return r;
}

// desargues

Report cmd_desargues(const Options& o, unsigned workers) {
  const auto [pl, source] = plane_of(o);
  const auto mode = search_mode(o);
  const std::uint64_t budget = o.budget.value_or(mode == plane::SearchMode::Random ? 1000000 : UINT64_MAX);
  const auto s = plane::find_desargues_violation(pl, budget, o.seed, mode, workers);
  Report r;
  r.doc["plane"] = pl.name();
  r.doc["mode"] = o.mode;
  r.doc["trials"] = s.trials;
  r.doc["exhausted"] = s.exhausted;
  std::vector<json> certs;
  if (s.violation) {
    r.doc["status"] = "violation";
    r.text = "Desargues violation in " + pl.name() + ": center " + std::to_string(s.violation->center) +
             ", triangles (" + list(s.violation->triangle1) + ") and (" + list(s.violation->triangle2) +
             "), axis points " + list(s.violation->axis_points) + " not collinear\n";
    certs.push_back(cert::desargues_certificate(pl, source, *s.violation));
  } else if (s.exhausted) {
    r.doc["status"] = "none";
    r.text = "no Desargues violation among all " + std::to_string(s.trials) + " configurations of " + pl.name() + "\n";
  } else {
    r.doc["status"] = "inconclusive";
    r.text = "no violation within " + std::to_string(s.trials) + " configurations (inconclusive)\n";
  }
  attach_certificates(r, certs);
  return r;
}

// mub

Report mub_summary(const mub::MubSet& s, bool verify, unsigned workers) {
  Report r;
  r.doc = cert::mub_certificate(s);
  std::ostringstream t;
  t << "d = " << s.d << ", " << s.bases.size() << " bases (" << mub::provenance_name(s.provenance) << ", entries in Z[zeta_"
    << s.root_order << "])\n";
  if (verify) {
    const auto rep = mub::verify_mub_set(s, workers);
    r.doc["verification"] = {{"bases", rep.bases},
                             {"checks", rep.checks.size()},
                             {"all_passed", rep.all_passed},
                             {"complete", rep.complete()},
                             {"witness", rep.first_failure ? json(rep.first_failure->witness) : json(nullptr)}};
    if (rep.all_passed)
      t << rep.bases << " bases, all unbiased" << (rep.complete() ? " (complete set)" : "") << "\n";
    else
      t << "verification FAILED: " << rep.first_failure->witness << "\n";
    r.code = rep.all_passed ? 0 : 1;
  }
  r.text = t.str();
  return r;
}

Report cmd_mub(const Options& o, unsigned workers) {
  if (!o.in.empty()) {
    std::ifstream f(o.in);
    if (!f) throw UsageError("cannot read " + o.in);
    std::stringstream buf;
    buf << f.rdbuf();
    if (o.numeric) {
      const auto rep = mub::verify_numeric_mub_json(buf.str(), o.tolerance);
      Report r;
      r.doc = {{"d", rep.d}, {"bases", rep.bases}, {"all_passed", rep.all_passed}, {"tolerance", o.tolerance}};
      r.text = std::to_string(rep.bases) + " bases, " +
               (rep.all_passed ? "all unbiased within tolerance\n" : "FAILED: " + rep.first_failure->witness + "\n");
      r.code = rep.all_passed ? 0 : 1;
      return r;
    }
    return mub_summary(mub::load_mub_json(buf.str()), true, workers);
  }
  if (o.d2) return mub_summary(mub::d2_fixture(), o.verify, workers);
  const Field f = field_of(o);
  if (f.characteristic() != 2) return mub_summary(mub::wf_mub_set(f), o.verify, workers);

  const auto d = mub::char2_failure_demo(f);
  Report r;
  r.doc = {{"field", f.describe()},
           {"cross_products", d.cross_products},
           {"zero", d.zero},
           {"full", d.full},
           {"unbiased", d.unbiased},
           {"other", d.other},
           {"coinciding_pairs", d.coinciding_pairs},
           {"matches_weil_survey", d.matches_weil_survey},
           {"zero_witness", d.zero_witness ? json(*d.zero_witness) : json(nullptr)}};
  std::ostringstream t;
  t << "quadratic phases over " << f.describe() << " with entries (-1)^Tr(a k^2 + b k):\n";
  t << "  cross inner products: " << d.cross_products << " (|.|^2 = 0: " << d.zero << ", = d^2: " << d.full
    << ", = d: " << d.unbiased << ", other: " << d.other << ")\n";
  t << "  coinciding basis pairs: " << d.coinciding_pairs << "\n";
  if (d.zero_witness) t << "  exact zero: " << *d.zero_witness << "\n";
  t << "  magnitudes match the Weil survey: " << yes_no(d.matches_weil_survey) << "\n";
  t << (d.failed() ? "not mutually unbiased in characteristic 2\n" : "unexpectedly unbiased\n");
  r.text = t.str();
  if (o.verify && d.failed()) r.code = 1;
  return r;
}

// analogy

Report cmd_analogy(const Options& o, unsigned workers) {
  const auto [pl, source] = plane_of(o);
  arcs::OvalSearchConfig cfg;
  cfg.mode = search_mode(o);
  cfg.budget = o.budget.value_or(UINT64_MAX);
  cfg.seed = o.seed;
  cfg.workers = workers;
  cfg.long_mode = o.long_mode;
  cfg.keep_ovals = cfg.mode == plane::SearchMode::Random;
  const auto s = arcs::search_ovals(pl, cfg);
  std::optional<mub::MubSet> set;
  const unsigned d = pl.order();
  if (const Field* f = pl.field()) {
    if (d == 2) set = mub::d2_fixture();
    else if (f->characteristic() != 2) set = mub::wf_mub_set(*f);
  }
  const auto a = mub::analogy_report(pl, s, set ? &*set : nullptr, workers);
  Report r;
  r.doc = {{"d", a.d},
           {"plane", a.plane},
           {"oval_size", a.oval_size ? json(*a.oval_size) : json(nullptr)},
           {"largest_arc", a.largest_arc},
           {"search_exhausted", a.search_exhausted},
           {"mub_count", a.mub_count ? json(*a.mub_count) : json(nullptr)},
           {"mub_verified", a.mub_verified},
           {"match", a.match},
           {"notes", a.notes}};
  std::ostringstream t;
  t << "d = " << a.d << " (" << a.plane << ")\n";
  t << "  oval side: " << (a.oval_size ? "ovals of size " + std::to_string(*a.oval_size) : "no oval found")
    << ", largest arc " << a.largest_arc << (a.search_exhausted ? " (exhaustive)" : " (within budget)") << "\n";
  t << "  MUB side:  "
    << (a.mub_count ? std::to_string(*a.mub_count) + " verified bases" : set ? "verification failed" : "no construction")
    << "\n";
  for (const auto& n : a.notes) t << "  note: " << n << "\n";
  t << "  cardinalities agree: " << yes_no(a.match) << "\n";
  r.text = t.str();
  r.code = a.match ? 0 : 1;
  return r;
}

// reproduce-table

struct Cell {
  std::string value;  // yes, no, or inconclusive (...)
  std::string evidence;
  std::optional<std::size_t> certificate;
};

Report cmd_reproduce_table(const Options& o, unsigned workers) {
  static const char* kRows[3] = {"ordinary conic", "pointed-conic", "irregular oval"};
  static const char* kCols[4] = {"1", "2", "3", ">=4"};
  // The published grid, rows by class and columns by n.
  static const bool kPaper[3][4] = {{true, true, true, true}, {false, false, true, true}, {false, false, false, true}};
  Cell cells[3][4];
  std::vector<json> certs;
  json censuses = json::array();

  for (unsigned n = 1; n <= 3; ++n) {
    const Plane pg = plane::pg2(Field::make(2, n));
    const json source = cert::plane_source(pg);
    arcs::OvalSearchConfig cfg;
    cfg.budget = o.budget.value_or(UINT64_MAX);
    cfg.workers = workers;
    const auto s = arcs::search_ovals(pg, cfg);
    const auto cls = arcs::classify_all(pg, s.ovals, workers);
    censuses.push_back(census_json(pg, s, cls, cfg.mode));
    const std::uint64_t counts[3] = {cls.conic, cls.pointed_conic, cls.irregular};
    for (int row = 0; row < 3; ++row) {
      Cell& c = cells[row][n - 1];
      if (counts[row] > 0) {
        c.value = "yes";
        c.certificate = certs.size();
        c.evidence = std::to_string(counts[row]) + " of " + std::to_string(s.oval_count) + " ovals of " + pg.name();
        certs.push_back(cert::oval_certificate(pg, source, *cls.first[row]));
      } else if (s.exhausted) {
        c.value = "no";
        c.evidence = "exhaustive: none among all " + std::to_string(s.oval_count) + " ovals of " + pg.name();
      } else {
        c.value = "inconclusive (budget exhausted)";
        c.evidence = "none among the " + std::to_string(s.oval_count) + " ovals found within budget";
      }
    }
  }

  const Plane p16 = plane::pg2(Field::make(2, 4));
  const json src16 = cert::plane_source(p16);
  const auto conic = arcs::canonical_conic(p16);
  cells[0][3] = {"yes", "canonical conic of " + p16.name(), certs.size()};
  certs.push_back(cert::oval_certificate(p16, src16, conic));
  cells[1][3] = {"yes", "canonical conic plus nucleus minus a point, " + p16.name(), certs.size()};
  certs.push_back(cert::oval_certificate(p16, src16, arcs::pointed_conic(p16, conic, conic.front())));
  if (!o.long_mode) {
    cells[2][3] = {"inconclusive (long mode required)", "run with --long to search " + p16.name(), std::nullopt};
  } else {
    const auto& f = *p16.field();
    const auto h = arcs::search_opoly_hyperovals(p16, o.budget.value_or(UINT64_MAX), [&](std::span<const Elem> v) {
      std::vector<Elem> vals(v.begin(), v.end());
      const auto hyper = arcs::opoly_hyperoval(p16, arcs::interpolate(f, vals));
      return arcs::classify_oval(p16, std::span(hyper).subspan(1)).cls == arcs::OvalClass::Irregular;
    });
    if (h.opoly) {
      const auto poly = arcs::interpolate(f, *h.opoly);
      const auto hyper = arcs::opoly_hyperoval(p16, poly);
      json c = cert::oval_certificate(p16, src16, std::span(hyper).subspan(1));
      json coeffs = json::array();
      for (Elem e : poly) coeffs.push_back(e.v);
      c["opoly"] = coeffs;
      cells[2][3] = {"yes", "o-polynomial hyperoval of " + p16.name() + " found after " + std::to_string(h.nodes) + " nodes",
                     certs.size()};
      certs.push_back(std::move(c));
    } else if (h.exhausted) {
      cells[2][3] = {"no", "exhaustive: no frame hyperoval of " + p16.name() + " gives an irregular oval", std::nullopt};
    } else {
      cells[2][3] = {"inconclusive (budget exhausted)", std::to_string(h.nodes) + " nodes searched", std::nullopt};
    }
  }

  Report r;
  bool agrees = true;
  json grid = json::array();
  std::ostringstream t;
  t << std::left << std::setw(16) << "n";
  for (const char* col : kCols) t << std::setw(6) << col;
  t << "\n";
  for (int row = 0; row < 3; ++row) {
    t << std::setw(16) << kRows[row];
    json jrow = json::array();
    for (int col = 0; col < 4; ++col) {
      const Cell& c = cells[row][col];
      t << std::setw(6) << c.value;
      jrow.push_back({{"column", kCols[col]},
                      {"value", c.value},
                      {"evidence", c.evidence},
                      {"certificate", c.certificate ? json(*c.certificate) : json(nullptr)}});
      if ((c.value == "yes" && !kPaper[row][col]) || (c.value == "no" && kPaper[row][col])) agrees = false;
    }
    t << "\n";
    grid.push_back({{"row", kRows[row]}, {"cells", std::move(jrow)}});
  }
  t << std::right << "\n";
  for (int row = 0; row < 3; ++row)
    for (int col = 0; col < 4; ++col)
      t << kRows[row] << ", n" << (col == 3 ? "" : "=") << kCols[col] << ": " << cells[row][col].evidence << "\n";
  r.doc["table"] = std::move(grid);
  r.doc["censuses"] = std::move(censuses);
  r.doc["matches_published_table"] = agrees;
  r.text = t.str();
  attach_certificates(r, certs);
  r.text += "certificates: " + std::to_string(certs.size()) + (r.code ? ", self-check FAILED" : ", all re-verified") + "\n";
  r.text += agrees ? "grid agrees with the published table\n" : "grid DISAGREES with the published table\n";
  if (!agrees) r.code = 1;
  return r;
}

// verify-cert

Report cmd_verify_cert(const Options& o) {
  if (o.in.empty()) throw UsageError("verify-cert needs a certificate path");
  std::ifstream f(o.in);
  if (!f) throw UsageError("cannot read " + o.in);
  json doc;
  try {
    doc = json::parse(f);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("invalid JSON: ") + e.what());
  }
  const auto v = cert::verify_certificate(doc, fs::path(o.in).parent_path());
  Report r;
  r.doc = {{"certificate", o.in}, {"verified", v.ok}, {"detail", v.detail}};
  r.text = (v.ok ? "OK: " : "FAILED: ") + v.detail + "\n";
  r.code = v.ok ? 0 : 1;
  return r;
}

bool usage_code(Errc c) {
  switch (c) {
    case Errc::ParseError:
    case Errc::InvalidArgument:
    case Errc::OrderTooLarge:
    case Errc::NotPrime:
    case Errc::NotIrreducible:
    case Errc::DegreeMismatch:
    case Errc::FieldMismatch:
    case Errc::EvenCharacteristic:
    case Errc::WrongCharacteristic:
    case Errc::DimensionMismatch:
    case Errc::UnknownPoint:
    case Errc::DuplicatePoints:
      return true;
    default:
      return false;
  }
}

void add_field_opts(CLI::App* c, Options& o) {
  c->add_option("--p", o.p, "characteristic");
  c->add_option("--n,--k", o.n, "extension degree");
  c->add_option("--order", o.order, "field or plane order (prime power)");
}

void add_plane_opts(CLI::App* c, Options& o) {
  add_field_opts(c, o);
  c->add_option("--plane", o.plane, "built-in plane when --in is absent")->check(CLI::IsMember({"pg", "hall"}));
  c->add_option("--in", o.in, "incidence file");
}

void add_search_opts(CLI::App* c, Options& o) {
  c->add_option("--mode", o.mode, "search mode")->check(CLI::IsMember({"exhaustive", "random"}));
  c->add_option("--budget", o.budget, "node or configuration budget");
  c->add_option("--seed", o.seed, "random seed");
  c->add_flag("--long", o.long_mode, "allow long-running searches");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"arcmub: arcs, ovals and mutually unbiased bases over finite fields", "arcmub"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--out", o.out, "output path (default: standard output)");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--workers", o.workers, "parallel partition width (fallback: ARCMUB_WORKERS)");

  auto* field = app.add_subcommand("field", "field tables and description");
  add_field_opts(field, o);

  auto* weil = app.add_subcommand("weil", "quadratic Weil sums");
  add_field_opts(weil, o);
  weil->add_flag("--survey", o.survey, "print the full |W(m,n)|^2 table");
  weil->add_option("--at", o.at, "single sum at m,n")->delimiter(',');

  auto* conic = app.add_subcommand("conic", "canonical conic, nucleus and pointed conic");
  add_field_opts(conic, o);

  auto* census = app.add_subcommand("oval-census", "search and count ovals");
  add_plane_opts(census, o);
  add_search_opts(census, o);
  census->add_option("--count", o.count, "random mode: distinct ovals to collect; certificates to emit");

  auto* classify = app.add_subcommand("classify", "classify an oval of PG(2,q)");
  add_field_opts(classify, o);
  classify->add_option("--points", o.points, "oval point ids")->delimiter(',');
  classify->add_option("--opoly", o.opoly, "o-polynomial coefficients (element indices, low degree first); the oval omits the least point")
      ->delimiter(',');

  auto* plane_cmd = app.add_subcommand("plane", "build, verify or save projective planes");
  plane_cmd->require_subcommand(1);
  auto* build = plane_cmd->add_subcommand("build", "construct a plane and check its axioms");
  add_plane_opts(build, o);
  auto* verify = plane_cmd->add_subcommand("verify", "check the axioms of an incidence file");
  verify->add_option("--in", o.in, "incidence file")->required();
  auto* save = plane_cmd->add_subcommand("save", "write a plane as an incidence file");
  add_plane_opts(save, o);

  auto* ptr = app.add_subcommand("ptr", "planar ternary ring and its field properties");
  add_plane_opts(ptr, o);

  auto* desargues = app.add_subcommand("desargues", "search for a Desargues violation");
  add_plane_opts(desargues, o);
  add_search_opts(desargues, o);

  auto* mub_cmd = app.add_subcommand("mub", "complete sets of mutually unbiased bases");
  add_field_opts(mub_cmd, o);
  mub_cmd->add_flag("--verify", o.verify, "verify unbiasedness exactly");
  mub_cmd->add_flag("--d2", o.d2, "the dimension-2 fixture");
  mub_cmd->add_option("--in", o.in, "MUB file to verify");
  mub_cmd->add_flag("--numeric", o.numeric, "the --in file holds floating-point [re,im] entries");
  mub_cmd->add_option("--tolerance", o.tolerance, "tolerance for --numeric");

  auto* analogy = app.add_subcommand("analogy", "oval size next to MUB count");
  add_plane_opts(analogy, o);
  add_search_opts(analogy, o);

  auto* table = app.add_subcommand("reproduce-table", "yes/no grid of oval classes in PG(2,2^n)");
  add_search_opts(table, o);

  auto* vc = app.add_subcommand("verify-cert", "re-verify a JSON certificate");
  vc->add_option("path,--in", o.in, "certificate file")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "arcmub: " << e.what() << "\n" << "run 'arcmub --help' for usage\n";
    return 2;
  }

  Report r;
  std::string command;
  unsigned workers = 1;
  try {
    workers = resolve_workers(o);
    if (*field) command = "field", r = cmd_field(o);
    else if (*weil) command = "weil", r = cmd_weil(o);
    else if (*conic) command = "conic", r = cmd_conic(o);
    else if (*census) command = "oval-census", r = cmd_oval_census(o, workers);
    else if (*classify) command = "classify", r = cmd_classify(o);
    else if (*build) command = "plane build", r = cmd_plane_build(o);
    else if (*verify) command = "plane verify", r = cmd_plane_verify(o);
    else if (*save) {
      command = "plane save";
      const auto [pl, source] = plane_of(o);
      std::ostringstream s;
      plane::save_plane(pl, s);
      r.text = s.str();
      r.doc = {{"plane", pl.name()}, {"incidence", s.str()}};
    } else if (*ptr) command = "ptr", r = cmd_ptr(o);
    else if (*desargues) command = "desargues", r = cmd_desargues(o, workers);
    else if (*mub_cmd) command = "mub", r = cmd_mub(o, workers);
    else if (*analogy) command = "analogy", r = cmd_analogy(o, workers);
    else if (*table) command = "reproduce-table", r = cmd_reproduce_table(o, workers);
    else if (*vc) command = "verify-cert", r = cmd_verify_cert(o);
  } catch (const UsageError& e) {
    err << "arcmub: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "arcmub: " << e.what() << "\n";
    return usage_code(e.code()) ? 2 : 1;
  }

  std::string format = o.format;
  if (format.empty()) format = fs::path(o.out).extension() == ".json" ? "json" : "text";
  std::string body;
  const json run_meta{{"tool", "arcmub"}, {"version", kVersion}, {"command", command}, {"seed", o.seed}, {"workers", workers}};
  if (format == "json") {
    r.doc["run"] = run_meta;
    body = r.doc.dump(2) + "\n";
  } else {
    body = r.text;
    if (command != "plane save")
      body += "# arcmub " + std::string(kVersion) + " " + command + " seed " + std::to_string(o.seed) + " workers " +
              std::to_string(workers) + "\n";
  }
  if (o.out.empty()) {
    out << body;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f || !(f << body)) {
      err << "arcmub: cannot write " << o.out << "\n";
      return 2;
    }
  }
  return r.code;
}

}  // namespace arcmub::cli
