#include "arcmub/certificates.hpp"

#include <algorithm>
#include <set>

#include "arcmub/error.hpp"

namespace arcmub::cert {

namespace fs = std::filesystem;
using galois::Elem;
using plane::Plane;
using plane::PointId;

namespace {

Verdict fail(std::string why) { return {false, std::move(why)}; }

template <class T>
T get(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("field '") + key + "': " + e.what());
  }
}

std::vector<std::int64_t> int_list(const json& j, const char* key) {
  return get<std::vector<std::int64_t>>(j, key);
}

json coeffs_json(const arcs::Conic& c) {
  json out = json::array();
  for (Elem e : c.coeffs()) out.push_back(e.v);
  return out;
}

Verdict verify_oval(const json& c, const fs::path& base) {
  const Plane p = plane_from_source(c.at("plane_source"), base);
  if (c.contains("plane") && get<std::string>(c, "plane") != p.name())
    return fail("certificate names plane " + get<std::string>(c, "plane") + " but the source builds " + p.name());
  const auto raw = int_list(c, "points");
  std::vector<PointId> pts;
  for (auto v : raw) {
    if (v < 0 || static_cast<std::size_t>(v) >= p.num_points()) return fail("point " + std::to_string(v) + " is not in the plane");
    pts.push_back(static_cast<PointId>(v));
  }
  if (std::set<PointId>(pts.begin(), pts.end()).size() != pts.size()) return fail("repeated point");
  if (pts.size() != p.order() + 1u)
    return fail(std::to_string(pts.size()) + " points, an oval needs " + std::to_string(p.order() + 1));
  const auto arc = arcs::is_arc(p, pts);
  if (!arc.is_arc) {
    const auto& w = *arc.witness;
    return fail("points " + std::to_string(w[0]) + ", " + std::to_string(w[1]) + ", " + std::to_string(w[2]) +
                " are collinear");
  }
  if (!arcs::is_oval(p, pts)) return fail("not an oval");

  const json& cls = c.at("class");
  const bool even = p.order() % 2 == 0;
  std::optional<PointId> nuc;
  if (even) nuc = arcs::nucleus(p, pts);
  if (c.contains("nucleus") && !c.at("nucleus").is_null()) {
    const auto n = get<std::int64_t>(c, "nucleus");
    if (!nuc || static_cast<std::int64_t>(*nuc) != n) return fail("nucleus " + std::to_string(n) + " does not match");
  }
  if (c.contains("opoly") && !c.at("opoly").is_null()) {
    if (!p.field()) return fail("o-polynomial needs field coordinates");
    std::vector<Elem> poly;
    for (auto v : int_list(c, "opoly")) {
      if (v < 0 || static_cast<std::uint64_t>(v) >= p.field()->order()) return fail("o-polynomial coefficient out of range");
      poly.push_back(Elem{static_cast<std::uint32_t>(v)});
    }
    std::vector<PointId> h;
    try {
      h = arcs::opoly_hyperoval(p, poly);
    } catch (const Error& e) {
      return fail(e.what());
    }
    std::vector<PointId> mine = pts;
    if (nuc) mine.push_back(*nuc);
    std::sort(mine.begin(), mine.end());
    if (mine != h) return fail("oval plus nucleus is not the o-polynomial hyperoval");
  }
  if (cls.is_null()) return {};
  if (!p.has_coords()) return fail("class given for a plane without field coordinates");
  const std::string claimed = cls.get<std::string>();
  const auto got = arcs::classify_oval(p, pts);
  if (claimed != arcs::oval_class_name(got.cls))
    return fail("claimed " + claimed + ", classified " + arcs::oval_class_name(got.cls));
  if (claimed != "irregular" && c.contains("conic_coeffs") && !c.at("conic_coeffs").is_null()) {
    std::array<Elem, 6> k{};
    const auto raw_c = int_list(c, "conic_coeffs");
    if (raw_c.size() != 6) return fail("conic needs 6 coefficients");
    for (std::size_t i = 0; i < 6; ++i) {
      if (raw_c[i] < 0 || static_cast<std::uint64_t>(raw_c[i]) >= p.field()->order()) return fail("conic coefficient out of range");
      k[i] = Elem{static_cast<std::uint32_t>(raw_c[i])};
    }
    const arcs::Conic conic(*p.field(), k);
    if (!conic.proper()) return fail("conic is degenerate");
    const auto zeros = arcs::conic_solutions(p, conic);
    std::set<PointId> pool(pts.begin(), pts.end());
    if (claimed == "pointed_conic" && nuc) pool.insert(*nuc);
    for (PointId z : zeros)
      if (!pool.count(z)) return fail("conic point " + std::to_string(z) + " is missing from the certificate");
    if (claimed == "conic" && zeros.size() != pts.size()) return fail("conic and oval differ");
  }
  return {};
}

Verdict verify_desargues(const json& c, const fs::path& base) {
  const Plane p = plane_from_source(c.at("plane_source"), base);
  plane::DesarguesConfig cfg;
  auto triple = [&](const char* key) {
    const auto v = int_list(c, key);
    if (v.size() != 3) throw Error(Errc::ParseError, std::string(key) + " needs 3 points");
    std::array<PointId, 3> out{};
    for (std::size_t i = 0; i < 3; ++i) out[i] = static_cast<PointId>(v[i]);
    return out;
  };
  cfg.center = static_cast<PointId>(get<std::int64_t>(c, "center"));
  cfg.triangle1 = triple("triangle1");
  cfg.triangle2 = triple("triangle2");
  cfg.axis_points = triple("axis_points");
  std::string why;
  if (!plane::verify_desargues_violation(p, cfg, &why)) return fail(why);
  return {};
}

Verdict verify_mub(const json& c) {
  const auto s = mub::load_mub_json(c.dump());
  const auto r = mub::verify_mub_set(s);
  if (!r.all_passed) return fail(r.first_failure->witness);
  if (!r.within_bound()) return fail("more than d+1 bases");
  if (c.contains("bases_claimed") && get<std::size_t>(c, "bases_claimed") != r.bases) return fail("basis count differs");
  return {};
}

Verdict verify_one(const json& c, const fs::path& base) {
  if (!c.is_object()) throw Error(Errc::ParseError, "certificate is not an object");
  const auto type = get<std::string>(c, "type");
  try {
    if (type == "oval") return verify_oval(c, base);
    if (type == "desargues_violation") return verify_desargues(c, base);
    if (type == "mub") return verify_mub(c);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError) throw;
    return fail(e.what());
  }
  throw Error(Errc::ParseError, "unknown certificate type '" + type + "'");
}

}  // namespace

json plane_source(const Plane& p, const std::optional<std::string>& file) {
  if (file) return json{{"file", *file}};
  if (const auto* f = p.field()) return json{{"builtin", "pg2"}, {"field", f->describe()}};
  if (const auto* q = std::get_if<plane::QuasifieldKind>(&p.kind()); q && q->tag == "nearfield9")
    return json{{"builtin", "hall9"}};
  throw Error(Errc::InvalidArgument, "plane " + p.name() + " needs an incidence file to be re-verifiable");
}

Plane plane_from_source(const json& source, const fs::path& base_dir) {
  if (!source.is_object()) throw Error(Errc::ParseError, "plane_source is not an object");
  if (source.contains("file")) {
    fs::path path = get<std::string>(source, "file");
    if (path.is_relative() && !fs::exists(path)) path = base_dir / path;
    return plane::load_plane_file(path.string());
  }
  const auto kind = get<std::string>(source, "builtin");
  if (kind == "pg2") return plane::pg2(galois::Field::parse(get<std::string>(source, "field")));
  if (kind == "hall9") return plane::hall_plane9();
  throw Error(Errc::ParseError, "unknown builtin plane '" + kind + "'");
}

json oval_certificate(const Plane& p, const json& source, std::span<const PointId> oval) {
  std::vector<PointId> pts(oval.begin(), oval.end());
  std::sort(pts.begin(), pts.end());
  json c{{"type", "oval"}, {"plane", p.name()}, {"plane_source", source}, {"points", pts},
         {"class", nullptr}, {"nucleus", nullptr}, {"conic_coeffs", nullptr}};
  if (p.order() % 2 == 0) c["nucleus"] = arcs::nucleus(p, pts);
  if (!p.has_coords()) return c;
  const auto cls = arcs::classify_oval(p, pts);
  c["class"] = arcs::oval_class_name(cls.cls);
  if (cls.conic) {
    c["conic_coeffs"] = coeffs_json(*cls.conic);
  } else if (cls.cls == arcs::OvalClass::Conic && pts.size() >= 5) {
    std::array<plane::Coords, 5> five{};
    for (std::size_t i = 0; i < 5; ++i) five[i] = p.coords(pts[i]);
    if (const auto conic = arcs::fit_conic_5pts(*p.field(), five)) c["conic_coeffs"] = coeffs_json(*conic);
  }
  return c;
}

json desargues_certificate(const Plane& p, const json& source, const plane::DesarguesConfig& cfg) {
  return json{{"type", "desargues_violation"}, {"plane", p.name()},       {"plane_source", source},
              {"center", cfg.center},          {"triangle1", cfg.triangle1}, {"triangle2", cfg.triangle2},
              {"axis_points", cfg.axis_points}, {"witness", cfg.witness}};
}

json mub_certificate(const mub::MubSet& s) {
  json c = json::parse(mub::save_mub_json(s));
  c["type"] = "mub";
  return c;
}

Verdict verify_certificate(const json& doc, const fs::path& base_dir) {
  if (doc.is_object() && doc.contains("certificates")) {
    const json& list = doc.at("certificates");
    if (!list.is_array()) throw Error(Errc::ParseError, "'certificates' is not an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Verdict v = verify_one(list[i], base_dir);
      if (!v.ok) return fail("certificate " + std::to_string(i) + ": " + v.detail);
    }
    return {true, std::to_string(list.size()) + " certificates re-verified"};
  }
  Verdict v = verify_one(doc, base_dir);
  if (v.ok) v.detail = get<std::string>(doc, "type") + " certificate re-verified";
  return v;
}

}  // namespace arcmub::cert
