#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>

#include "arcmub/error.hpp"
#include "arcmub/plane.hpp"

namespace arcmub::plane {

void save_plane(const Plane& plane, std::ostream& out) {
  out << "plane " << plane.name() << " order " << plane.order() << '\n';
  for (LineId l = 0; l < plane.num_lines(); ++l) {
    out << 'L' << l << ':';
    for (PointId p : plane.line(l)) out << ' ' << p;
    out << '\n';
  }
}

void save_plane_file(const Plane& plane, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::InvalidArgument, "cannot open " + path + " for writing");
  save_plane(plane, out);
}

// Records are `L<i>: p ...` with strictly increasing labels; each record is
// one line of the plane in file order. A file that does not end in a newline
// is treated as truncated.
Plane load_plane(std::istream& in, bool unchecked) {
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (text.empty()) throw Error(Errc::ParseError, "empty incidence file");
  if (text.back() != '\n') throw Error(Errc::ParseError, "file does not end with a newline (truncated?)");

  std::istringstream lines(text);
  std::string raw;
  std::size_t lineno = 0;
  bool have_header = false;
  std::string name;
  long long order = 0;
  long long last_label = -1;
  std::vector<std::vector<PointId>> plane_lines;

  auto fail = [&](const std::string& msg) {
    throw Error(Errc::ParseError, "line " + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(lines, raw)) {
    ++lineno;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string head;
    if (!(ls >> head)) continue;
    if (!have_header) {
      std::string kw;
      if (head != "plane" || !(ls >> name >> kw >> order) || kw != "order" || order < 2 || order > 64)
        fail("expected header `plane <name> order <d>`");
      std::string extra;
      if (ls >> extra) fail("trailing text after header");
      have_header = true;
      continue;
    }
    if (head.size() < 3 || head.front() != 'L' || head.back() != ':') fail("expected `L<i>:`");
    long long label = -1;
    try {
      std::size_t used = 0;
      label = std::stoll(head.substr(1, head.size() - 2), &used);
      if (used != head.size() - 2) fail("bad line label");
    } catch (const std::logic_error&) {
      fail("bad line label");
    }
    if (label <= last_label) fail("line labels must be strictly increasing");
    last_label = label;
    const long long npoints = order * order + order + 1;
    std::vector<PointId> pts;
    std::string tok;
    while (ls >> tok) {
      long long v = -1;
      try {
        std::size_t used = 0;
        v = std::stoll(tok, &used);
        if (used != tok.size()) fail("bad point index `" + tok + "`");
      } catch (const std::logic_error&) {
        fail("bad point index `" + tok + "`");
      }
      if (v < 0 || v >= npoints) fail("point index " + tok + " out of range");
      if (!pts.empty() && static_cast<PointId>(v) <= pts.back()) fail("point indices must be sorted and distinct");
      pts.push_back(static_cast<PointId>(v));
    }
    if (pts.empty()) fail("line has no points");
    plane_lines.push_back(std::move(pts));
  }
  if (!have_header) throw Error(Errc::ParseError, "missing header");

  Plane plane = Plane::from_lines(name, static_cast<unsigned>(order), std::move(plane_lines), Imported{});
  if (!unchecked) {
    const auto report = verify_plane_axioms(plane);
    for (const auto& c : report.checks)
      if (!c.passed) throw Error(Errc::AxiomFailure, c.name + ": " + c.witness);
  }
  return plane;
}

Plane load_plane_file(const std::string& path, bool unchecked) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::ParseError, "cannot open " + path);
  return load_plane(in, unchecked);
}

}  // namespace arcmub::plane
