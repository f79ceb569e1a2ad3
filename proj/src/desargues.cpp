#include <algorithm>
#include <atomic>
#include <limits>
#include <sstream>

#include "arcmub/error.hpp"
#include "arcmub/parallel.hpp"
#include "arcmub/plane.hpp"
#include "arcmub/rng.hpp"

namespace arcmub::plane {

namespace {

struct Perspective {
  PointId center;
  PointId a1, b1, c1, a2, b2, c2;
};

enum class Outcome { Holds, Degenerate, Violation };

Outcome test_config(const Plane& plane, const Perspective& s, DesarguesConfig* out) {
  if (plane.collinear(s.a1, s.b1, s.c1) || plane.collinear(s.a2, s.b2, s.c2)) return Outcome::Degenerate;
  const PointId p = plane.meet(plane.join(s.a1, s.b1), plane.join(s.a2, s.b2));
  const PointId q = plane.meet(plane.join(s.b1, s.c1), plane.join(s.b2, s.c2));
  const PointId r = plane.meet(plane.join(s.c1, s.a1), plane.join(s.c2, s.a2));
  if (p == kNone || q == kNone || r == kNone) return Outcome::Degenerate;
  if (plane.collinear(p, q, r)) return Outcome::Holds;
  if (out) {
    out->center = s.center;
    out->triangle1 = {s.a1, s.b1, s.c1};
    out->triangle2 = {s.a2, s.b2, s.c2};
    out->axis_points = {p, q, r};
    std::ostringstream w;
    w << "axis points " << p << ", " << q << ", " << r << " are not collinear: " << r << " is off line "
      << plane.join(p, q) << " through " << p << " and " << q;
    out->witness = w.str();
  }
  return Outcome::Violation;
}

std::uint64_t per_center(std::uint64_t d) {
  const std::uint64_t triples = (d + 1) * d * (d - 1) / 6;
  const std::uint64_t pairs = d * (d - 1) / 2;
  const std::uint64_t ordered = d * (d - 1);
  return triples * pairs * ordered * ordered;
}

std::vector<PointId> without(std::span<const PointId> line, PointId p) {
  std::vector<PointId> r;
  for (PointId x : line)
    if (x != p) r.push_back(x);
  return r;
}

// Scans the configurations centred at `center` in canonical order, testing at
// most `limit`. Returns the local index of the first violation.
std::optional<std::uint64_t> scan_center(const Plane& plane, PointId center, std::uint64_t limit,
                                         DesarguesConfig* out) {
  const auto through = plane.lines_through(center);
  std::uint64_t idx = 0;
  const std::size_t nl = through.size();
  for (std::size_t i = 0; i < nl; ++i)
    for (std::size_t j = i + 1; j < nl; ++j)
      for (std::size_t k = j + 1; k < nl; ++k) {
        const auto l1 = without(plane.line(through[i]), center);
        const auto l2 = without(plane.line(through[j]), center);
        const auto l3 = without(plane.line(through[k]), center);
        for (std::size_t a = 0; a < l1.size(); ++a)
          for (std::size_t a2 = a + 1; a2 < l1.size(); ++a2)
            for (PointId b : l2)
              for (PointId b2 : l2) {
                if (b == b2) continue;
                for (PointId c : l3)
                  for (PointId c2 : l3) {
                    if (c == c2) continue;
                    if (idx >= limit) return std::nullopt;
                    const Perspective s{center, l1[a], b, c, l1[a2], b2, c2};
                    if (test_config(plane, s, out) == Outcome::Violation) return idx;
                    ++idx;
                  }
              }
      }
  return std::nullopt;
}

}  // namespace

std::uint64_t desargues_space_size(const Plane& plane) {
  if (plane.order() < 2) return 0;
  return plane.num_points() * per_center(plane.order());
}

DesarguesSearch find_desargues_violation(const Plane& plane, std::uint64_t budget, std::uint64_t seed,
                                         SearchMode mode, unsigned workers) {
  DesarguesSearch result;
  const std::uint64_t d = plane.order();
  if (budget == 0 || d < 2) return result;

  if (mode == SearchMode::Random) {
    Rng rng(seed);
    for (std::uint64_t t = 0; t < budget; ++t) {
      const PointId center = static_cast<PointId>(rng.below(plane.num_points()));
      std::vector<LineId> ls(plane.lines_through(center).begin(), plane.lines_through(center).end());
      if (ls.size() < 3) continue;
      for (std::size_t i = 0; i < 3; ++i) std::swap(ls[i], ls[i + rng.below(ls.size() - i)]);
      PointId pick[3][2];
      for (int i = 0; i < 3; ++i) {
        auto pts = without(plane.line(ls[i]), center);
        const std::size_t x = rng.below(pts.size());
        std::size_t y = rng.below(pts.size() - 1);
        if (y >= x) ++y;
        pick[i][0] = pts[x];
        pick[i][1] = pts[y];
      }
      result.trials = t + 1;
      DesarguesConfig cfg;
      const Perspective s{center, pick[0][0], pick[1][0], pick[2][0], pick[0][1], pick[1][1], pick[2][1]};
      if (test_config(plane, s, &cfg) == Outcome::Violation) {
        result.violation = std::move(cfg);
        return result;
      }
    }
    return result;
  }

  const std::uint64_t k = per_center(d);
  const std::size_t np = plane.num_points();
  std::vector<std::optional<std::uint64_t>> found(np);
  std::vector<DesarguesConfig> configs(np);
  std::atomic<std::size_t> best{np};
  parallel_for(np, workers, [&](std::size_t c) {
    if (c >= best.load()) return;
    const std::uint64_t offset = c * k;
    if (offset >= budget) return;
    const std::uint64_t limit = std::min(k, budget - offset);
    found[c] = scan_center(plane, static_cast<PointId>(c), limit, &configs[c]);
    if (found[c]) {
      std::size_t cur = best.load();
      while (c < cur && !best.compare_exchange_weak(cur, c)) {
      }
    }
  });
  const std::size_t b = best.load();
  if (b < np) {
    result.violation = configs[b];
    result.trials = b * k + *found[b] + 1;
    return result;
  }
  const std::uint64_t total = np * k;
  result.trials = std::min(budget, total);
  result.exhausted = budget >= total;
  return result;
}

bool verify_desargues_violation(const Plane& plane, const DesarguesConfig& cfg, std::string* why) {
  auto fail = [&](std::string msg) {
    if (why) *why = std::move(msg);
    return false;
  };
  const auto [a1, b1, c1] = cfg.triangle1;
  const auto [a2, b2, c2] = cfg.triangle2;
  const PointId o = cfg.center;
  const std::array<PointId, 7> seven{o, a1, b1, c1, a2, b2, c2};
  for (PointId p : seven)
    if (p >= plane.num_points()) return fail("point index out of range");
  for (PointId p : cfg.axis_points)
    if (p >= plane.num_points()) return fail("axis point index out of range");
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = i + 1; j < 7; ++j)
      if (seven[i] == seven[j]) return fail("configuration points are not distinct");
  if (!plane.collinear(o, a1, a2) || !plane.collinear(o, b1, b2) || !plane.collinear(o, c1, c2))
    return fail("triangles are not in perspective from the center");
  const LineId la = plane.join(o, a1), lb = plane.join(o, b1), lc = plane.join(o, c1);
  if (la == lb || lb == lc || la == lc) return fail("perspectivity lines are not distinct");
  if (plane.collinear(a1, b1, c1) || plane.collinear(a2, b2, c2)) return fail("degenerate triangle");
  const PointId p = plane.meet(plane.join(a1, b1), plane.join(a2, b2));
  const PointId q = plane.meet(plane.join(b1, c1), plane.join(b2, c2));
  const PointId r = plane.meet(plane.join(c1, a1), plane.join(c2, a2));
  if (cfg.axis_points != std::array<PointId, 3>{p, q, r}) return fail("axis points do not match the side intersections");
  if (plane.collinear(p, q, r)) return fail("axis points are collinear; Desargues holds here");
  return true;
}

}  // namespace arcmub::plane
