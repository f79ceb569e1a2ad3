#include <algorithm>
#include <atomic>
#include <bit>
#include <set>

#include "arcmub/arcs.hpp"
#include "arcmub/error.hpp"
#include "arcmub/parallel.hpp"
#include "arcmub/rng.hpp"

namespace arcmub::arcs {

using galois::Elem;
using galois::Field;

namespace {

constexpr std::size_t kMaxWords = 5;  // 273 points, PG(2,16)
constexpr std::uint64_t kRestartNodes = 1 << 14;

template <std::size_t W>
struct Mask {
  std::array<std::uint64_t, W> w{};

  void set(std::uint32_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  Mask& operator|=(const Mask& o) {
    for (std::size_t k = 0; k < W; ++k) w[k] |= o.w[k];
    return *this;
  }
};

struct TaskResult {
  std::vector<PointId> ovals;  // flattened, d+1 per oval
  std::uint64_t oval_count = 0;
  std::vector<std::uint64_t> maximal;  // by size
  std::uint64_t nodes = 0;
  bool ran = false;
};

// Arc extension over positions 0..N-1; position i stands for point perm[i].
// Candidates for the next point come after the last one, so each arc is
// visited once, with its members in increasing position.
template <std::size_t W>
class Extender {
 public:
  Extender(const Plane& plane, std::vector<PointId> perm) : plane_(plane), perm_(std::move(perm)) {
    const std::size_t n = plane.num_points();
    pos_.assign(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) pos_[perm_[i]] = i;
    line_mask_.resize(plane.num_lines());
    for (LineId l = 0; l < plane.num_lines(); ++l)
      for (PointId p : plane.line(l)) line_mask_[l].set(pos_[p]);
    for (std::uint32_t i = 0; i < n; ++i) all_.set(i);
    target_ = plane.order() + 1;
    maximal_.assign(plane.order() + 3, 0);
  }

  std::uint64_t cap = UINT64_MAX;
  std::uint64_t max_ovals = UINT64_MAX;
  std::function<void(std::span<const std::uint32_t>)> on_oval;

  std::uint64_t nodes() const { return nodes_; }
  std::uint64_t ovals() const { return ovals_; }
  const std::vector<std::uint64_t>& maximal() const { return maximal_; }
  PointId point(std::uint32_t position) const { return perm_[position]; }

  /// Every arc whose two least members are the given positions.
  void run_pair(std::uint32_t a, std::uint32_t b) {
    arc_[0] = a;
    arc_[1] = b;
    forbidden_[2] = line_mask_[join(a, b)];
    dfs(2);
  }

  /// Every arc.
  void run_all() {
    const std::uint32_t n = static_cast<std::uint32_t>(plane_.num_points());
    for (std::uint32_t a = 0; a < n && !stopped(); ++a)
      for (std::uint32_t b = a + 1; b < n && !stopped(); ++b) run_pair(a, b);
  }

 private:
  LineId join(std::uint32_t a, std::uint32_t b) const { return plane_.join(perm_[a], perm_[b]); }
  bool stopped() const { return nodes_ >= cap || ovals_ >= max_ovals; }

  void dfs(std::size_t k) {
    ++nodes_;
    if (k == target_) {
      ++ovals_;
      if (on_oval) on_oval(std::span<const std::uint32_t>(arc_.data(), k));
    }
    const Mask<W>& forb = forbidden_[k];
    bool complete = true;
    for (std::size_t w = 0; w < W; ++w)
      if (all_.w[w] & ~forb.w[w]) complete = false;
    if (complete) {
      ++maximal_[k];
      return;
    }
    const std::uint32_t last = arc_[k - 1];
    for (std::size_t w = (last + 1) >> 6; w < W; ++w) {
      std::uint64_t free = all_.w[w] & ~forb.w[w];
      if (w == (last + 1) >> 6 && ((last + 1) & 63)) free &= ~std::uint64_t{0} << ((last + 1) & 63);
      while (free) {
        if (stopped()) return;
        const std::uint32_t x = static_cast<std::uint32_t>(w * 64 + std::countr_zero(free));
        free &= free - 1;
        Mask<W>& next = forbidden_[k + 1];
        next = forb;
        for (std::size_t i = 0; i < k; ++i) next |= line_mask_[join(arc_[i], x)];
        arc_[k] = x;
        dfs(k + 1);
      }
    }
  }

  const Plane& plane_;
  std::vector<PointId> perm_;
  std::vector<std::uint32_t> pos_;
  std::vector<Mask<W>> line_mask_;
  Mask<W> all_;
  std::size_t target_;
  std::array<std::uint32_t, 24> arc_{};
  std::array<Mask<W>, 24> forbidden_{};
  std::uint64_t nodes_ = 0, ovals_ = 0;
  std::vector<std::uint64_t> maximal_;
};

template <std::size_t W>
OvalSearchResult exhaustive(const Plane& plane, const OvalSearchConfig& cfg) {
  const std::uint32_t n = static_cast<std::uint32_t>(plane.num_points());
  std::vector<std::pair<std::uint32_t, std::uint32_t>> prefixes;
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = a + 1; b < n; ++b) prefixes.emplace_back(a, b);
  std::vector<PointId> identity(n);
  for (std::uint32_t i = 0; i < n; ++i) identity[i] = i;

  // A task is skipped once finished tasks exceed the budget; tasks are
  // claimed in order, so every task the merge below needs has run.
  std::vector<TaskResult> results(prefixes.size());
  std::atomic<std::uint64_t> finished_nodes{0};
  parallel_for(prefixes.size(), cfg.workers, [&](std::size_t i) {
    if (finished_nodes.load() > cfg.budget) return;
    Extender<W> ext(plane, identity);
    TaskResult& r = results[i];
    if (cfg.keep_ovals)
      ext.on_oval = [&](std::span<const std::uint32_t> arc) { r.ovals.insert(r.ovals.end(), arc.begin(), arc.end()); };
    ext.run_pair(prefixes[i].first, prefixes[i].second);
    r.oval_count = ext.ovals();
    r.maximal = ext.maximal();
    r.nodes = ext.nodes();
    r.ran = true;
    finished_nodes.fetch_add(r.nodes);
  });

  OvalSearchResult out;
  out.exhausted = true;
  const std::size_t k = plane.order() + 1;
  for (const TaskResult& r : results) {
    if (!r.ran || out.nodes + r.nodes > cfg.budget) {
      out.exhausted = false;
      break;
    }
    out.nodes += r.nodes;
    out.oval_count += r.oval_count;
    for (std::size_t size = 0; size < r.maximal.size(); ++size)
      if (r.maximal[size]) out.maximal_arcs[size] += r.maximal[size];
    for (std::size_t i = 0; i < r.ovals.size(); i += k) out.ovals.emplace_back(r.ovals.begin() + i, r.ovals.begin() + i + k);
  }
  for (const auto& [size, count] : out.maximal_arcs) out.largest_arc = std::max(out.largest_arc, size);
  if (out.oval_count > 0) out.largest_arc = std::max(out.largest_arc, k);
  return out;
}

template <std::size_t W>
OvalSearchResult randomized(const Plane& plane, const OvalSearchConfig& cfg) {
  Rng rng(cfg.seed);
  const std::uint32_t n = static_cast<std::uint32_t>(plane.num_points());
  std::vector<PointId> perm(n);
  std::set<std::vector<PointId>> seen;
  OvalSearchResult out;
  while (out.nodes < cfg.budget && out.oval_count < cfg.max_ovals) {
    for (std::uint32_t i = 0; i < n; ++i) perm[i] = i;
    rng.shuffle(std::span<PointId>(perm));
    Extender<W> ext(plane, perm);
    ext.cap = std::min(kRestartNodes, cfg.budget - out.nodes);
    ext.on_oval = [&](std::span<const std::uint32_t> arc) {
      if (out.oval_count >= cfg.max_ovals) return;
      std::vector<PointId> pts;
      for (std::uint32_t p : arc) pts.push_back(ext.point(p));
      std::sort(pts.begin(), pts.end());
      if (!seen.insert(pts).second) return;
      ++out.oval_count;
      if (cfg.keep_ovals) out.ovals.push_back(std::move(pts));
    };
    ext.run_all();
    out.nodes += ext.nodes();
    const auto& m = ext.maximal();
    for (std::size_t size = 0; size < m.size(); ++size)
      if (m[size]) {
        out.maximal_arcs[size] += m[size];
        out.largest_arc = std::max(out.largest_arc, size);
      }
  }
  if (out.oval_count > 0) out.largest_arc = std::max<std::size_t>(out.largest_arc, plane.order() + 1);
  return out;
}

template <template <std::size_t> class Fn>
OvalSearchResult dispatch(const Plane& plane, const OvalSearchConfig& cfg) {
  switch ((plane.num_points() + 63) / 64) {
    case 1: return Fn<1>::run(plane, cfg);
    case 2: return Fn<2>::run(plane, cfg);
    case 3: return Fn<3>::run(plane, cfg);
    case 4: return Fn<4>::run(plane, cfg);
    case 5: return Fn<5>::run(plane, cfg);
  }
  throw Error(Errc::OrderTooLarge, "arc search supports planes of order at most 16");
}

template <std::size_t W>
struct Exhaustive {
  static OvalSearchResult run(const Plane& p, const OvalSearchConfig& c) { return exhaustive<W>(p, c); }
};
template <std::size_t W>
struct Randomized {
  static OvalSearchResult run(const Plane& p, const OvalSearchConfig& c) { return randomized<W>(p, c); }
};

}  // namespace

OvalSearchResult search_ovals(const Plane& plane, const OvalSearchConfig& cfg) {
  static_assert(kMaxWords * 64 >= 273);
  if (plane.order() > 16) throw Error(Errc::OrderTooLarge, "arc search supports planes of order at most 16");
  if (cfg.mode == plane::SearchMode::Exhaustive) {
    const unsigned limit = cfg.long_mode ? 16 : 9;
    if (plane.order() > limit)
      throw Error(Errc::OrderTooLarge, "exhaustive oval search beyond order 9 needs long mode");
    return dispatch<Exhaustive>(plane, cfg);
  }
  return dispatch<Randomized>(plane, cfg);
}

ClassCensus classify_all(const Plane& pg, std::span<const std::vector<PointId>> ovals, unsigned workers) {
  std::vector<OvalClass> cls(ovals.size());
  constexpr std::size_t kChunk = 256;
  parallel_for((ovals.size() + kChunk - 1) / kChunk, workers, [&](std::size_t c) {
    const std::size_t end = std::min(ovals.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) cls[i] = classify_oval(pg, ovals[i]).cls;
  });
  ClassCensus out;
  for (std::size_t i = 0; i < ovals.size(); ++i) {
    const auto k = static_cast<std::size_t>(cls[i]);
    (k == 0 ? out.conic : k == 1 ? out.pointed_conic : out.irregular)++;
    if (!out.first[k]) out.first[k] = ovals[i];
  }
  return out;
}

HyperovalSearch search_opoly_hyperovals(const Plane& pg, std::uint64_t budget,
                                        const std::function<bool(std::span<const Elem>)>& accept) {
  const Field* fp = pg.field();
  if (!fp) throw Error(Errc::InvalidArgument, pg.name() + " has no field coordinates");
  const Field& f = *fp;
  if (f.characteristic() != 2) throw Error(Errc::WrongCharacteristic, "hyperovals need characteristic 2");
  const std::uint32_t q = f.order();
  const std::size_t n = pg.num_points();
  using Bits = std::vector<std::uint64_t>;
  const std::size_t words = (n + 63) / 64;
  auto line_bits = [&](LineId l) { return pg.line_bits(l); };
  auto test = [](const Bits& b, PointId p) { return (b[p >> 6] >> (p & 63)) & 1; };
  auto at = [&](Elem x, Elem y, Elem z) { return pg.point_at(plane::canonicalize(f, {x, y, z})); };

  std::vector<PointId> arc{at(f.one(), Elem{0}, Elem{0}), at(Elem{0}, f.one(), Elem{0}),
                           at(Elem{0}, Elem{0}, f.one()), at(f.one(), f.one(), f.one())};
  std::vector<Elem> value(q, Elem{0});
  value[1] = f.one();
  HyperovalSearch out;
  if (q == 2) {
    out.hyperovals = 1;
    out.exhausted = true;
    if (accept(value)) out.opoly = value;
    return out;
  }
  std::vector<Bits> forbidden(q + 1, Bits(words, 0));
  for (std::size_t i = 0; i < arc.size(); ++i)
    for (std::size_t j = i + 1; j < arc.size(); ++j) {
      const auto lb = line_bits(pg.join(arc[i], arc[j]));
      for (std::size_t w = 0; w < words; ++w) forbidden[2][w] |= lb[w];
    }
  bool done = false;
  // Level t assigns f(t) for t = 2..q-1.
  std::function<void(std::uint32_t)> dfs = [&](std::uint32_t t) {
    ++out.nodes;
    if (t == q) {
      ++out.hyperovals;
      if (accept(value)) {
        out.opoly = value;
        done = true;
      }
      return;
    }
    for (std::uint32_t y = 0; y < q && !done; ++y) {
      if (out.nodes >= budget) return;
      const PointId p = at(f.one(), Elem{t}, Elem{y});
      if (test(forbidden[t], p)) continue;
      Bits& next = forbidden[t + 1];
      next = forbidden[t];
      for (PointId a : arc) {
        const auto lb = line_bits(pg.join(a, p));
        for (std::size_t w = 0; w < words; ++w) next[w] |= lb[w];
      }
      arc.push_back(p);
      value[t] = Elem{y};
      dfs(t + 1);
      arc.pop_back();
      if (done) return;
    }
  };
  dfs(2);
  out.exhausted = !done && out.nodes < budget;
  return out;
}

}  // namespace arcmub::arcs
