#include <sstream>

#include "arcmub/error.hpp"
#include "arcmub/plane.hpp"

namespace arcmub::plane {

Quasifield::Quasifield(std::string tag, unsigned order, std::vector<std::uint32_t> add,
                       std::vector<std::uint32_t> mul)
    : tag_(std::move(tag)), order_(order), add_(std::move(add)), mul_(std::move(mul)) {
  const std::size_t n = static_cast<std::size_t>(order) * order;
  if (order < 2 || add_.size() != n || mul_.size() != n)
    throw Error(Errc::InvalidArgument, "quasifield tables must be order x order");
  for (std::size_t i = 0; i < n; ++i)
    if (add_[i] >= order || mul_[i] >= order) throw Error(Errc::InvalidArgument, "quasifield table entry out of range");
}

Quasifield Quasifield::from_field(const galois::Field& field, std::string tag) {
  const unsigned q = field.order();
  std::vector<std::uint32_t> add(q * q), mul(q * q);
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b) {
      add[a * q + b] = field.add(galois::Elem{a}, galois::Elem{b}).v;
      mul[a * q + b] = field.mul(galois::Elem{a}, galois::Elem{b}).v;
    }
  if (tag.empty()) tag = "GF(" + std::to_string(q) + ")";
  return Quasifield(std::move(tag), q, std::move(add), std::move(mul));
}

namespace {

std::string triple(std::uint32_t a, std::uint32_t b, std::uint32_t c) {
  std::ostringstream os;
  os << "(" << a << "," << b << "," << c << ")";
  return os.str();
}

}  // namespace

AxiomReport Quasifield::verify() const {
  const std::uint32_t q = order_;
  AxiomReport r;
  auto check = [&](std::string name, auto&& find_witness) {
    std::string w = find_witness();
    r.checks.push_back({std::move(name), w.empty(), std::move(w)});
  };

  check("additive identity", [&]() -> std::string {
    for (std::uint32_t a = 0; a < q; ++a)
      if (add(a, 0) != a || add(0, a) != a) return "a=" + std::to_string(a);
    return {};
  });
  check("additive inverses", [&]() -> std::string {
    for (std::uint32_t a = 0; a < q; ++a) {
      bool found = false;
      for (std::uint32_t b = 0; b < q && !found; ++b) found = add(a, b) == 0 && add(b, a) == 0;
      if (!found) return "a=" + std::to_string(a);
    }
    return {};
  });
  check("additive commutativity", [&]() -> std::string {
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b)
        if (add(a, b) != add(b, a)) return triple(a, b, 0);
    return {};
  });
  check("additive associativity", [&]() -> std::string {
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b)
        for (std::uint32_t c = 0; c < q; ++c)
          if (add(add(a, b), c) != add(a, add(b, c))) return triple(a, b, c);
    return {};
  });
  check("zero absorbs", [&]() -> std::string {
    for (std::uint32_t a = 0; a < q; ++a)
      if (mul(0, a) != 0 || mul(a, 0) != 0) return "a=" + std::to_string(a);
    return {};
  });
  check("multiplicative identity", [&]() -> std::string {
    for (std::uint32_t a = 0; a < q; ++a)
      if (mul(1, a) != a || mul(a, 1) != a) return "a=" + std::to_string(a);
    return {};
  });
  check("multiplicative closure", [&]() -> std::string {
    for (std::uint32_t a = 1; a < q; ++a)
      for (std::uint32_t b = 1; b < q; ++b)
        if (mul(a, b) == 0) return triple(a, b, 0);
    return {};
  });
  check("multiplicative associativity", [&]() -> std::string {
    for (std::uint32_t a = 1; a < q; ++a)
      for (std::uint32_t b = 1; b < q; ++b)
        for (std::uint32_t c = 1; c < q; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c))) return triple(a, b, c);
    return {};
  });
  check("multiplicative inverses", [&]() -> std::string {
    for (std::uint32_t a = 1; a < q; ++a) {
      bool found = false;
      for (std::uint32_t b = 1; b < q && !found; ++b) found = mul(a, b) == 1 && mul(b, a) == 1;
      if (!found) return "a=" + std::to_string(a);
    }
    return {};
  });
  check("right distributivity", [&]() -> std::string {
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b)
        for (std::uint32_t c = 0; c < q; ++c)
          if (mul(add(a, b), c) != add(mul(a, c), mul(b, c))) return triple(a, b, c);
    return {};
  });
  // x o a = x o b + c has exactly one solution x whenever a != b.
  check("unique slope intersection", [&]() -> std::string {
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) {
        if (a == b) continue;
        for (std::uint32_t c = 0; c < q; ++c) {
          unsigned solutions = 0;
          for (std::uint32_t x = 0; x < q; ++x) solutions += mul(x, a) == add(mul(x, b), c);
          if (solutions != 1) return triple(a, b, c);
        }
      }
    return {};
  });
  return r;
}

Quasifield nearfield9() {
  const auto f = galois::Field::make(3, 2, std::vector<unsigned>{1, 0, 1});
  const unsigned q = f.order();
  std::vector<std::uint32_t> add(q * q), mul(q * q);
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b) {
      const galois::Elem ea{a}, eb{b};
      add[a * q + b] = f.add(ea, eb).v;
      const galois::Elem left = f.is_square(eb) ? ea : f.frobenius(ea);
      mul[a * q + b] = f.mul(left, eb).v;
    }
  Quasifield nf("nearfield9", q, std::move(add), std::move(mul));
  const auto report = nf.verify();
  for (const auto& c : report.checks)
    if (!c.passed) throw Error(Errc::AxiomFailure, "near-field " + c.name + " fails at " + c.witness);
  return nf;
}

Plane quasifield_plane(const Quasifield& qf) {
  const auto report = qf.verify();
  for (const auto& c : report.checks)
    if (!c.passed) throw Error(Errc::AxiomFailure, "quasifield " + c.name + " fails at " + c.witness);

  const std::uint32_t q = qf.order();
  const PointId slope_base = q * q;
  const PointId infinity = q * q + q;
  std::vector<std::vector<PointId>> lines;
  lines.reserve(q * q + q + 1);
  for (std::uint32_t m = 0; m < q; ++m)
    for (std::uint32_t b = 0; b < q; ++b) {
      std::vector<PointId> pts;
      for (std::uint32_t x = 0; x < q; ++x) pts.push_back(x * q + qf.add(qf.mul(x, m), b));
      pts.push_back(slope_base + m);
      lines.push_back(std::move(pts));
    }
  for (std::uint32_t c = 0; c < q; ++c) {
    std::vector<PointId> pts;
    for (std::uint32_t y = 0; y < q; ++y) pts.push_back(c * q + y);
    pts.push_back(infinity);
    lines.push_back(std::move(pts));
  }
  {
    std::vector<PointId> pts;
    for (std::uint32_t m = 0; m < q; ++m) pts.push_back(slope_base + m);
    pts.push_back(infinity);
    lines.push_back(std::move(pts));
  }
  const std::string name = qf.tag() == "nearfield9" ? "Hall(9)" : "TP(" + qf.tag() + ")";
  Plane plane = Plane::from_lines(name, q, std::move(lines), QuasifieldKind{qf.tag()});
  const auto axioms = verify_plane_axioms(plane);
  for (const auto& c : axioms.checks)
    if (!c.passed) throw Error(Errc::AxiomFailure, "plane " + c.name + ": " + c.witness);
  return plane;
}

Plane hall_plane9() { return quasifield_plane(nearfield9()); }

}  // namespace arcmub::plane
