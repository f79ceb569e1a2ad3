#include "arcmub/mub.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "arcmub/error.hpp"
#include "arcmub/parallel.hpp"

namespace arcmub::mub {

using galois::Elem;
using galois::Field;

MubVector MubVector::from_phases(unsigned order, std::vector<std::uint32_t> exponents) {
  MubVector v;
  v.entries.reserve(exponents.size());
  for (std::uint32_t& e : exponents) {
    e %= order;
    v.entries.push_back(CycInt::root_of_unity(order, e));
  }
  v.phase_order = order;
  v.phases = std::move(exponents);
  return v;
}

MubVector MubVector::standard(unsigned order, std::size_t d, std::size_t k) {
  MubVector v;
  v.entries.assign(d, CycInt(order));
  v.entries.at(k) = CycInt::from_int(order, 1);
  return v;
}

const char* provenance_name(Provenance p) noexcept {
  switch (p) {
    case Provenance::Constructed: return "constructed";
    case Provenance::Fixture: return "fixture";
    case Provenance::Imported: return "imported";
  }
  return "?";
}

namespace {

std::vector<MubVector> standard_basis(unsigned order, std::size_t d) {
  std::vector<MubVector> b;
  for (std::size_t k = 0; k < d; ++k) b.push_back(MubVector::standard(order, d, k));
  return b;
}

// Quadratic-phase basis a over the field: vector b has exponent
// Tr(a k^2 + b k) at coordinate k.
std::vector<MubVector> phase_basis(const Field& f, Elem a, unsigned order) {
  const std::uint32_t q = f.order();
  std::vector<MubVector> basis;
  for (std::uint32_t b = 0; b < q; ++b) {
    std::vector<std::uint32_t> e(q);
    for (std::uint32_t k = 0; k < q; ++k) {
      const Elem ek{k};
      e[k] = f.trace(f.add(f.mul(a, f.mul(ek, ek)), f.mul(Elem{b}, ek))).v;
    }
    basis.push_back(MubVector::from_phases(order, std::move(e)));
  }
  return basis;
}

std::optional<BigInt> positive_norm(const MubVector& u) {
  const CycInt n = inner_product(u, u);
  if (!n.is_rational() || n.coeffs().empty() || n.coeffs()[0] <= 0) return std::nullopt;
  return n.coeffs()[0];
}

std::string label(std::size_t basis, std::size_t vec) {
  return "basis " + std::to_string(basis) + " vector " + std::to_string(vec);
}

PairCheck check_basis(const MubSet& s, std::size_t a) {
  PairCheck c{a, a, true, {}};
  const auto& basis = s.bases[a];
  if (basis.size() != s.d) {
    c.passed = false;
    c.witness = "basis " + std::to_string(a) + " has " + std::to_string(basis.size()) + " vectors, expected " +
                std::to_string(s.d);
    return c;
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!positive_norm(basis[i])) {
      c.passed = false;
      c.witness = label(a, i) + ": <u|u> is not a positive integer";
      return c;
    }
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!inner_product(basis[i], basis[j]).is_zero()) {
        c.passed = false;
        c.witness = label(a, i) + " and vector " + std::to_string(j) + " are not orthogonal";
        return c;
      }
  }
  return c;
}

PairCheck check_pair(const MubSet& s, std::size_t a, std::size_t b, const std::vector<std::vector<BigInt>>& norms) {
  PairCheck c{a, b, true, {}};
  const BigInt d(s.d);
  for (std::size_t i = 0; i < s.bases[a].size(); ++i)
    for (std::size_t j = 0; j < s.bases[b].size(); ++j) {
      const auto m = inner_product(s.bases[a][i], s.bases[b][j]).magnitude_sq();
      if (m && d * *m == norms[a][i] * norms[b][j]) continue;
      c.passed = false;
      std::ostringstream w;
      w << label(a, i) << " vs " << label(b, j) << ": |<u|v>|^2 = ";
      if (m) w << *m;
      else w << "irrational";
      w << ", unbiased needs " << norms[a][i] * norms[b][j] << "/" << s.d;
      c.witness = w.str();
      return c;
    }
  return c;
}

}  // namespace

MubSet wf_mub_set(const Field& field) {
  const unsigned p = field.characteristic();
  if (p == 2)
    throw Error(Errc::EvenCharacteristic, "quadratic phases are not unbiased in characteristic 2; see char2_failure_demo");
  if (field.order() > 81) throw Error(Errc::OrderTooLarge, "MUB construction supports d <= 81");
  MubSet s;
  s.d = field.order();
  s.root_order = p;
  s.provenance = Provenance::Constructed;
  s.bases.push_back(standard_basis(p, s.d));
  for (std::uint32_t a = 0; a < field.order(); ++a) s.bases.push_back(phase_basis(field, Elem{a}, p));
  return s;
}

CycInt inner_product(const MubVector& u, const MubVector& v) {
  if (u.dim() != v.dim())
    throw Error(Errc::DimensionMismatch,
                "vectors of dimension " + std::to_string(u.dim()) + " and " + std::to_string(v.dim()));
  if (u.phases && v.phases && u.phase_order == v.phase_order) {
    const unsigned r = u.phase_order;
    std::vector<long long> counts(r, 0);
    for (std::size_t k = 0; k < u.dim(); ++k) ++counts[((*v.phases)[k] + r - (*u.phases)[k]) % r];
    return CycInt::from_exponent_counts(r, counts);
  }
  CycInt acc(u.entries.empty() ? 1 : u.entries[0].order());
  for (std::size_t k = 0; k < u.dim(); ++k) {
    if (u.entries[k].is_zero() || v.entries[k].is_zero()) continue;
    acc += u.entries[k].conj() * v.entries[k];
  }
  return acc;
}

MubReport verify_mub_set(const MubSet& s, unsigned workers) {
  MubReport r;
  r.d = s.d;
  r.bases = s.bases.size();
  for (const auto& basis : s.bases)
    for (const auto& v : basis)
      if (v.dim() != s.d) throw Error(Errc::DimensionMismatch, "vector dimension differs from d");

  const std::size_t nb = s.bases.size();
  std::vector<PairCheck> within(nb);
  parallel_for(nb, workers, [&](std::size_t a) { within[a] = check_basis(s, a); });
  r.checks = within;

  // Cross checks only make sense between well-formed bases.
  const bool bases_ok = std::all_of(within.begin(), within.end(), [](const PairCheck& c) { return c.passed; });
  if (bases_ok) {
    std::vector<std::vector<BigInt>> norms(nb);
    for (std::size_t a = 0; a < nb; ++a)
      for (const auto& v : s.bases[a]) norms[a].push_back(*positive_norm(v));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < nb; ++a)
      for (std::size_t b = a + 1; b < nb; ++b) pairs.emplace_back(a, b);
    std::vector<PairCheck> cross(pairs.size());
    parallel_for(pairs.size(), workers,
                 [&](std::size_t i) { cross[i] = check_pair(s, pairs[i].first, pairs[i].second, norms); });
    r.checks.insert(r.checks.end(), cross.begin(), cross.end());
  }
  for (const auto& c : r.checks)
    if (!c.passed) {
      r.all_passed = false;
      if (!r.first_failure) r.first_failure = c;
    }
  return r;
}

MubSet d2_fixture() {
  MubSet s;
  s.d = 2;
  s.root_order = 4;
  s.provenance = Provenance::Fixture;
  s.bases.push_back(standard_basis(4, 2));
  s.bases.push_back({MubVector::from_phases(4, {0, 0}), MubVector::from_phases(4, {0, 2})});
  s.bases.push_back({MubVector::from_phases(4, {0, 1}), MubVector::from_phases(4, {0, 3})});
  return s;
}

Char2Report char2_failure_demo(const Field& field) {
  if (field.characteristic() != 2) throw Error(Errc::WrongCharacteristic, "the failure demo is for characteristic 2");
  const std::uint32_t q = field.order();
  Char2Report r{field, 0, 0, 0, 0, 0, 0, true, std::nullopt};
  const auto survey = cyclotomic::weil_survey(field);
  std::vector<std::vector<MubVector>> bases;
  for (std::uint32_t a = 0; a < q; ++a) bases.push_back(phase_basis(field, Elem{a}, 2));
  const BigInt d(q);
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t a2 = a + 1; a2 < q; ++a2) {
      std::set<std::vector<std::uint32_t>> sa, sb;
      for (std::uint32_t b = 0; b < q; ++b) {
        sa.insert(*bases[a][b].phases);
        sb.insert(*bases[a2][b].phases);
      }
      if (sa == sb) ++r.coinciding_pairs;
      for (std::uint32_t b = 0; b < q; ++b)
        for (std::uint32_t b2 = 0; b2 < q; ++b2) {
          ++r.cross_products;
          const BigInt m = *inner_product(bases[a][b], bases[a2][b2]).magnitude_sq();
          const Elem dm = field.sub(Elem{a2}, Elem{a}), dn = field.sub(Elem{b2}, Elem{b});
          if (survey.at(dm.v, dn.v) != m) r.matches_weil_survey = false;
          if (m == 0) {
            ++r.zero;
            if (!r.zero_witness)
              r.zero_witness = "<B" + std::to_string(a) + "," + std::to_string(b) + " | B" + std::to_string(a2) + "," +
                               std::to_string(b2) + "> = 0";
          } else if (m == d * d) {
            ++r.full;
          } else if (m == d) {
            ++r.unbiased;
          } else {
            ++r.other;
          }
        }
    }
  return r;
}

AnalogyReport analogy_report(const plane::Plane& p, const arcs::OvalSearchResult& census, const MubSet* s,
                             unsigned workers) {
  AnalogyReport r;
  r.d = p.order();
  r.plane = p.name();
  if (s && s->d != r.d)
    throw Error(Errc::DimensionMismatch,
                "plane order " + std::to_string(r.d) + " vs MUB dimension " + std::to_string(s->d));
  if (census.oval_count > 0) r.oval_size = r.d + 1;
  r.largest_arc = census.largest_arc;
  r.search_exhausted = census.exhausted;
  if (s) {
    const auto rep = verify_mub_set(*s, workers);
    r.mub_verified = rep.all_passed;
    if (rep.all_passed) r.mub_count = rep.bases;
  }
  r.match = r.oval_size == r.d + 1 && (!s || r.mub_count == r.d + 1);
  if (r.largest_arc == r.d + 2)
    r.notes.push_back("largest arc is a hyperoval of size d+2 (even order); ovals have size d+1");
  if (const auto quad = plane::find_quadrilateral(p))
    r.notes.push_back("3-arc: points " + std::to_string((*quad)[0]) + ", " + std::to_string((*quad)[1]) + ", " +
                      std::to_string((*quad)[2]) + " are not collinear");
  if (s && r.mub_verified && s->bases.size() >= 3)
    r.notes.push_back("3 MUBs: bases 0, 1, 2 of the verified set are pairwise unbiased");
  if (!s) r.notes.push_back("no MUB set constructed in dimension " + std::to_string(r.d));
  return r;
}

}  // namespace arcmub::mub
