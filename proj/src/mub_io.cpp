#include <cmath>
#include <complex>
#include <map>

#include "arcmub/error.hpp"
#include "arcmub/mub.hpp"
#include "json.hpp"

namespace arcmub::mub {

using nlohmann::json;

namespace {

json coeffs_json(const CycInt& c) {
  json out = json::array();
  for (const BigInt& v : c.coeffs()) {
    if (v >= INT64_MIN && v <= INT64_MAX) out.push_back(static_cast<std::int64_t>(v));
    else out.push_back(v.str());
  }
  return out;
}

BigInt coeff_value(const json& v) {
  if (v.is_number_integer()) return BigInt(v.get<std::int64_t>());
  if (v.is_string()) {
    try {
      return BigInt(v.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw Error(Errc::ParseError, "coefficient is not an integer: " + v.dump());
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string save_mub_json(const MubSet& s) {
  json j;
  j["d"] = s.d;
  j["root_order"] = s.root_order;
  j["provenance"] = provenance_name(s.provenance);
  json bases = json::array();
  for (const auto& basis : s.bases) {
    json b = json::array();
    for (const auto& v : basis) {
      json vec = json::array();
      for (const auto& e : v.entries) vec.push_back(coeffs_json(e.lift(s.root_order)));
      b.push_back(std::move(vec));
    }
    bases.push_back(std::move(b));
  }
  j["bases"] = std::move(bases);
  return j.dump();
}

MubSet load_mub_json(std::string_view text) {
  const json j = parse_json(text);
  try {
    MubSet s;
    s.provenance = Provenance::Imported;
    const auto d = j.at("d").get<std::int64_t>();
    const auto r = j.at("root_order").get<std::int64_t>();
    if (d < 1 || d > 4096) throw Error(Errc::ParseError, "d out of range");
    if (r < 1 || r > static_cast<std::int64_t>(cyclotomic::kMaxOrder)) throw Error(Errc::ParseError, "root_order out of range");
    s.d = static_cast<std::size_t>(d);
    s.root_order = static_cast<unsigned>(r);
    // Entries equal to a root of unity get phase exponents.
    std::map<std::vector<BigInt>, std::uint32_t> root_index;
    for (unsigned e = 0; e < s.root_order; ++e) root_index.emplace(CycInt::root_of_unity(s.root_order, e).coeffs(), e);
    for (const json& jb : j.at("bases")) {
      std::vector<MubVector> basis;
      for (const json& jv : jb) {
        if (!jv.is_array() || jv.size() != s.d) throw Error(Errc::ParseError, "vector length differs from d");
        MubVector v;
        std::vector<std::uint32_t> phases;
        bool all_roots = true;
        for (const json& je : jv) {
          if (!je.is_array()) throw Error(Errc::ParseError, "entry is not a coefficient list");
          std::vector<BigInt> c;
          for (const json& x : je) c.push_back(coeff_value(x));
          v.entries.push_back(CycInt::from_coeffs(s.root_order, c));
          const auto it = root_index.find(v.entries.back().coeffs());
          if (it == root_index.end()) all_roots = false;
          else phases.push_back(it->second);
        }
        if (all_roots) {
          v.phase_order = s.root_order;
          v.phases = std::move(phases);
        }
        basis.push_back(std::move(v));
      }
      s.bases.push_back(std::move(basis));
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("malformed MUB file: ") + e.what());
  }
}

MubReport verify_numeric_mub_json(std::string_view text, double tolerance) {
  using C = std::complex<double>;
  const json j = parse_json(text);
  std::vector<std::vector<std::vector<C>>> bases;
  std::size_t d = 0;
  try {
    d = j.at("d").get<std::size_t>();
    for (const json& jb : j.at("bases")) {
      std::vector<std::vector<C>> basis;
      for (const json& jv : jb) {
        if (jv.size() != d) throw Error(Errc::ParseError, "vector length differs from d");
        std::vector<C> v;
        for (const json& je : jv) v.emplace_back(je.at(0).get<double>(), je.at(1).get<double>());
        double norm = 0;
        for (const C& x : v) norm += std::norm(x);
        if (norm <= 0) throw Error(Errc::ParseError, "zero vector");
        for (C& x : v) x /= std::sqrt(norm);
        basis.push_back(std::move(v));
      }
      bases.push_back(std::move(basis));
    }
  } catch (const json::exception& e) {
    throw Error(Errc::ParseError, std::string("malformed numeric MUB file: ") + e.what());
  }
  auto dot = [](const std::vector<C>& u, const std::vector<C>& v) {
    C s{0, 0};
    for (std::size_t k = 0; k < u.size(); ++k) s += std::conj(u[k]) * v[k];
    return s;
  };
  MubReport r;
  r.d = d;
  r.bases = bases.size();
  for (std::size_t a = 0; a < bases.size(); ++a) {
    PairCheck c{a, a, bases[a].size() == d, {}};
    if (!c.passed) c.witness = "basis " + std::to_string(a) + " has " + std::to_string(bases[a].size()) + " vectors";
    for (std::size_t i = 0; i < bases[a].size() && c.passed; ++i)
      for (std::size_t k = i + 1; k < bases[a].size() && c.passed; ++k)
        if (std::abs(dot(bases[a][i], bases[a][k])) > tolerance) {
          c.passed = false;
          c.witness = "basis " + std::to_string(a) + " vectors " + std::to_string(i) + ", " + std::to_string(k) +
                      " not orthogonal";
        }
    r.checks.push_back(c);
  }
  for (std::size_t a = 0; a < bases.size(); ++a)
    for (std::size_t b = a + 1; b < bases.size(); ++b) {
      PairCheck c{a, b, true, {}};
      for (std::size_t i = 0; i < bases[a].size() && c.passed; ++i)
        for (std::size_t k = 0; k < bases[b].size() && c.passed; ++k) {
          const double m = std::norm(dot(bases[a][i], bases[b][k]));
          if (std::abs(m - 1.0 / static_cast<double>(d)) > tolerance) {
            c.passed = false;
            c.witness = "basis " + std::to_string(a) + " vector " + std::to_string(i) + " vs basis " +
                        std::to_string(b) + " vector " + std::to_string(k) + ": |<u|v>|^2 = " + std::to_string(m);
          }
        }
      r.checks.push_back(c);
    }
  for (const auto& c : r.checks)
    if (!c.passed) {
      r.all_passed = false;
      if (!r.first_failure) r.first_failure = c;
    }
  return r;
}

}  // namespace arcmub::mub
