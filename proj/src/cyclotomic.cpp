#include "arcmub/cyclotomic.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <iomanip>
#include <numbers>
#include <numeric>
#include <sstream>

#include "arcmub/error.hpp"

namespace arcmub::cyclotomic {

namespace {

struct OrderData {
  unsigned phi = 0;
  std::vector<long long> poly;                // Phi_m, degree phi
  std::vector<std::vector<long long>> power;  // reduced zeta^e for e in [0, 2m)
};

std::vector<long long> poly_divide_monic(std::vector<long long> num, const std::vector<long long>& den) {
  const std::size_t dd = den.size() - 1;
  std::vector<long long> quot(num.size() - dd, 0);
  for (std::size_t k = num.size(); k-- > dd;) {
    const long long c = num[k];
    quot[k - dd] = c;
    for (std::size_t i = 0; i <= dd; ++i) num[k - dd + i] -= c * den[i];
  }
  return quot;
}

std::array<OrderData, kMaxOrder + 1> build_tables() {
  std::array<OrderData, kMaxOrder + 1> t{};
  for (unsigned m = 1; m <= kMaxOrder; ++m) {
    std::vector<long long> xm(m + 1, 0);
    xm[0] = -1;
    xm[m] = 1;
    for (unsigned d = 1; d < m; ++d)
      if (m % d == 0) xm = poly_divide_monic(std::move(xm), t[d].poly);
    auto& od = t[m];
    od.poly = std::move(xm);
    od.phi = static_cast<unsigned>(od.poly.size() - 1);
    // zeta^e by repeated multiplication by x, reducing the overflow term.
    std::vector<long long> cur(od.phi, 0);
    cur[0] = 1;
    od.power.reserve(2 * m);
    for (unsigned e = 0; e < 2 * m; ++e) {
      od.power.push_back(cur);
      std::vector<long long> next(od.phi, 0);
      long long overflow = cur[od.phi - 1];
      for (unsigned i = od.phi - 1; i > 0; --i) next[i] = cur[i - 1];
      next[0] = 0;
      for (unsigned i = 0; i < od.phi; ++i) next[i] -= overflow * od.poly[i];
      cur = std::move(next);
    }
  }
  return t;
}

const OrderData& data(unsigned m) {
  static const std::array<OrderData, kMaxOrder + 1> tables = build_tables();
  if (m < 1 || m > kMaxOrder)
    throw Error(Errc::InvalidArgument, "root order " + std::to_string(m) + " outside [1, 64]");
  return tables[m];
}

unsigned common_order(unsigned a, unsigned b) {
  const unsigned l = std::lcm(a, b);
  if (l > kMaxOrder) throw Error(Errc::InvalidArgument, "lcm of root orders exceeds 64");
  return l;
}

}  // namespace

unsigned euler_phi(unsigned m) { return data(m).phi; }

const std::vector<long long>& cyclotomic_polynomial(unsigned m) { return data(m).poly; }

CycInt::CycInt(unsigned order) : order_(order), coeffs_(data(order).phi, BigInt(0)) {}

CycInt CycInt::from_int(unsigned order, const BigInt& value) {
  CycInt r(order);
  r.coeffs_[0] = value;
  return r;
}

CycInt CycInt::root_of_unity(unsigned order, long long e) {
  const auto& od = data(order);
  long long r = e % static_cast<long long>(order);
  if (r < 0) r += order;
  const auto& pw = od.power[static_cast<std::size_t>(r)];
  return CycInt(order, std::vector<BigInt>(pw.begin(), pw.end()));
}

CycInt CycInt::from_exponent_counts(unsigned order, std::span<const long long> counts) {
  const auto& od = data(order);
  std::vector<long long> acc(od.phi, 0);
  for (std::size_t e = 0; e < counts.size(); ++e) {
    if (counts[e] == 0) continue;
    const auto& pw = od.power[e % order];
    for (unsigned i = 0; i < od.phi; ++i) acc[i] += counts[e] * pw[i];
  }
  return CycInt(order, std::vector<BigInt>(acc.begin(), acc.end()));
}

CycInt CycInt::from_coeffs(unsigned order, std::span<const BigInt> coeffs) {
  const auto& od = data(order);
  CycInt r(order);
  for (std::size_t e = 0; e < coeffs.size(); ++e) {
    if (coeffs[e] == 0) continue;
    const auto& pw = od.power[e % order];
    for (unsigned i = 0; i < od.phi; ++i)
      if (pw[i] != 0) r.coeffs_[i] += coeffs[e] * pw[i];
  }
  return r;
}

CycInt CycInt::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tag, colon;
  long long m = 0;
  if (!(in >> tag >> m >> colon) || tag != "zeta" || colon != ":" || m < 1 || m > kMaxOrder)
    throw Error(Errc::ParseError, "expected `zeta m : c0 c1 ...`");
  const auto& od = data(static_cast<unsigned>(m));
  std::vector<BigInt> c;
  std::string tok;
  while (in >> tok) {
    try {
      c.emplace_back(tok);
    } catch (const std::exception&) {
      throw Error(Errc::ParseError, "bad integer `" + tok + "`");
    }
  }
  if (c.size() != od.phi) throw Error(Errc::ParseError, "expected phi(m) coefficients");
  return CycInt(static_cast<unsigned>(m), std::move(c));
}

bool CycInt::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool CycInt::is_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

CycInt CycInt::lift(unsigned target) const {
  if (target == order_) return *this;
  if (target % order_ != 0) throw Error(Errc::InvalidArgument, "lift target must be a multiple of the order");
  const auto& od = data(target);
  const unsigned step = target / order_;
  CycInt r(target);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    const auto& pw = od.power[i * step];
    for (unsigned j = 0; j < od.phi; ++j)
      if (pw[j] != 0) r.coeffs_[j] += coeffs_[i] * pw[j];
  }
  return r;
}

CycInt CycInt::operator+(const CycInt& b) const {
  CycInt r = *this;
  r += b;
  return r;
}

CycInt& CycInt::operator+=(const CycInt& b) {
  if (b.order_ != order_) {
    const unsigned l = common_order(order_, b.order_);
    *this = lift(l);
    const CycInt bl = b.lift(l);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += bl.coeffs_[i];
    return *this;
  }
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += b.coeffs_[i];
  return *this;
}

CycInt CycInt::operator-() const {
  CycInt r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycInt CycInt::operator-(const CycInt& b) const { return *this + (-b); }

CycInt CycInt::operator*(const CycInt& b) const {
  if (b.order_ != order_) {
    const unsigned l = common_order(order_, b.order_);
    return lift(l) * b.lift(l);
  }
  const auto& od = data(order_);
  const std::size_t phi = od.phi;
  std::vector<BigInt> prod(2 * phi - 1, BigInt(0));
  for (std::size_t i = 0; i < phi; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < phi; ++j)
      if (b.coeffs_[j] != 0) prod[i + j] += coeffs_[i] * b.coeffs_[j];
  }
  return from_coeffs(order_, prod);
}

CycInt CycInt::conj() const {
  const auto& od = data(order_);
  CycInt r(order_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    const auto& pw = od.power[(order_ - i % order_) % order_];
    for (unsigned j = 0; j < od.phi; ++j)
      if (pw[j] != 0) r.coeffs_[j] += coeffs_[i] * pw[j];
  }
  return r;
}

std::optional<BigInt> CycInt::magnitude_sq() const {
  const CycInt n = *this * conj();
  if (!n.is_rational()) return std::nullopt;
  return n.coeffs_[0];
}

bool CycInt::operator==(const CycInt& b) const {
  if (order_ == b.order_) return coeffs_ == b.coeffs_;
  const unsigned l = common_order(order_, b.order_);
  return lift(l).coeffs_ == b.lift(l).coeffs_;
}

std::string CycInt::serialize() const {
  std::ostringstream os;
  os << "zeta " << order_ << " :";
  for (const auto& c : coeffs_) os << ' ' << c;
  return os.str();
}

std::string CycInt::approx() const {
  std::complex<double> z{0.0, 0.0};
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / order_;
    z += coeffs_[i].convert_to<double>() * std::polar(1.0, angle);
  }
  std::ostringstream os;
  os << std::setprecision(6) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return os.str();
}

CycInt weil_sum(const galois::Field& field, galois::Elem m, galois::Elem n) {
  const unsigned p = field.characteristic();
  std::vector<long long> counts(p, 0);
  for (std::uint32_t k = 0; k < field.order(); ++k) {
    const galois::Elem kk{k};
    const galois::Elem arg = field.add(field.mul(m, field.mul(kk, kk)), field.mul(n, kk));
    ++counts[field.trace(arg).v];
  }
  return CycInt::from_exponent_counts(p, counts);
}

CycInt weil_sum(const galois::FieldElement& m, const galois::FieldElement& n) {
  if (!(m.field() == n.field())) throw Error(Errc::FieldMismatch, "Weil sum arguments from different fields");
  return weil_sum(m.field(), m.elem(), n.elem());
}

WeilSurvey weil_survey(const galois::Field& field) {
  const std::uint32_t q = field.order();
  WeilSurvey s{field, {}, false, false, std::nullopt, 0};
  s.magnitude_sq.reserve(static_cast<std::size_t>(q) * q);
  for (std::uint32_t m = 0; m < q; ++m)
    for (std::uint32_t n = 0; n < q; ++n) {
      auto v = weil_sum(field, galois::Elem{m}, galois::Elem{n}).magnitude_sq();
      if (!v) ++s.alarms;
      s.magnitude_sq.push_back(std::move(v));
    }

  bool uniform = q > 1;
  bool single = q > 1;
  std::optional<BigInt> peak;
  for (std::uint32_t m = 1; m < q; ++m) {
    std::size_t nonzero = 0;
    for (std::uint32_t n = 0; n < q; ++n) {
      const auto& v = s.at(m, n);
      if (!v || *v != q) uniform = false;
      if (!v || *v != 0) {
        ++nonzero;
        if (v) {
          if (peak && *peak != *v) single = false;
          peak = *v;
        }
      }
    }
    if (nonzero != 1) single = false;
  }
  s.uniform_magnitude = uniform;
  s.single_nonzero_per_row = single;
  if (single) s.row_peak = peak;
  return s;
}

}  // namespace arcmub::cyclotomic
