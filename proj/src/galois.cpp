#include "arcmub/galois.hpp"

#include <algorithm>
#include <sstream>

#include "arcmub/error.hpp"

namespace arcmub::galois {

namespace {

constexpr unsigned kMaxOrder = 1u << 16;
constexpr unsigned kAddTableMaxOrder = 1024;

using Poly = std::vector<unsigned>;  // low-degree first, entries in [0, p)

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic m over GF(p).
Poly poly_mod(Poly a, const Poly& m, unsigned p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const unsigned lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      a[shift + i] = (a[shift + i] + (p - lead) * m[i]) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, unsigned p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_mod(std::move(r), m, p);
}

std::uint32_t ipow(unsigned base, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    r *= base;
    if (r > kMaxOrder) return kMaxOrder + 1;
  }
  return static_cast<std::uint32_t>(r);
}

}  // namespace

namespace detail {

struct FieldTables {
  unsigned p = 0;
  unsigned n = 0;
  unsigned q = 0;
  Poly modulus;
  std::vector<std::uint32_t> exp;  // length 2(q-1)
  std::vector<std::uint32_t> log;  // log[0] unused
  std::vector<std::uint32_t> neg;
  std::vector<std::uint32_t> add;  // q*q when q <= kAddTableMaxOrder
  std::vector<std::uint32_t> frob;
  std::vector<std::uint32_t> trace;
  std::uint32_t primitive = 1;

  std::uint32_t add_slow(std::uint32_t a, std::uint32_t b) const {
    if (p == 2) return a ^ b;
    std::uint32_t r = 0, scale = 1;
    for (unsigned i = 0; i < n; ++i) {
      r += ((a % p + b % p) % p) * scale;
      a /= p;
      b /= p;
      scale *= p;
    }
    return r;
  }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp[log[a] + log[b]];
  }
};

}  // namespace detail

bool is_prime(unsigned n) noexcept {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible(unsigned p, std::span<const unsigned> monic) {
  if (monic.size() < 2) return false;
  const unsigned n = static_cast<unsigned>(monic.size() - 1);
  if (n == 1) return true;
  Poly f(monic.begin(), monic.end());
  for (unsigned deg = 1; deg <= n / 2; ++deg) {
    const std::uint32_t count = ipow(p, deg);
    for (std::uint32_t code = 0; code < count; ++code) {
      Poly g(deg + 1, 0);
      std::uint32_t c = code;
      for (unsigned i = 0; i < deg; ++i) {
        g[i] = c % p;
        c /= p;
      }
      g[deg] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<unsigned> least_irreducible(unsigned p, unsigned n) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  const std::uint32_t count = ipow(p, n);
  if (count > kMaxOrder) throw Error(Errc::OrderTooLarge, "field order exceeds 2^16");
  for (std::uint32_t code = 0; code < count; ++code) {
    Poly f(n + 1, 0);
    std::uint32_t c = code;
    for (unsigned i = 0; i < n; ++i) {
      f[i] = c % p;
      c /= p;
    }
    f[n] = 1;
    if (is_irreducible(p, f)) return f;
  }
  throw Error(Errc::Internal, "no irreducible polynomial found");
}

Field Field::make(unsigned p, unsigned n, std::optional<std::vector<unsigned>> modulus) {
  if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
  if (n < 1) throw Error(Errc::DegreeMismatch, "extension degree must be at least 1");
  const std::uint32_t q = ipow(p, n);
  if (q > kMaxOrder) throw Error(Errc::OrderTooLarge, "field order exceeds 2^16");

  Poly mod;
  if (modulus) {
    mod = *modulus;
    if (mod.size() != n + 1 || mod.back() != 1)
      throw Error(Errc::DegreeMismatch, "modulus must be monic of degree " + std::to_string(n));
    for (unsigned c : mod)
      if (c >= p) throw Error(Errc::InvalidArgument, "modulus coefficient out of range");
    if (!is_irreducible(p, mod)) throw Error(Errc::NotIrreducible, "modulus is reducible");
  } else {
    mod = least_irreducible(p, n);
  }

  auto t = std::make_shared<detail::FieldTables>();
  t->p = p;
  t->n = n;
  t->q = q;
  t->modulus = mod;

  auto to_poly = [&](std::uint32_t v) {
    Poly a(n, 0);
    for (unsigned i = 0; i < n; ++i) {
      a[i] = v % p;
      v /= p;
    }
    trim(a);
    return a;
  };
  auto to_index = [&](const Poly& a) {
    std::uint32_t v = 0, scale = 1;
    for (unsigned i = 0; i < a.size(); ++i) {
      v += a[i] * scale;
      scale *= p;
    }
    return v;
  };

  // Least-index generator of the multiplicative group.
  t->exp.assign(2 * (q - 1), 0);
  t->log.assign(q, 0);
  bool found = false;
  for (std::uint32_t g = 1; g < q && !found; ++g) {
    const Poly gp = to_poly(g);
    Poly cur{1};
    std::vector<std::uint32_t> powers;
    powers.reserve(q - 1);
    for (std::uint32_t k = 0; k < q - 1; ++k) {
      const std::uint32_t idx = to_index(cur);
      if (k > 0 && idx == 1) break;
      powers.push_back(idx);
      cur = poly_mulmod(cur, gp, mod, p);
    }
    if (powers.size() == q - 1) {
      found = true;
      t->primitive = g;
      for (std::uint32_t k = 0; k < q - 1; ++k) {
        t->exp[k] = powers[k];
        t->exp[k + q - 1] = powers[k];
        t->log[powers[k]] = k;
      }
    }
  }
  if (!found) throw Error(Errc::Internal, "no primitive element");

  t->neg.resize(q);
  for (std::uint32_t a = 0; a < q; ++a) {
    Poly c = to_poly(a);
    for (auto& x : c) x = (p - x) % p;
    t->neg[a] = to_index(c);
  }
  if (q <= kAddTableMaxOrder) {
    t->add.resize(static_cast<std::size_t>(q) * q);
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) t->add[a * q + b] = t->add_slow(a, b);
  }
  t->frob.resize(q);
  for (std::uint32_t a = 0; a < q; ++a) {
    std::uint32_t r = 1;
    for (unsigned i = 0; i < p; ++i) r = t->mul(r, a);
    t->frob[a] = r;
  }
  t->trace.resize(q);
  for (std::uint32_t a = 0; a < q; ++a) {
    std::uint32_t s = 0, term = a;
    for (unsigned i = 0; i < n; ++i) {
      s = t->add_slow(s, term);
      term = t->frob[term];
    }
    t->trace[a] = s;
  }
  return Field(std::move(t));
}

Field Field::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string tag;
  long long p = 0, n = 0;
  if (!(in >> tag >> p >> n) || tag != "GF" || p < 2 || n < 1)
    throw Error(Errc::ParseError, "expected `GF p n c0 ... cn`");
  std::vector<unsigned> mod;
  long long c = 0;
  while (in >> c) {
    if (c < 0) throw Error(Errc::ParseError, "negative modulus coefficient");
    mod.push_back(static_cast<unsigned>(c));
  }
  if (!in.eof()) throw Error(Errc::ParseError, "malformed modulus coefficient");
  return make(static_cast<unsigned>(p), static_cast<unsigned>(n), std::move(mod));
}

unsigned Field::characteristic() const noexcept { return t_->p; }
unsigned Field::degree() const noexcept { return t_->n; }
unsigned Field::order() const noexcept { return t_->q; }
const std::vector<unsigned>& Field::modulus() const noexcept { return t_->modulus; }

std::string Field::describe() const {
  std::ostringstream os;
  os << "GF " << t_->p << ' ' << t_->n;
  for (unsigned c : t_->modulus) os << ' ' << c;
  return os.str();
}

Elem Field::x() const noexcept {
  if (t_->n == 1) {
    // x reduces to -c0 in a degree-one extension.
    return Elem{(t_->p - t_->modulus[0]) % t_->p};
  }
  return Elem{t_->p};
}

Elem Field::primitive() const noexcept { return Elem{t_->primitive}; }

Elem Field::element(std::uint32_t index) const {
  if (index >= t_->q) throw Error(Errc::InvalidArgument, "element index out of range");
  return Elem{index};
}

Elem Field::constant(long long c) const noexcept {
  const long long p = t_->p;
  return Elem{static_cast<std::uint32_t>(((c % p) + p) % p)};
}

std::vector<unsigned> Field::coeffs(Elem a) const {
  std::vector<unsigned> c(t_->n, 0);
  std::uint32_t v = a.v;
  for (unsigned i = 0; i < t_->n; ++i) {
    c[i] = v % t_->p;
    v /= t_->p;
  }
  return c;
}

Elem Field::from_coeffs(std::span<const unsigned> coeffs) const {
  if (coeffs.size() != t_->n) throw Error(Errc::DegreeMismatch, "coefficient vector length must equal n");
  std::uint32_t v = 0, scale = 1;
  for (unsigned c : coeffs) {
    if (c >= t_->p) throw Error(Errc::InvalidArgument, "coefficient out of range");
    v += c * scale;
    scale *= t_->p;
  }
  return Elem{v};
}

Elem Field::add(Elem a, Elem b) const noexcept {
  if (!t_->add.empty()) return Elem{t_->add[a.v * t_->q + b.v]};
  return Elem{t_->add_slow(a.v, b.v)};
}

Elem Field::sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
Elem Field::neg(Elem a) const noexcept { return Elem{t_->neg[a.v]}; }
Elem Field::mul(Elem a, Elem b) const noexcept { return Elem{t_->mul(a.v, b.v)}; }

Elem Field::inv(Elem a) const {
  if (a.v == 0) throw Error(Errc::DivisionByZero, "inverse of zero");
  const std::uint32_t l = t_->log[a.v];
  return Elem{t_->exp[(t_->q - 1 - l) % (t_->q - 1)]};
}

Elem Field::div(Elem a, Elem b) const { return mul(a, inv(b)); }

Elem Field::pow(Elem a, long long e) const {
  if (e == 0) return one();
  if (a.v == 0) {
    if (e < 0) throw Error(Errc::DivisionByZero, "negative power of zero");
    return zero();
  }
  const long long order = t_->q - 1;
  long long r = (static_cast<long long>(t_->log[a.v]) * (e % order)) % order;
  if (r < 0) r += order;
  return Elem{t_->exp[static_cast<std::size_t>(r)]};
}

Elem Field::frobenius(Elem a) const noexcept { return Elem{t_->frob[a.v]}; }
Elem Field::trace(Elem a) const noexcept { return Elem{t_->trace[a.v]}; }

bool Field::is_square(Elem a) const noexcept {
  if (a.v == 0 || t_->p == 2) return true;
  return t_->log[a.v] % 2 == 0;
}

Elem Field::sqrt_char2(Elem a) const {
  if (t_->p != 2) throw Error(Errc::WrongCharacteristic, "square root map requires characteristic 2");
  return pow(a, t_->q / 2);
}

std::uint32_t Field::log(Elem a) const {
  if (a.v == 0) throw Error(Errc::DivisionByZero, "log of zero");
  return t_->log[a.v];
}

Elem Field::exp(long long e) const noexcept {
  const long long order = t_->q - 1;
  long long r = e % order;
  if (r < 0) r += order;
  return Elem{t_->exp[static_cast<std::size_t>(r)]};
}

bool Field::operator==(const Field& other) const noexcept {
  if (t_ == other.t_) return true;
  return t_->p == other.t_->p && t_->n == other.t_->n && t_->modulus == other.t_->modulus;
}

// FieldElement

void FieldElement::check_same(const FieldElement& b) const {
  if (!(field_ == b.field_))
    throw Error(Errc::FieldMismatch, field_.describe() + " vs " + b.field_.describe());
}

FieldElement FieldElement::operator+(const FieldElement& b) const {
  check_same(b);
  return {field_, field_.add(e_, b.e_)};
}
FieldElement FieldElement::operator-(const FieldElement& b) const {
  check_same(b);
  return {field_, field_.sub(e_, b.e_)};
}
FieldElement FieldElement::operator*(const FieldElement& b) const {
  check_same(b);
  return {field_, field_.mul(e_, b.e_)};
}
FieldElement FieldElement::operator/(const FieldElement& b) const {
  check_same(b);
  return {field_, field_.div(e_, b.e_)};
}
FieldElement FieldElement::operator-() const { return {field_, field_.neg(e_)}; }
FieldElement FieldElement::inv() const { return {field_, field_.inv(e_)}; }
FieldElement FieldElement::pow(long long e) const { return {field_, field_.pow(e_, e)}; }
FieldElement FieldElement::trace() const { return {field_, field_.trace(e_)}; }
FieldElement FieldElement::sqrt() const { return {field_, field_.sqrt_char2(e_)}; }
bool FieldElement::is_square() const { return field_.is_square(e_); }

bool FieldElement::operator==(const FieldElement& b) const {
  check_same(b);
  return e_ == b.e_;
}

}  // namespace arcmub::galois
