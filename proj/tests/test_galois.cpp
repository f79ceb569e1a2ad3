#include <set>

#include "arcmub/error.hpp"
#include "arcmub/galois.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace arcmub;
using galois::Elem;
using galois::Field;

namespace {

struct PN {
  unsigned p, n;
};

// Every prime power up to 81.
std::vector<PN> small_fields() {
  std::vector<PN> out;
  for (unsigned p = 2; p <= 81; ++p) {
    if (!galois::is_prime(p)) continue;
    unsigned q = p;
    for (unsigned n = 1; q <= 81; ++n, q *= p) out.push_back({p, n});
  }
  return out;
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an arcmub::Error");
  return Errc::Internal;
}

}  // namespace

TEST_CASE("field_new examples") {
  const auto gf3 = Field::make(3, 1);
  CHECK(gf3.order() == 3);
  CHECK(gf3.coeffs(Elem{2}) == std::vector<unsigned>{2});

  // Exhaustive scan over the four monic quadratics over GF(2): only x^2+x+1 survives.
  std::vector<std::vector<unsigned>> irreducible;
  for (unsigned c0 = 0; c0 < 2; ++c0)
    for (unsigned c1 = 0; c1 < 2; ++c1) {
      std::vector<unsigned> f{c0, c1, 1};
      if (oracle::irreducible_by_products(2, f)) irreducible.push_back(f);
    }
  REQUIRE(irreducible.size() == 1);
  const auto gf4 = Field::make(2, 2);
  CHECK(gf4.modulus() == irreducible.front());
  CHECK(gf4.modulus() == std::vector<unsigned>{1, 1, 1});

  CHECK(code_of([] { Field::make(4, 1); }) == Errc::NotPrime);
  CHECK(code_of([] { Field::make(2, 2, std::vector<unsigned>{1, 0, 1}); }) == Errc::NotIrreducible);
  CHECK(code_of([] { Field::make(3, 2, std::vector<unsigned>{1, 1}); }) == Errc::DegreeMismatch);
  CHECK(code_of([] { Field::make(3, 2, std::vector<unsigned>{2, 0, 2}); }) == Errc::DegreeMismatch);
}

TEST_CASE("default modulus is the least irreducible") {
  for (auto [p, n] : small_fields()) {
    const auto f = Field::make(p, n);
    // Walk candidates in the same order (leading coefficients most significant)
    // and stop at the first one the product oracle accepts.
    std::uint32_t count = 1;
    for (unsigned i = 0; i < n; ++i) count *= p;
    for (std::uint32_t code = 0; code < count; ++code) {
      std::vector<unsigned> g(n + 1, 0);
      std::uint32_t c = code;
      for (unsigned i = 0; i < n; ++i) {
        g[i] = c % p;
        c /= p;
      }
      g[n] = 1;
      if (n == 1 || oracle::irreducible_by_products(p, g)) {
        CHECK_MESSAGE(f.modulus() == g, "p=" << p << " n=" << n);
        break;
      }
    }
  }
  CHECK(Field::make(3, 2).modulus() == std::vector<unsigned>{1, 0, 1});
  CHECK(Field::make(2, 3).modulus() == std::vector<unsigned>{1, 1, 0, 1});
  CHECK(Field::make(2, 4).modulus() == std::vector<unsigned>{1, 1, 0, 0, 1});
}

TEST_CASE("field_arith examples") {
  const auto gf3 = Field::make(3, 1);
  CHECK(gf3.add(Elem{2}, Elem{2}) == Elem{1});

  const auto gf4 = Field::make(2, 2);
  const Elem omega = gf4.x();
  CHECK(omega == Elem{2});
  CHECK(gf4.mul(omega, omega) == gf4.add(omega, gf4.one()));

  const auto gf5 = Field::make(5, 1);
  CHECK(code_of([&] { gf5.inv(Elem{0}); }) == Errc::DivisionByZero);
  CHECK(code_of([&] { gf5.div(Elem{3}, Elem{0}); }) == Errc::DivisionByZero);

  const galois::FieldElement a{gf4, omega}, b{gf5, Elem{1}};
  CHECK(code_of([&] { (void)(a + b); }) == Errc::FieldMismatch);
  CHECK(code_of([&] { (void)(a * b); }) == Errc::FieldMismatch);
  CHECK((a * a) == (a + galois::FieldElement{gf4, gf4.one()}));
}

TEST_CASE("tables agree with naive polynomial arithmetic") {
  for (auto [p, n] : small_fields()) {
    const auto f = Field::make(p, n);
    const oracle::NaiveField ref{p, f.modulus()};
    for (std::uint32_t a = 0; a < f.order(); ++a)
      for (std::uint32_t b = 0; b < f.order(); ++b) {
        REQUIRE(f.add(Elem{a}, Elem{b}).v == ref.add(a, b));
        REQUIRE(f.mul(Elem{a}, Elem{b}).v == ref.mul(a, b));
      }
  }
}

TEST_CASE("field laws hold exhaustively on small fields") {
  for (auto [p, n] : small_fields()) {
    const auto f = Field::make(p, n);
    if (f.order() > 27) continue;
    for (std::uint32_t a = 0; a < f.order(); ++a) {
      const Elem ea{a};
      CHECK(f.add(ea, f.neg(ea)) == f.zero());
      CHECK(f.sub(ea, ea) == f.zero());
      if (a != 0) {
        CHECK(f.mul(ea, f.inv(ea)) == f.one());
        CHECK(f.pow(ea, -1) == f.inv(ea));
        CHECK(f.pow(ea, f.order() - 1) == f.one());
      }
      for (std::uint32_t b = 0; b < f.order(); ++b)
        for (std::uint32_t c = 0; c < f.order(); ++c) {
          const Elem eb{b}, ec{c};
          REQUIRE(f.mul(ea, f.add(eb, ec)) == f.add(f.mul(ea, eb), f.mul(ea, ec)));
          REQUIRE(f.mul(f.mul(ea, eb), ec) == f.mul(ea, f.mul(eb, ec)));
        }
    }
  }
}

TEST_CASE("trace examples") {
  const auto gf3 = Field::make(3, 1);
  CHECK(gf3.trace(Elem{2}) == Elem{2});

  const auto gf4 = Field::make(2, 2);
  const oracle::NaiveField ref4{2, gf4.modulus()};
  const std::uint32_t expected4[4] = {0, 0, 1, 1};
  for (std::uint32_t a = 0; a < 4; ++a) {
    CHECK(ref4.trace(a) == expected4[a]);
    CHECK(gf4.trace(Elem{a}).v == expected4[a]);
  }

  const auto gf9 = Field::make(3, 2, std::vector<unsigned>{1, 0, 1});
  const oracle::NaiveField ref9{3, {1, 0, 1}};
  for (std::uint32_t a = 0; a < 9; ++a) CHECK(gf9.trace(Elem{a}).v == ref9.add(a, ref9.pow(a, 3)));
  CHECK(gf9.trace(gf9.one()) == Elem{2});
}

TEST_CASE("trace is additive and Frobenius-invariant") {
  for (auto [p, n] : small_fields()) {
    const auto f = Field::make(p, n);
    const oracle::NaiveField ref{p, f.modulus()};
    for (std::uint32_t a = 0; a < f.order(); ++a) {
      const Elem ea{a};
      REQUIRE(f.trace(ea).v < p);
      REQUIRE(f.trace(ea).v == ref.trace(a));
      REQUIRE(f.trace(f.pow(ea, p)) == f.trace(ea));
      for (std::uint32_t b = 0; b < f.order(); ++b)
        REQUIRE(f.trace(f.add(ea, Elem{b})) == f.add(f.trace(ea), f.trace(Elem{b})));
    }
  }
}

TEST_CASE("frobenius_sqrt examples") {
  const auto gf2 = Field::make(2, 1);
  CHECK(gf2.sqrt_char2(gf2.one()) == gf2.one());
  const auto gf4 = Field::make(2, 2);
  const Elem omega = gf4.x();
  CHECK(gf4.sqrt_char2(omega) == gf4.add(omega, gf4.one()));
  for (std::uint32_t a = 0; a < 16; ++a) {
    const auto gf16 = Field::make(2, 4);
    const Elem r = gf16.sqrt_char2(Elem{a});
    CHECK(gf16.mul(r, r) == Elem{a});
  }
  const auto gf9 = Field::make(3, 2);
  CHECK(code_of([&] { gf9.sqrt_char2(gf9.one()); }) == Errc::WrongCharacteristic);
}

TEST_CASE("is_square examples and counts") {
  const auto gf3 = Field::make(3, 1);
  CHECK(gf3.is_square(Elem{0}));
  CHECK(gf3.is_square(Elem{1}));
  CHECK_FALSE(gf3.is_square(Elem{2}));

  for (auto [p, n] : small_fields()) {
    const auto f = Field::make(p, n);
    std::set<std::uint32_t> squares;
    for (std::uint32_t b = 0; b < f.order(); ++b) squares.insert(f.mul(Elem{b}, Elem{b}).v);
    std::size_t flagged = 0;
    for (std::uint32_t a = 0; a < f.order(); ++a) {
      CHECK(f.is_square(Elem{a}) == static_cast<bool>(squares.count(a)));
      flagged += f.is_square(Elem{a});
    }
    // Squaring is a bijection exactly in characteristic 2.
    CHECK((squares.size() == f.order()) == (p == 2));
    if (p != 2) CHECK(flagged == (f.order() + 1) / 2);
  }
  CHECK(Field::make(3, 2).is_square(Elem{0}));
}

TEST_CASE("multiplicative group is cyclic") {
  for (auto [p, n] : small_fields()) {
    const auto f = Field::make(p, n);
    const Elem g = f.primitive();
    std::set<std::uint32_t> seen;
    Elem x = f.one();
    for (unsigned i = 0; i + 1 < f.order(); ++i) {
      seen.insert(x.v);
      x = f.mul(x, g);
    }
    CHECK(x == f.one());
    CHECK(seen.size() == f.order() - 1);
  }
}

TEST_CASE("description round-trips") {
  const auto f = Field::make(2, 3);
  CHECK(f.describe() == "GF 2 3 1 1 0 1");
  const auto g = Field::parse(f.describe());
  CHECK(g == f);
  CHECK(Field::parse("GF 3 2 1 0 1").modulus() == std::vector<unsigned>{1, 0, 1});
  CHECK(code_of([] { Field::parse("GX 3 2"); }) == Errc::ParseError);
  CHECK(code_of([] { Field::parse("GF 3 2 1 0 x"); }) == Errc::ParseError);
  // Canonical enumeration is fixed by the packing rule.
  CHECK(f.coeffs(Elem{6}) == std::vector<unsigned>{0, 1, 1});
  CHECK(f.from_coeffs(std::vector<unsigned>{0, 1, 1}) == Elem{6});
}
