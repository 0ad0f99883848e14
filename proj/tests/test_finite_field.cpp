#include <gtest/gtest.h>

#include <random>
#include <set>

#include "sptori/errors.hpp"
#include "sptori/finite_field.hpp"

using namespace sptori;

namespace {

FqPolynomial poly(u64 p, const std::vector<std::int64_t>& c) { return FqPolynomial::from_signed(prime_field(p), c); }

// All monic polynomials of degree d over F_p.
std::vector<FqPolynomial> monics(u64 p, int d) {
  std::vector<FqPolynomial> out;
  u64 count = 1;
  for (int i = 0; i < d; ++i) count *= p;
  for (u64 idx = 0; idx < count; ++idx) {
    std::vector<u64> c;
    u64 v = idx;
    for (int i = 0; i < d; ++i) {
      c.push_back(v % p);
      v /= p;
    }
    c.push_back(1);
    out.emplace_back(prime_field(p), c);
  }
  return out;
}

bool irreducible_by_trial_division(const FqPolynomial& f) {
  const u64 p = f.ring().prime();
  for (int d = 1; 2 * d <= f.degree(); ++d)
    for (const auto& g : monics(p, d))
      if ((f % g).is_zero()) return false;
  return f.degree() >= 1;
}

u64 order_by_iteration(const ExtensionElement& e) {
  ExtensionElement x = e;
  u64 k = 1;
  while (!x.is_one()) {
    x = x * e;
    ++k;
  }
  return k;
}

// prod over the Frobenius orbit of (X - c), computed with coefficients in the
// extension; every coefficient must land in F_p.
FqPolynomial minpoly_by_orbit(const ExtensionElement& e) {
  std::vector<ExtensionElement> orbit{e};
  for (ExtensionElement c = e.frobenius(); !(c == e); c = c.frobenius()) orbit.push_back(c);
  const FqPolynomial& mod = e.modulus();
  std::vector<ExtensionElement> coeffs{ExtensionElement::one(mod)};
  for (const auto& c : orbit) {
    std::vector<ExtensionElement> next(coeffs.size() + 1, ExtensionElement::constant(0, mod));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      next[i + 1] = next[i + 1] + coeffs[i];
      next[i] = next[i] - coeffs[i] * c;
    }
    coeffs = next;
  }
  std::vector<u64> out;
  for (const auto& c : coeffs) {
    EXPECT_LE(c.rep().degree(), 0) << "orbit coefficient not in F_p";
    out.push_back(c.rep().coeff(0));
  }
  return FqPolynomial(mod.ring(), out);
}

FqPolynomial random_poly(std::mt19937_64& rng, u64 p, int deg) {
  std::vector<u64> c;
  for (int i = 0; i < deg; ++i) c.push_back(rng() % p);
  c.push_back(1 + rng() % (p - 1));
  return FqPolynomial(prime_field(p), c);
}

}  // namespace

TEST(Primes, MatchTrialDivision) {
  for (u64 n = 0; n < 5000; ++n) {
    bool naive = n >= 2;
    for (u64 d = 2; d * d <= n; ++d)
      if (n % d == 0) naive = false;
    ASSERT_EQ(is_prime(n), naive) << n;
  }
  EXPECT_TRUE(is_prime(4611686018427387847ULL));
  EXPECT_FALSE(is_prime(4611686018427387849ULL));
  EXPECT_EQ(prime_factors(360), (std::vector<u64>{2, 3, 5}));
}

TEST(Primes, PrimitiveRootHasFullOrder) {
  for (u64 p : {3, 5, 7, 11, 13, 17, 19, 23, 101}) {
    const u64 g = primitive_root(p);
    u64 x = g, k = 1;
    while (x != 1) {
      x = x * g % p;
      ++k;
    }
    EXPECT_EQ(k, p - 1) << p;
  }
  EXPECT_THROW(require_odd_prime(2), InvalidArgument);
  EXPECT_THROW(require_odd_prime(9), InvalidArgument);
}

TEST(FindIrreducible, SeedZeroExamples) {
  EXPECT_EQ(find_irreducible(3, 1, 0), poly(3, {1, 1}));
  EXPECT_EQ(find_irreducible(3, 2, 0), poly(3, {1, 0, 1}));
  EXPECT_EQ(find_irreducible(5, 2, 0), poly(5, {2, 0, 1}));
}

TEST(FindIrreducible, AgreesWithTrialDivision) {
  for (u64 p : {3, 5, 7})
    for (int m = 1; m <= 4; ++m)
      for (u64 seed : {0, 1, 17}) {
        const FqPolynomial f = find_irreducible(p, m, seed);
        EXPECT_EQ(f.degree(), m);
        EXPECT_TRUE(f.is_monic());
        EXPECT_TRUE(irreducible_by_trial_division(f)) << f.to_string();
      }
  for (u64 p : {3, 5})
    for (int d = 1; d <= 4; ++d)
      for (const auto& g : monics(p, d)) ASSERT_EQ(is_irreducible(g), irreducible_by_trial_division(g)) << g.to_string();
}

TEST(MultiplicativeOrder, Examples) {
  const FqPolynomial f9 = find_irreducible(3, 2, 0);
  EXPECT_EQ(multiplicative_order(ExtensionElement::one(f9)), 1u);
  EXPECT_EQ(multiplicative_order(ExtensionElement::constant(6, find_irreducible(7, 1, 0))), 2u);
  for (u64 idx = 1; idx < 9; ++idx) {
    const auto e = ExtensionElement::from_index(idx, f9);
    EXPECT_EQ(multiplicative_order(e), order_by_iteration(e));
  }
  std::size_t generators = 0;
  for (u64 idx = 1; idx < 9; ++idx) generators += multiplicative_order(ExtensionElement::from_index(idx, f9)) == 8;
  EXPECT_EQ(generators, 4u);  // phi(8)
  EXPECT_THROW(multiplicative_order(ExtensionElement::constant(0, f9)), InvalidArgument);
}

TEST(FindEta, SmallFieldsByBruteForce) {
  const auto eta = find_eta(3, 2, 0);
  EXPECT_EQ(order_by_iteration(eta), 8u);
  const auto sq = eta * eta;
  EXPECT_EQ(order_by_iteration(sq), 4u);
  EXPECT_GT(sq.rep().degree(), 0);  // not in F_3

  const auto e5 = find_eta(5, 1, 0);
  EXPECT_EQ(order_by_iteration(e5), 4u);

  const auto e7 = find_eta(7, 3, 0);
  EXPECT_EQ(minimal_polynomial(e7 * e7).degree(), 3);
}

TEST(FindEta, SmallPrimesAndDegrees) {
  for (u64 p : {3, 5, 7, 11, 13})
    for (int m = 1; m <= 5; ++m) {
      const auto eta = find_eta(p, m, 0);
      EXPECT_TRUE(is_multiplicative_generator(eta)) << p << " " << m;
      const FqPolynomial f = minimal_polynomial(eta * eta);
      const FqPolynomial g = minimal_polynomial(eta);
      EXPECT_EQ(f.degree(), m);
      // f(x^2) = (-1)^m g(x) g(-x), and g is not +-g(-x)
      FqPolynomial rhs = g * g.negate_variable();
      if (m % 2 == 1) rhs = -rhs;
      EXPECT_EQ(f.compose_square(), rhs) << p << " " << m;
      EXPECT_NE(g, g.negate_variable());
      EXPECT_NE(g, -g.negate_variable());
    }
}

TEST(FindEta, SeedsGiveValidDifferentChoices) {
  std::set<std::string> seen;
  for (u64 seed = 0; seed < 8; ++seed) {
    const auto eta = find_eta(7, 2, seed);
    EXPECT_TRUE(is_multiplicative_generator(eta));
    EXPECT_EQ(minimal_polynomial(eta * eta).degree(), 2);
    EXPECT_EQ(eta, find_eta(7, 2, seed));
    seen.insert(eta.to_string());
  }
  EXPECT_GT(seen.size(), 1u);
}

TEST(FindDelta, NonSquareGenerators) {
  EXPECT_EQ(find_delta(3, 1, 0).rep(), poly(3, {2}));
  const u64 d5 = find_delta(5, 1, 0).rep().coeff(0);
  EXPECT_TRUE(d5 == 2 || d5 == 3);

  for (u64 p : {3, 5, 7})
    for (int m = 1; m <= 3; ++m) {
      const auto delta = find_delta(p, m, 0);
      const u64 q = delta.field_size();
      for (u64 idx = 0; idx < q; ++idx) {
        const auto z = ExtensionElement::from_index(idx, delta.modulus());
        ASSERT_FALSE(z * z == delta) << "delta has a square root";
      }
    }
}

TEST(FindDelta, SquareRootIsAnOddFrobeniusCycle) {
  for (u64 p : {3, 5, 7, 11})
    for (int m = 1; m <= 4; ++m) {
      const auto delta = find_delta(p, m, 3);
      const FqPolynomial h = minimal_polynomial(delta).compose_square();
      ASSERT_TRUE(is_irreducible(h));
      // in the splitting field F_p[s]/(h), Frobenius^m sends s to -s
      const auto s = ExtensionElement(FqPolynomial::monomial(prime_field(p), 1), h);
      ExtensionElement fs = s;
      for (int k = 0; k < m; ++k) fs = fs.frobenius();
      EXPECT_EQ(fs, -s);
      EXPECT_EQ(cycle_type_from_charpoly(h, 0), CarterType({{m, CycleParity::Odd}}));
    }
}

TEST(MinimalPolynomial, Examples) {
  const FqPolynomial f3 = find_irreducible(3, 2, 0);  // x^2 + 1
  EXPECT_EQ(minimal_polynomial(ExtensionElement::constant(2, f3)), poly(3, {-2, 1}));
  const auto i = ExtensionElement(FqPolynomial::monomial(prime_field(3), 1), f3);
  EXPECT_EQ(minimal_polynomial(i), poly(3, {1, 0, 1}));
  const auto eta = find_eta(3, 2, 0);
  EXPECT_EQ(minimal_polynomial(eta * eta), minpoly_by_orbit(eta * eta));
}

TEST(MinimalPolynomial, MatchesFrobeniusOrbit) {
  for (u64 p : {3, 5, 7})
    for (int m = 1; m <= 4; ++m) {
      const FqPolynomial mod = find_irreducible(p, m, 0);
      const u64 q = checked_pow(p, m);
      for (u64 idx = 0; idx < std::min<u64>(q, 60); ++idx) {
        const auto e = ExtensionElement::from_index((idx * 7919) % q, mod);
        const FqPolynomial mp = minimal_polynomial(e);
        ASSERT_EQ(mp, minpoly_by_orbit(e)) << e.to_string();
        EXPECT_TRUE(is_irreducible(mp));
      }
    }
}

TEST(Factor, Examples) {
  auto f = factor(poly(3, {-1, 0, 1}), 0);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].poly.degree(), 1);
  EXPECT_EQ(f[1].poly.degree(), 1);

  f = factor(poly(3, {1, 0, 1}), 0);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f[0].poly, poly(3, {1, 0, 1}));

  f = factor(poly(5, {-1, 0, 0, 0, 1}), 0);
  ASSERT_EQ(f.size(), 4u);
  for (const auto& pf : f) EXPECT_EQ(pf.poly.degree(), 1);
}

TEST(Factor, RemultiplicationOnRandomPolynomials) {
  for (u64 p : {3, 5, 7, 11}) {
    std::mt19937_64 rng(p);
    for (int iter = 0; iter < 1000; ++iter) {
      const int deg = 1 + static_cast<int>(rng() % 12);
      FqPolynomial f = random_poly(rng, p, deg);
      if (iter % 5 == 0) f = f * random_poly(rng, p, 2) * random_poly(rng, p, 2);  // force repeats sometimes
      const auto fs = factor(f, rng());
      FqPolynomial prod = FqPolynomial::constant(prime_field(p), f.leading());
      for (const auto& pf : fs) {
        ASSERT_TRUE(pf.poly.is_monic());
        ASSERT_TRUE(is_irreducible(pf.poly)) << pf.poly.to_string();
        for (int k = 0; k < pf.multiplicity; ++k) prod = prod * pf.poly;
      }
      ASSERT_EQ(prod, f) << f.to_string();
    }
  }
}

TEST(Factor, SeedDoesNotChangeResult) {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 50; ++iter) {
    const FqPolynomial f = random_poly(rng, 7, 10);
    EXPECT_EQ(factor(f, 1), factor(f, 123456));
  }
}

TEST(CycleType, Examples) {
  EXPECT_EQ(cycle_type_from_charpoly(poly(3, {1, 0, 1}), 0), CarterType({{1, CycleParity::Odd}}));
  EXPECT_EQ(cycle_type_from_charpoly(poly(5, {-2, 1}) * poly(5, {2, 1}), 0), CarterType({{1, CycleParity::Even}}));
  const auto eta = find_eta(7, 2, 0);
  const FqPolynomial g = minimal_polynomial(eta);
  EXPECT_EQ(cycle_type_from_charpoly(g * negation_partner(g), 0), CarterType({{2, CycleParity::Even}}));
}

TEST(CycleType, RejectsInvalidInput) {
  EXPECT_THROW(cycle_type_from_charpoly(poly(5, {0, 0, 1}), 0), MalformedInput);                 // root 0
  EXPECT_THROW(cycle_type_from_charpoly(poly(5, {1, 0, 1}) * poly(5, {1, 0, 1}), 0), MalformedInput);  // repeated
  EXPECT_THROW(cycle_type_from_charpoly(poly(5, {-1, 1}) * poly(5, {-2, 1}), 0), MalformedInput);     // unpaired
}

TEST(CycleType, LengthsSumToHalfDegreeOnRandomEvenProducts) {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 200; ++iter) {
    const u64 p = 13;
    FqPolynomial f = FqPolynomial::constant(prime_field(p), 1);
    int half = 0;
    // random product of distinct negation-stable pieces
    std::set<std::vector<u64>> used;
    for (int k = 0; k < 3; ++k) {
      const int m = 1 + static_cast<int>(rng() % 2);
      const bool odd = rng() % 2;
      const auto e = find_delta(p, m, rng());
      FqPolynomial piece = odd ? minimal_polynomial(e).compose_square()
                               : minimal_polynomial(e) * negation_partner(minimal_polynomial(e));
      if (!odd && minimal_polynomial(e) == negation_partner(minimal_polynomial(e))) continue;
      if (!used.insert(piece.coeffs()).second || gcd(f, piece).degree() > 0) continue;
      f = f * piece;
      half += m;
    }
    if (half == 0) continue;
    EXPECT_EQ(cycle_type_from_charpoly(f, rng()).rank(), half);
  }
}
