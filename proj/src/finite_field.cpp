#include "sptori/finite_field.hpp"

#include <algorithm>
#include <random>

#include "sptori/errors.hpp"

namespace sptori {

namespace {

u64 splitmix64(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

u64 mulmod64(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod64(u64 b, u64 e, u64 m) {
  u64 r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, b, m);
    b = mulmod64(b, b, m);
    e >>= 1;
  }
  return r;
}

FqPolynomial x_poly(const ModRing& ring) { return ModPoly::monomial(ring, 1); }

// x^(p^k) mod f by k successive p-th powers.
FqPolynomial frobenius_power_of_x(const FqPolynomial& f, int k) {
  const u64 p = f.ring().prime();
  FqPolynomial h = x_poly(f.ring()) % f;
  for (int i = 0; i < k; ++i) h = powmod(h, p, f);
  return h;
}

bool poly_less(const FqPolynomial& a, const FqPolynomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  return std::lexicographical_compare(ca.rbegin(), ca.rend(), cb.rbegin(), cb.rend());
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  bool cofactor_prime = n > 1 && is_prime(n);
  for (u64 q = 2; n > 1 && !cofactor_prime && q * q <= n; q += (q == 2 ? 1 : 2)) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
      cofactor_prime = n > 1 && is_prime(n);
    }
  }
  if (n > 1) out.push_back(n);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void require_odd_prime(u64 p) {
  if (p == 2 || !is_prime(p))
    throw InvalidArgument("p = " + std::to_string(p) + " is not an odd prime");
}

ModRing prime_field(u64 p) {
  require_odd_prime(p);
  return ModRing(p, 1);
}

u64 primitive_root(u64 p) {
  require_odd_prime(p);
  const auto qs = prime_factors(p - 1);
  for (u64 g = 2; g < p; ++g) {
    bool ok = true;
    for (u64 q : qs)
      if (powmod64(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  return 1;  // p = 3 handled above (g = 2); unreachable for odd primes
}

// ------------------------------------------------------ ExtensionElement

ExtensionElement::ExtensionElement(FqPolynomial rep, FqPolynomial modulus)
    : rep_(std::move(rep) % modulus), modulus_(std::move(modulus)) {}

ExtensionElement ExtensionElement::from_index(u64 index, const FqPolynomial& modulus) {
  const u64 p = modulus.ring().prime();
  std::vector<u64> c;
  for (int i = 0; i < modulus.degree(); ++i) {
    c.push_back(index % p);
    index /= p;
  }
  return ExtensionElement(FqPolynomial(modulus.ring(), std::move(c)), modulus);
}

ExtensionElement ExtensionElement::one(const FqPolynomial& modulus) { return constant(1, modulus); }

ExtensionElement ExtensionElement::constant(u64 c, const FqPolynomial& modulus) {
  return ExtensionElement(FqPolynomial::constant(modulus.ring(), c), modulus);
}

u64 ExtensionElement::field_size() const { return checked_pow(prime(), degree()); }

ExtensionElement ExtensionElement::operator+(const ExtensionElement& o) const {
  return ExtensionElement(rep_ + o.rep_, modulus_);
}
ExtensionElement ExtensionElement::operator-(const ExtensionElement& o) const {
  return ExtensionElement(rep_ - o.rep_, modulus_);
}
ExtensionElement ExtensionElement::operator-() const { return ExtensionElement(-rep_, modulus_); }
ExtensionElement ExtensionElement::operator*(const ExtensionElement& o) const {
  return ExtensionElement(rep_ * o.rep_, modulus_);
}
ExtensionElement ExtensionElement::pow(u64 e) const {
  return ExtensionElement(powmod(rep_, e, modulus_), modulus_);
}

// ------------------------------------------------------------ irreducible

bool is_irreducible(const FqPolynomial& f) {
  if (!f.ring().is_field()) throw InvalidArgument("irreducibility is tested over F_p");
  const int d = f.degree();
  if (d < 1) return false;
  if (d == 1) return true;
  const FqPolynomial g = f.make_monic();
  const FqPolynomial x = x_poly(g.ring());
  if (!(frobenius_power_of_x(g, d) == x % g)) return false;
  for (u64 q : prime_factors(static_cast<u64>(d))) {
    const FqPolynomial h = frobenius_power_of_x(g, d / static_cast<int>(q)) - x;
    if (gcd(g, h).degree() != 0) return false;
  }
  return true;
}

FqPolynomial find_irreducible(u64 p, int m, u64 seed) {
  const ModRing ring = prime_field(p);
  if (m < 1) throw InvalidArgument("extension degree must be >= 1");
  const u64 patterns = checked_pow(p, m) - 1;
  for (u64 i = 0; i < patterns; ++i) {
    u64 index = 1 + (seed % patterns + i) % patterns;
    std::vector<u64> c;
    for (int k = 0; k < m; ++k) {
      c.push_back(index % p);
      index /= p;
    }
    c.push_back(1);
    FqPolynomial f(ring, std::move(c));
    if (is_irreducible(f)) return f;
  }
  throw InvalidArgument("no irreducible polynomial found");  // impossible for m >= 1
}

u64 multiplicative_order(const ExtensionElement& e) {
  if (e.is_zero()) throw InvalidArgument("zero has no multiplicative order");
  const u64 group = e.field_size() - 1;
  u64 order = group;
  for (u64 q : prime_factors(group)) {
    while (order % q == 0 && e.pow(order / q).is_one()) order /= q;
  }
  return order;
}

bool is_multiplicative_generator(const ExtensionElement& e) {
  if (e.is_zero()) return false;
  const u64 group = e.field_size() - 1;
  for (u64 q : prime_factors(group))
    if (e.pow(group / q).is_one()) return false;
  return true;
}

namespace {

template <class Accept>
ExtensionElement seeded_element_search(u64 p, int m, u64 seed, u64 stream, Accept accept) {
  const FqPolynomial modulus = find_irreducible(p, m, 0);
  const u64 nonzero = checked_pow(p, m) - 1;
  const u64 offset = splitmix64(seed ^ stream) % nonzero;
  for (u64 i = 0; i < nonzero; ++i) {
    const u64 index = 1 + (offset + i) % nonzero;
    ExtensionElement e = ExtensionElement::from_index(index, modulus);
    if (accept(e)) return e;
  }
  throw InvalidArgument("no element satisfies the search condition");
}

}  // namespace

ExtensionElement find_eta(u64 p, int m, u64 seed) {
  return seeded_element_search(p, m, seed, 0x6574610000000000ULL, [m](const ExtensionElement& e) {
    return is_multiplicative_generator(e) && minimal_polynomial(e * e).degree() == m;
  });
}

ExtensionElement find_delta(u64 p, int m, u64 seed) {
  return seeded_element_search(p, m, seed, 0x64656c7461000000ULL,
                               [](const ExtensionElement& e) { return is_multiplicative_generator(e); });
}

FqPolynomial minimal_polynomial(const ExtensionElement& e) {
  const ModRing& ring = e.modulus().ring();
  const int m = e.degree();
  std::vector<ExtensionElement> powers{ExtensionElement::one(e.modulus())};
  for (int d = 1; d <= m; ++d) {
    powers.push_back(powers.back() * e);
    ModMatrix cols(ring, static_cast<std::size_t>(m), static_cast<std::size_t>(d) + 1);
    for (int j = 0; j <= d; ++j)
      for (int i = 0; i < m; ++i) cols(i, j) = powers[j].rep().coeff(i);
    const auto kernel = nullspace(cols);
    if (kernel.empty()) continue;
    const auto& v = kernel.front();
    return FqPolynomial(ring, v).make_monic();
  }
  throw InvalidArgument("minimal polynomial degree exceeds the extension degree");
}

// ------------------------------------------------------------ factoring

bool is_squarefree(const FqPolynomial& f) {
  if (f.degree() < 1) return true;
  const FqPolynomial d = f.derivative();
  if (d.is_zero()) return false;
  return gcd(f, d).degree() == 0;
}

namespace {

void squarefree_decomposition(const FqPolynomial& f, int scale,
                              std::vector<std::pair<FqPolynomial, int>>& out) {
  const ModRing& ring = f.ring();
  const u64 p = ring.prime();
  const FqPolynomial one = FqPolynomial::constant(ring, 1);
  FqPolynomial c = gcd(f, f.derivative());
  FqPolynomial w = f / c;
  int i = 1;
  while (w.degree() > 0) {
    FqPolynomial y = gcd(w, c);
    FqPolynomial fac = w / y;
    if (fac.degree() > 0) out.emplace_back(fac.make_monic(), i * scale);
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) {
    // c is a polynomial in x^p; coefficients in F_p are their own p-th roots
    std::vector<u64> root;
    for (int k = 0; k <= c.degree(); k += static_cast<int>(p)) root.push_back(c.coeff(k));
    squarefree_decomposition(FqPolynomial(ring, std::move(root)).make_monic(),
                             scale * static_cast<int>(p), out);
  }
}

std::vector<std::pair<FqPolynomial, int>> distinct_degree(FqPolynomial g) {
  std::vector<std::pair<FqPolynomial, int>> out;
  const ModRing& ring = g.ring();
  const u64 p = ring.prime();
  const FqPolynomial x = x_poly(ring);
  FqPolynomial h = x % g;
  for (int i = 1; g.degree() >= 2 * i; ++i) {
    h = powmod(h, p, g);
    FqPolynomial d = gcd(g, h - x);
    if (d.degree() > 0) {
      out.emplace_back(d, i);
      g = g / d;
      h = h % g;
    }
  }
  if (g.degree() > 0) out.emplace_back(g.make_monic(), g.degree());
  return out;
}

void equal_degree(const FqPolynomial& g, int d, std::mt19937_64& rng, std::vector<FqPolynomial>& out) {
  if (g.degree() == d) {
    out.push_back(g.make_monic());
    return;
  }
  const ModRing& ring = g.ring();
  const u64 p = ring.prime();
  const FqPolynomial one = FqPolynomial::constant(ring, 1);
  for (;;) {
    std::vector<u64> c(static_cast<std::size_t>(g.degree()));
    for (auto& v : c) v = rng() % p;
    FqPolynomial a(ring, std::move(c));
    if (a.degree() < 1) continue;
    // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p - 1)/2)
    FqPolynomial norm = a % g;
    FqPolynomial frob = a % g;
    for (int k = 1; k < d; ++k) {
      frob = powmod(frob, p, g);
      norm = mulmod(norm, frob, g);
    }
    FqPolynomial b = powmod(norm, (p - 1) / 2, g);
    FqPolynomial split = gcd(g, b - one);
    if (split.degree() > 0 && split.degree() < g.degree()) {
      equal_degree(split, d, rng, out);
      equal_degree(g / split, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<PolyFactor> factor(const FqPolynomial& f, u64 seed) {
  if (!f.ring().is_field()) throw InvalidArgument("factorization is over F_p");
  if (f.is_zero()) throw InvalidArgument("cannot factor the zero polynomial");
  require_odd_prime(f.ring().prime());
  std::vector<PolyFactor> out;
  if (f.degree() == 0) return out;
  std::mt19937_64 rng(seed);
  std::vector<std::pair<FqPolynomial, int>> sqf;
  squarefree_decomposition(f.make_monic(), 1, sqf);
  for (const auto& [part, mult] : sqf) {
    for (const auto& [block, d] : distinct_degree(part)) {
      std::vector<FqPolynomial> irreducibles;
      equal_degree(block.make_monic(), d, rng, irreducibles);
      for (auto& q : irreducibles) out.push_back({std::move(q), mult});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const PolyFactor& l, const PolyFactor& r) { return poly_less(l.poly, r.poly); });
  return out;
}

FqPolynomial negation_partner(const FqPolynomial& h) {
  FqPolynomial r = h.negate_variable();
  return h.degree() % 2 ? -r : r;
}

std::vector<CycleFactor> cycle_decomposition(const FqPolynomial& charpoly, u64 seed) {
  if (charpoly.degree() < 0) throw MalformedInput("zero characteristic polynomial");
  if (charpoly.degree() % 2) throw MalformedInput("characteristic polynomial has odd degree");
  if (charpoly.degree() == 0) return {};
  if (charpoly.coeff(0) == 0) throw MalformedInput("characteristic polynomial has the root 0");
  if (!is_squarefree(charpoly)) throw MalformedInput("characteristic polynomial is not squarefree");
  const auto factors = factor(charpoly, seed);
  std::vector<bool> used(factors.size(), false);
  std::vector<CycleFactor> out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (used[i]) continue;
    const FqPolynomial& h = factors[i].poly;
    const FqPolynomial partner = negation_partner(h);
    used[i] = true;
    if (partner == h) {
      if (h.degree() % 2)
        throw MalformedInput("self-paired factor of odd degree: " + h.to_string());
      out.push_back({{h.degree() / 2, CycleParity::Odd}, {h}});
      continue;
    }
    auto it = std::find_if(factors.begin(), factors.end(),
                           [&](const PolyFactor& f) { return f.poly == partner; });
    if (it == factors.end())
      throw MalformedInput("factor " + h.to_string() + " has no negation partner");
    used[static_cast<std::size_t>(it - factors.begin())] = true;
    out.push_back({{h.degree(), CycleParity::Even}, {h, partner}});
  }
  return out;
}

CarterType cycle_type_from_charpoly(const FqPolynomial& charpoly, u64 seed) {
  std::vector<Cycle> cycles;
  for (const auto& cf : cycle_decomposition(charpoly, seed)) cycles.push_back(cf.cycle);
  return CarterType(std::move(cycles));
}

}  // namespace sptori
