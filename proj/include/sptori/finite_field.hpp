#pragma once

// Prime fields F_p (p odd), their extensions F_p[x]/(f), irreducible
// polynomial search, polynomial factorization (squarefree, distinct-degree,
// Cantor-Zassenhaus), and the Frobenius cycle type of a characteristic
// polynomial that is invariant under x -> -x.

#include <cstdint>
#include <string>
#include <vector>

#include "sptori/combinatorics.hpp"
#include "sptori/modular.hpp"

namespace sptori {

/// Polynomials over F_p are ModPoly over a ring of exponent 1.
using FqPolynomial = ModPoly;

struct FpElement {
  u64 residue = 0;
  u64 p = 0;

  bool operator==(const FpElement&) const = default;
};

/// Deterministic trial division + Miller-Rabin; exact for all 64-bit inputs.
bool is_prime(u64 n);
/// Distinct prime divisors, ascending.
std::vector<u64> prime_factors(u64 n);
/// Smallest generator of F_p^x.
u64 primitive_root(u64 p);
/// Throws InvalidArgument unless p is an odd prime.
void require_odd_prime(u64 p);
ModRing prime_field(u64 p);

/// Element of F_p[x]/(modulus) with modulus monic irreducible.
class ExtensionElement {
 public:
  ExtensionElement() = default;
  ExtensionElement(FqPolynomial rep, FqPolynomial modulus);
  /// Element whose base-p digits (low first) are the coefficients.
  static ExtensionElement from_index(u64 index, const FqPolynomial& modulus);
  static ExtensionElement one(const FqPolynomial& modulus);
  static ExtensionElement constant(u64 c, const FqPolynomial& modulus);

  const FqPolynomial& rep() const { return rep_; }
  const FqPolynomial& modulus() const { return modulus_; }
  int degree() const { return modulus_.degree(); }
  u64 prime() const { return modulus_.ring().prime(); }
  /// p^degree, throwing InvalidArgument past 2^62.
  u64 field_size() const;

  bool is_zero() const { return rep_.is_zero(); }
  bool is_one() const { return rep_.degree() == 0 && rep_.coeff(0) == 1; }

  ExtensionElement operator+(const ExtensionElement& o) const;
  ExtensionElement operator-(const ExtensionElement& o) const;
  ExtensionElement operator-() const;
  ExtensionElement operator*(const ExtensionElement& o) const;
  ExtensionElement pow(u64 e) const;
  ExtensionElement frobenius() const { return pow(prime()); }

  std::string to_string() const { return rep_.to_string("t"); }
  bool operator==(const ExtensionElement& o) const { return rep_ == o.rep_ && modulus_ == o.modulus_; }

 private:
  FqPolynomial rep_;
  FqPolynomial modulus_;
};

/// Rabin test for irreducibility over F_p.
bool is_irreducible(const FqPolynomial& f);

/// First monic irreducible of degree m in a seed-rotated scan of the p^m - 1
/// nonzero low-coefficient patterns. Seed 0 scans from x^m + 1 upward.
FqPolynomial find_irreducible(u64 p, int m, u64 seed);

/// Exact multiplicative order; throws InvalidArgument on zero.
u64 multiplicative_order(const ExtensionElement& e);

bool is_multiplicative_generator(const ExtensionElement& e);

/// Generator eta of F_{p^m}^x such that eta^2 generates F_{p^m} over F_p.
ExtensionElement find_eta(u64 p, int m, u64 seed);

/// Generator delta of F_{p^m}^x; x^2 - delta is then irreducible over F_{p^m}.
ExtensionElement find_delta(u64 p, int m, u64 seed);

/// Monic minimal polynomial over F_p (first linear relation among powers).
FqPolynomial minimal_polynomial(const ExtensionElement& e);

struct PolyFactor {
  FqPolynomial poly;
  int multiplicity = 1;

  bool operator==(const PolyFactor&) const = default;
};

/// Monic irreducible factors with multiplicities, sorted by (degree, coeffs).
/// The leading coefficient of `f` is dropped.
std::vector<PolyFactor> factor(const FqPolynomial& f, u64 seed);

bool is_squarefree(const FqPolynomial& f);

/// (-1)^deg h * h(-x): the monic polynomial whose roots are the negated roots.
FqPolynomial negation_partner(const FqPolynomial& h);

/// One signed cycle of Frobenius on the roots of a negation-invariant
/// polynomial, with the irreducible factor(s) that carry it: one
/// self-paired factor for an odd cycle, a swapped pair for an even one.
struct CycleFactor {
  Cycle cycle;
  std::vector<FqPolynomial> factors;
};

/// Throws MalformedInput if not squarefree, if 0 is a root, if a factor is
/// self-paired of odd degree, or if a factor's negation partner is missing.
std::vector<CycleFactor> cycle_decomposition(const FqPolynomial& charpoly, u64 seed);

CarterType cycle_type_from_charpoly(const FqPolynomial& charpoly, u64 seed);

}  // namespace sptori
