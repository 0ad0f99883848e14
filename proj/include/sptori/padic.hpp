#pragma once

// Truncated p-adic arithmetic over F = Q_p with uniformizer p.
//
// ScaledPadic stores values of p^-1 Z_p as numerator / p with the numerator
// known modulo p^(N+1), i.e. the value is known modulo p^N. Nothing in the
// torus construction leaves valuation -1, so a product that would need p^-2
// is reported instead of silently rescaled.

#include <climits>
#include <string>
#include <vector>

#include "sptori/modular.hpp"

namespace sptori {

inline constexpr int kInfiniteValuation = INT_MAX;

class ScaledPadic {
 public:
  ScaledPadic() = default;
  static ScaledPadic zero(u64 p, int precision);
  /// value = numerator / p
  static ScaledPadic from_numerator(u64 numerator, u64 p, int precision);
  /// value = integer residue (taken mod p^precision)
  static ScaledPadic from_integer(u64 value, u64 p, int precision);
  static ScaledPadic from_signed(std::int64_t value, u64 p, int precision);
  /// Parses "u*p^v" (or "0"); inverse of to_string.
  static ScaledPadic parse(const std::string& text, u64 p, int precision);

  u64 numerator() const { return num_; }
  u64 prime() const { return p_; }
  int precision() const { return precision_; }
  u64 numerator_modulus() const;

  bool is_zero() const { return num_ == 0; }
  /// kInfiniteValuation for zero.
  int valuation() const;
  bool is_integral() const { return num_ % p_ == 0; }
  /// Integral value modulo p^precision; throws PrecisionError when v = -1.
  u64 integer_value() const;
  /// Integral value modulo p.
  u64 residue() const;

  ScaledPadic operator+(const ScaledPadic& o) const;
  ScaledPadic operator-(const ScaledPadic& o) const;
  ScaledPadic operator-() const;
  /// Throws PrecisionError if the product needs the scale p^-2.
  ScaledPadic operator*(const ScaledPadic& o) const;
  ScaledPadic times_p() const;
  /// value / p at one digit less precision; throws PrecisionError below p^-1.
  ScaledPadic divided_by_p() const;
  ScaledPadic with_precision(int precision) const;

  /// "u*p^v": v >= -1 the valuation, u the unit part mod p^(precision - v).
  /// Zero prints as "0".
  std::string to_string() const;

  bool operator==(const ScaledPadic& o) const {
    return p_ == o.p_ && precision_ == o.precision_ && num_ == o.num_;
  }

 private:
  ScaledPadic(u64 num, u64 p, int precision) : num_(num), p_(p), precision_(precision) {}
  u64 num_ = 0;
  u64 p_ = 0;
  int precision_ = 0;
};

/// Square matrix of ScaledPadic entries at one common precision.
class PadicMatrix {
 public:
  PadicMatrix() = default;
  PadicMatrix(u64 p, int precision, std::size_t dim);
  /// Integer matrix (entries are residues of its ring) at `precision`.
  static PadicMatrix from_integers(const ModMatrix& m, int precision);

  std::size_t dim() const { return dim_; }
  u64 prime() const { return p_; }
  int precision() const { return precision_; }

  const ScaledPadic& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
  /// Rejects entries of another prime or precision.
  void set(std::size_t i, std::size_t j, const ScaledPadic& v);

  /// Smallest entry valuation; kInfiniteValuation for the zero matrix.
  int min_valuation() const;
  /// Integer matrix mod p^precision; throws PrecisionError if some entry has v = -1.
  ModMatrix integer_part() const;

  bool operator==(const PadicMatrix& o) const = default;

 private:
  u64 p_ = 0;
  int precision_ = 0;
  std::size_t dim_ = 0;
  std::vector<ScaledPadic> data_;
};

/// Monic polynomial with ScaledPadic coefficients (low to high), all known
/// modulo p^precision.
struct ScaledPoly {
  std::vector<ScaledPadic> coeffs;
  int precision = 0;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  /// Reduction mod p; throws PrecisionError for a coefficient of valuation -1.
  ModPoly residue() const;
  /// Odd-degree coefficients vanish at the tracked precision.
  bool is_even() const;
};

/// Coefficientwise least-nonnegative lift of a monic irreducible over F_p to
/// Z/p^precision.
ModPoly lift_modulus(const ModPoly& fbar, int precision);

/// Element of Z_p[t]/(modulus) truncated mod p^k: the ring of integers of the
/// unramified extension of degree deg(modulus).
class UnramifiedElement {
 public:
  UnramifiedElement() = default;
  UnramifiedElement(ModPoly rep, ModPoly modulus);
  static UnramifiedElement constant(u64 c, const ModPoly& modulus);
  static UnramifiedElement generator(const ModPoly& modulus);
  /// Coordinates in the power basis 1, t, ..., t^(m-1).
  static UnramifiedElement from_coords(const std::vector<u64>& coords, const ModPoly& modulus);

  const ModPoly& rep() const { return rep_; }
  const ModPoly& modulus() const { return modulus_; }
  const ModRing& ring() const { return modulus_.ring(); }
  int degree() const { return modulus_.degree(); }
  std::vector<u64> coords() const;

  UnramifiedElement operator+(const UnramifiedElement& o) const;
  UnramifiedElement operator-(const UnramifiedElement& o) const;
  UnramifiedElement operator-() const;
  UnramifiedElement operator*(const UnramifiedElement& o) const;
  UnramifiedElement scaled(u64 s) const;
  UnramifiedElement pow(u64 e) const;

  /// Matrix of multiplication by this element in the power basis.
  ModMatrix multiplication_matrix() const;

  bool operator==(const UnramifiedElement& o) const { return rep_ == o.rep_ && modulus_ == o.modulus_; }

 private:
  ModPoly rep_;
  ModPoly modulus_;
};

/// Trace from the unramified extension down to Z/p^k.
u64 trace_to_base(const UnramifiedElement& e);

/// Characteristic polynomial over the scaled ring.
///
/// Strategy: look for e_i in {0,1} so that diag(p^e) M diag(p^-e) is
/// integral. When one exists the charpoly is computed division-free on that
/// integral matrix; precision is N, or N - 1 if some entry had to be divided
/// by p. Otherwise the numerator matrix p M is expanded and coefficient j is
/// divided by p^(d - j), leaving precision N + 1 - d; a PrecisionError is
/// raised if that is below 1 or if a coefficient would need p^-2.
ScaledPoly charpoly(const PadicMatrix& m);

}  // namespace sptori
