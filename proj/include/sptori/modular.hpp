#pragma once

// Residue rings Z/p^k (k = 1 is the prime field) with dense polynomials and
// matrices over them. Everything is value-typed; no global state.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sptori {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Largest modulus accepted anywhere; products are formed in 128 bits.
inline constexpr u64 kMaxModulus = u64{1} << 62;

class ModRing {
 public:
  ModRing() = default;
  /// Throws InvalidArgument if p < 2, exponent < 1, or p^exponent > kMaxModulus.
  ModRing(u64 p, int exponent);

  u64 prime() const { return p_; }
  int exponent() const { return k_; }
  u64 modulus() const { return m_; }
  bool is_field() const { return k_ == 1; }

  u64 from_signed(std::int64_t v) const;
  u64 reduce(u64 v) const { return v % m_; }
  u64 add(u64 a, u64 b) const {
    u64 s = a + b;
    return s >= m_ ? s - m_ : s;
  }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + m_ - b; }
  u64 neg(u64 a) const { return a == 0 ? 0 : m_ - a; }
  u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<u128>(a) * b % m_); }
  u64 pow(u64 base, u64 e) const;
  bool is_unit(u64 a) const { return a % p_ != 0; }
  /// Throws SingularMatrix if `a` is not a unit.
  u64 inv(u64 a) const;
  /// p-adic valuation of a residue; `exponent()` for zero.
  int valuation(u64 a) const;
  /// The same prime at another exponent; residues map by reduction.
  ModRing with_exponent(int exponent) const { return ModRing(p_, exponent); }

  bool operator==(const ModRing& o) const { return p_ == o.p_ && k_ == o.k_; }

 private:
  u64 p_ = 0;
  int k_ = 0;
  u64 m_ = 1;
};

/// p^e, throwing InvalidArgument on overflow past kMaxModulus.
u64 checked_pow(u64 p, int e);

/// Dense univariate polynomial, coefficients low to high, no trailing zeros.
class ModPoly {
 public:
  ModPoly() = default;
  explicit ModPoly(ModRing ring, std::vector<u64> coeffs = {});
  static ModPoly constant(ModRing ring, u64 c);
  static ModPoly monomial(ModRing ring, int degree, u64 c = 1);
  static ModPoly from_signed(ModRing ring, const std::vector<std::int64_t>& coeffs);

  const ModRing& ring() const { return ring_; }
  const std::vector<u64>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  u64 coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0; }
  u64 leading() const { return c_.empty() ? 0 : c_.back(); }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }

  ModPoly operator+(const ModPoly& o) const;
  ModPoly operator-(const ModPoly& o) const;
  ModPoly operator-() const;
  ModPoly operator*(const ModPoly& o) const;
  ModPoly scaled(u64 s) const;

  ModPoly derivative() const;
  /// h(x) -> h(-x).
  ModPoly negate_variable() const;
  /// h(x) -> h(x^2).
  ModPoly compose_square() const;
  /// h(x) -> s^deg(h) h(x / s) for a unit s; roots get multiplied by s.
  ModPoly scale_roots(u64 s) const;
  ModPoly make_monic() const;
  /// Reduces every coefficient into `target` (same prime, smaller exponent).
  ModPoly reduced(const ModRing& target) const;
  u64 eval(u64 x) const;

  std::string to_string(const std::string& var = "x") const;

  bool operator==(const ModPoly& o) const { return ring_ == o.ring_ && c_ == o.c_; }

 private:
  void trim();
  ModRing ring_;
  std::vector<u64> c_;
};

/// Division with remainder; the divisor's leading coefficient must be a unit.
std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b);
ModPoly operator%(const ModPoly& a, const ModPoly& b);
ModPoly operator/(const ModPoly& a, const ModPoly& b);
ModPoly mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m);
ModPoly powmod(ModPoly base, u64 e, const ModPoly& m);
/// Monic gcd over a prime field.
ModPoly gcd(ModPoly a, ModPoly b);

class ModMatrix {
 public:
  ModMatrix() = default;
  ModMatrix(ModRing ring, std::size_t rows, std::size_t cols);
  static ModMatrix identity(ModRing ring, std::size_t n);

  const ModRing& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  u64& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  u64 operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<u64> column(std::size_t j) const;
  void set_column(std::size_t j, std::span<const u64> values);

  ModMatrix operator*(const ModMatrix& o) const;
  ModMatrix operator+(const ModMatrix& o) const;
  ModMatrix operator-(const ModMatrix& o) const;
  ModMatrix scaled(u64 s) const;
  ModMatrix transpose() const;
  std::vector<u64> apply(std::span<const u64> v) const;
  ModMatrix reduced(const ModRing& target) const;

  bool operator==(const ModMatrix& o) const {
    return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  ModRing ring_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<u64> data_;
};

/// Solves A x = b by Gaussian elimination with unit pivots. Throws
/// SingularMatrix when A is singular modulo p.
std::vector<u64> solve_linear(const ModMatrix& a, std::span<const u64> b);
/// Column-by-column solve of A X = B.
ModMatrix solve_linear(const ModMatrix& a, const ModMatrix& b);
ModMatrix inverse(const ModMatrix& a);

/// det(x I - M) via Berkowitz; division-free, so exact over any Z/p^k.
ModPoly berkowitz_charpoly(const ModMatrix& m);

/// Kernel basis of a matrix over a prime field (columns of the result).
std::vector<std::vector<u64>> nullspace(const ModMatrix& a);

}  // namespace sptori
