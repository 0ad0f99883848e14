#include "sptori/modular.hpp"

#include <algorithm>
#include <sstream>

#include "sptori/errors.hpp"

namespace sptori {

u64 checked_pow(u64 p, int e) {
  u64 r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > kMaxModulus / p)
      throw InvalidArgument(std::to_string(p) + "^" + std::to_string(e) +
                            " exceeds the supported modulus range (2^62)");
    r *= p;
  }
  return r;
}

ModRing::ModRing(u64 p, int exponent) : p_(p), k_(exponent) {
  if (p < 2) throw InvalidArgument("modulus prime must be >= 2");
  if (exponent < 1) throw InvalidArgument("ring exponent must be >= 1");
  m_ = checked_pow(p, exponent);
}

u64 ModRing::from_signed(std::int64_t v) const {
  const auto m = static_cast<std::int64_t>(m_);
  std::int64_t r = v % m;
  if (r < 0) r += m;
  return static_cast<u64>(r);
}

u64 ModRing::pow(u64 base, u64 e) const {
  u64 result = 1 % m_;
  base %= m_;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

u64 ModRing::inv(u64 a) const {
  a %= m_;
  if (!is_unit(a)) throw SingularMatrix("element " + std::to_string(a) + " is not a unit mod " +
                                        std::to_string(m_));
  // extended Euclid on signed 128-bit to stay clear of overflow
  __int128 t = 0, new_t = 1;
  __int128 r = m_, new_r = a;
  while (new_r != 0) {
    __int128 q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += m_;
  return static_cast<u64>(t);
}

int ModRing::valuation(u64 a) const {
  a %= m_;
  if (a == 0) return k_;
  int v = 0;
  while (a % p_ == 0) {
    a /= p_;
    ++v;
  }
  return v;
}

// ---------------------------------------------------------------- ModPoly

ModPoly::ModPoly(ModRing ring, std::vector<u64> coeffs) : ring_(ring), c_(std::move(coeffs)) {
  for (auto& c : c_) c = ring_.reduce(c);
  trim();
}

ModPoly ModPoly::constant(ModRing ring, u64 c) { return ModPoly(ring, {c}); }

ModPoly ModPoly::monomial(ModRing ring, int degree, u64 c) {
  std::vector<u64> v(static_cast<std::size_t>(degree) + 1, 0);
  v.back() = c;
  return ModPoly(ring, std::move(v));
}

ModPoly ModPoly::from_signed(ModRing ring, const std::vector<std::int64_t>& coeffs) {
  std::vector<u64> v;
  v.reserve(coeffs.size());
  for (auto c : coeffs) v.push_back(ring.from_signed(c));
  return ModPoly(ring, std::move(v));
}

void ModPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

ModPoly ModPoly::operator+(const ModPoly& o) const {
  std::vector<u64> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = ring_.add(coeff(int(i)), o.coeff(int(i)));
  return ModPoly(ring_, std::move(r));
}

ModPoly ModPoly::operator-(const ModPoly& o) const {
  std::vector<u64> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = ring_.sub(coeff(int(i)), o.coeff(int(i)));
  return ModPoly(ring_, std::move(r));
}

ModPoly ModPoly::operator-() const {
  std::vector<u64> r(c_);
  for (auto& c : r) c = ring_.neg(c);
  return ModPoly(ring_, std::move(r));
}

ModPoly ModPoly::operator*(const ModPoly& o) const {
  if (is_zero() || o.is_zero()) return ModPoly(ring_);
  std::vector<u64> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i]) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j)
      r[i + j] = ring_.add(r[i + j], ring_.mul(c_[i], o.c_[j]));
  }
  return ModPoly(ring_, std::move(r));
}

ModPoly ModPoly::scaled(u64 s) const {
  std::vector<u64> r(c_);
  for (auto& c : r) c = ring_.mul(c, s);
  return ModPoly(ring_, std::move(r));
}

ModPoly ModPoly::derivative() const {
  if (c_.size() <= 1) return ModPoly(ring_);
  std::vector<u64> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = ring_.mul(c_[i], ring_.reduce(i));
  return ModPoly(ring_, std::move(r));
}

ModPoly ModPoly::negate_variable() const {
  std::vector<u64> r(c_);
  for (std::size_t i = 1; i < r.size(); i += 2) r[i] = ring_.neg(r[i]);
  return ModPoly(ring_, std::move(r));
}

ModPoly ModPoly::compose_square() const {
  if (is_zero()) return *this;
  std::vector<u64> r(2 * c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[2 * i] = c_[i];
  return ModPoly(ring_, std::move(r));
}

ModPoly ModPoly::scale_roots(u64 s) const {
  // s^d h(x/s) = sum h_i s^(d-i) x^i
  std::vector<u64> r(c_);
  u64 power = 1;
  for (std::size_t k = r.size(); k-- > 0;) {
    r[k] = ring_.mul(r[k], power);
    power = ring_.mul(power, s);
  }
  return ModPoly(ring_, std::move(r));
}

ModPoly ModPoly::make_monic() const {
  if (is_zero()) return *this;
  return scaled(ring_.inv(leading()));
}

ModPoly ModPoly::reduced(const ModRing& target) const {
  return ModPoly(target, c_);
}

u64 ModPoly::eval(u64 x) const {
  u64 acc = 0;
  for (std::size_t k = c_.size(); k-- > 0;) acc = ring_.add(ring_.mul(acc, x), c_[k]);
  return acc;
}

std::string ModPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = c_.size(); k-- > 0;) {
    if (!c_[k]) continue;
    if (!first) os << " + ";
    first = false;
    if (k == 0 || c_[k] != 1) os << c_[k];
    if (k > 0) {
      if (c_[k] != 1) os << '*';
      os << var;
      if (k > 1) os << '^' << k;
    }
  }
  return os.str();
}

std::pair<ModPoly, ModPoly> divmod(const ModPoly& a, const ModPoly& b) {
  if (b.is_zero()) throw InvalidArgument("polynomial division by zero");
  const ModRing& ring = a.ring();
  const u64 lead_inv = ring.inv(b.leading());
  std::vector<u64> rem = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {ModPoly(ring), a};
  std::vector<u64> quot(static_cast<std::size_t>(a.degree() - db) + 1, 0);
  for (int k = a.degree(); k >= db; --k) {
    const u64 c = ring.mul(rem[k], lead_inv);
    quot[k - db] = c;
    if (!c) continue;
    for (int j = 0; j <= db; ++j)
      rem[k - db + j] = ring.sub(rem[k - db + j], ring.mul(c, b.coeffs()[j]));
  }
  rem.resize(static_cast<std::size_t>(db));
  return {ModPoly(ring, std::move(quot)), ModPoly(ring, std::move(rem))};
}

ModPoly operator%(const ModPoly& a, const ModPoly& b) { return divmod(a, b).second; }
ModPoly operator/(const ModPoly& a, const ModPoly& b) { return divmod(a, b).first; }

ModPoly mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m) { return (a * b) % m; }

ModPoly powmod(ModPoly base, u64 e, const ModPoly& m) {
  ModPoly result = ModPoly::constant(m.ring(), 1) % m;
  base = base % m;
  while (e) {
    if (e & 1) result = mulmod(result, base, m);
    e >>= 1;
    if (e) base = mulmod(base, base, m);
  }
  return result;
}

ModPoly gcd(ModPoly a, ModPoly b) {
  if (!a.ring().is_field()) throw InvalidArgument("polynomial gcd needs a prime field");
  while (!b.is_zero()) {
    ModPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.make_monic();
}

// -------------------------------------------------------------- ModMatrix

ModMatrix::ModMatrix(ModRing ring, std::size_t rows, std::size_t cols)
    : ring_(ring), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

ModMatrix ModMatrix::identity(ModRing ring, std::size_t n) {
  ModMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1 % ring.modulus();
  return m;
}

std::vector<u64> ModMatrix::column(std::size_t j) const {
  std::vector<u64> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void ModMatrix::set_column(std::size_t j, std::span<const u64> values) {
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = i < values.size() ? ring_.reduce(values[i]) : 0;
}

ModMatrix ModMatrix::operator*(const ModMatrix& o) const {
  if (cols_ != o.rows_) throw InvalidArgument("matrix shape mismatch in product");
  ModMatrix r(ring_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const u64 a = (*this)(i, k);
      if (!a) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) = ring_.add(r(i, j), ring_.mul(a, o(k, j)));
    }
  return r;
}

ModMatrix ModMatrix::operator+(const ModMatrix& o) const {
  ModMatrix r(ring_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = ring_.add(data_[i], o.data_[i]);
  return r;
}

ModMatrix ModMatrix::operator-(const ModMatrix& o) const {
  ModMatrix r(ring_, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = ring_.sub(data_[i], o.data_[i]);
  return r;
}

ModMatrix ModMatrix::scaled(u64 s) const {
  ModMatrix r(*this);
  for (auto& v : r.data_) v = ring_.mul(v, s);
  return r;
}

ModMatrix ModMatrix::transpose() const {
  ModMatrix r(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

std::vector<u64> ModMatrix::apply(std::span<const u64> v) const {
  std::vector<u64> r(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r[i] = ring_.add(r[i], ring_.mul((*this)(i, j), v[j]));
  return r;
}

ModMatrix ModMatrix::reduced(const ModRing& target) const {
  ModMatrix r(target, rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = target.reduce(data_[i]);
  return r;
}

ModMatrix solve_linear(const ModMatrix& a, const ModMatrix& b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.rows() != n) throw InvalidArgument("solve_linear: shape mismatch");
  const ModRing& ring = a.ring();
  ModMatrix lhs = a;
  ModMatrix rhs = b;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && !ring.is_unit(lhs(pivot, col))) ++pivot;
    if (pivot == n)
      throw SingularMatrix("no unit pivot in column " + std::to_string(col) +
                           " (matrix singular mod " + std::to_string(ring.prime()) + ")");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lhs(pivot, j), lhs(col, j));
      for (std::size_t j = 0; j < rhs.cols(); ++j) std::swap(rhs(pivot, j), rhs(col, j));
    }
    const u64 inv = ring.inv(lhs(col, col));
    for (std::size_t j = 0; j < n; ++j) lhs(col, j) = ring.mul(lhs(col, j), inv);
    for (std::size_t j = 0; j < rhs.cols(); ++j) rhs(col, j) = ring.mul(rhs(col, j), inv);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      const u64 f = lhs(i, col);
      if (!f) continue;
      for (std::size_t j = 0; j < n; ++j) lhs(i, j) = ring.sub(lhs(i, j), ring.mul(f, lhs(col, j)));
      for (std::size_t j = 0; j < rhs.cols(); ++j)
        rhs(i, j) = ring.sub(rhs(i, j), ring.mul(f, rhs(col, j)));
    }
  }
  return rhs;
}

std::vector<u64> solve_linear(const ModMatrix& a, std::span<const u64> b) {
  ModMatrix rhs(a.ring(), a.rows(), 1);
  rhs.set_column(0, b);
  return solve_linear(a, rhs).column(0);
}

ModMatrix inverse(const ModMatrix& a) {
  return solve_linear(a, ModMatrix::identity(a.ring(), a.rows()));
}

ModPoly berkowitz_charpoly(const ModMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw InvalidArgument("characteristic polynomial of a non-square matrix");
  const ModRing& ring = m.ring();
  // vect holds det(x I - M_k) coefficients, highest degree first
  std::vector<u64> vect{1 % ring.modulus()};
  for (std::size_t k = 0; k < n; ++k) {
    // M_{k+1} = [[M_k, C], [R, a]] with C = column k above row k, R = row k left of column k
    const u64 a = m(k, k);
    std::vector<u64> col(k), row(k);
    for (std::size_t i = 0; i < k; ++i) {
      col[i] = m(i, k);
      row[i] = m(k, i);
    }
    // Toeplitz column: 1, -a, -R C, -R M C, -R M^2 C, ...
    std::vector<u64> toeplitz(k + 2);
    toeplitz[0] = 1 % ring.modulus();
    toeplitz[1] = ring.neg(a);
    std::vector<u64> power = col;
    for (std::size_t j = 2; j < k + 2; ++j) {
      u64 dot = 0;
      for (std::size_t i = 0; i < k; ++i) dot = ring.add(dot, ring.mul(row[i], power[i]));
      toeplitz[j] = ring.neg(dot);
      std::vector<u64> next(k, 0);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t l = 0; l < k; ++l) next[i] = ring.add(next[i], ring.mul(m(i, l), power[l]));
      power = std::move(next);
    }
    std::vector<u64> nv(k + 2, 0);
    for (std::size_t i = 0; i < k + 2; ++i)
      for (std::size_t j = 0; j <= i && j < vect.size(); ++j)
        nv[i] = ring.add(nv[i], ring.mul(toeplitz[i - j], vect[j]));
    vect = std::move(nv);
  }
  std::reverse(vect.begin(), vect.end());
  return ModPoly(ring, std::move(vect));
}

std::vector<std::vector<u64>> nullspace(const ModMatrix& a) {
  const ModRing& ring = a.ring();
  if (!ring.is_field()) throw InvalidArgument("nullspace needs a prime field");
  ModMatrix r = a;
  const std::size_t rows = r.rows(), cols = r.cols();
  std::vector<std::size_t> pivot_cols;
  std::size_t prow = 0;
  for (std::size_t col = 0; col < cols && prow < rows; ++col) {
    std::size_t piv = prow;
    while (piv < rows && r(piv, col) == 0) ++piv;
    if (piv == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(r(piv, j), r(prow, j));
    const u64 inv = ring.inv(r(prow, col));
    for (std::size_t j = 0; j < cols; ++j) r(prow, j) = ring.mul(r(prow, j), inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == prow || r(i, col) == 0) continue;
      const u64 f = r(i, col);
      for (std::size_t j = 0; j < cols; ++j) r(i, j) = ring.sub(r(i, j), ring.mul(f, r(prow, j)));
    }
    pivot_cols.push_back(col);
    ++prow;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<u64>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<u64> v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) v[pivot_cols[i]] = ring.neg(r(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace sptori
