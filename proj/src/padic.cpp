#include "sptori/padic.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "sptori/errors.hpp"
#include "sptori/finite_field.hpp"

namespace sptori {

namespace {

int raw_valuation(u64 v, u64 p) {
  if (v == 0) return kInfiniteValuation;
  int k = 0;
  while (v % p == 0) {
    v /= p;
    ++k;
  }
  return k;
}

void require_same(const ScaledPadic& a, const ScaledPadic& b) {
  if (a.prime() != b.prime()) throw InvalidArgument("mixing p-adic values of different primes");
}

}  // namespace

// ----------------------------------------------------------- ScaledPadic

u64 ScaledPadic::numerator_modulus() const { return checked_pow(p_, precision_ + 1); }

ScaledPadic ScaledPadic::zero(u64 p, int precision) { return from_numerator(0, p, precision); }

ScaledPadic ScaledPadic::from_numerator(u64 numerator, u64 p, int precision) {
  if (precision < 0) throw PrecisionError("negative p-adic precision");
  const u64 mod = checked_pow(p, precision + 1);
  return ScaledPadic(numerator % mod, p, precision);
}

ScaledPadic ScaledPadic::from_integer(u64 value, u64 p, int precision) {
  const u64 mod = checked_pow(p, precision + 1);
  return ScaledPadic(static_cast<u64>(static_cast<u128>(value % mod) * p % mod), p, precision);
}

ScaledPadic ScaledPadic::from_signed(std::int64_t value, u64 p, int precision) {
  const ModRing ring(p, precision + 1);
  return from_integer(ring.from_signed(value), p, precision);
}

int ScaledPadic::valuation() const {
  if (num_ == 0) return kInfiniteValuation;
  return raw_valuation(num_, p_) - 1;
}

u64 ScaledPadic::integer_value() const {
  if (!is_integral()) throw PrecisionError("value " + to_string() + " is not integral");
  return num_ / p_;
}

u64 ScaledPadic::residue() const { return integer_value() % p_; }

ScaledPadic ScaledPadic::operator+(const ScaledPadic& o) const {
  require_same(*this, o);
  const int prec = std::min(precision_, o.precision_);
  const ModRing ring(p_, prec + 1);
  return ScaledPadic(ring.add(ring.reduce(num_), ring.reduce(o.num_)), p_, prec);
}

ScaledPadic ScaledPadic::operator-(const ScaledPadic& o) const { return *this + (-o); }

ScaledPadic ScaledPadic::operator-() const {
  const ModRing ring(p_, precision_ + 1);
  return ScaledPadic(ring.neg(num_), p_, precision_);
}

ScaledPadic ScaledPadic::operator*(const ScaledPadic& o) const {
  require_same(*this, o);
  if (is_zero() || o.is_zero()) return zero(p_, std::min(precision_, o.precision_));
  // (a/p)(b/p) = (ab/p)/p; absolute precision of a product of values with
  // valuations va, vb is min(Na + vb, Nb + va)
  const int va = valuation(), vb = o.valuation();
  if (va + vb < -1)
    throw PrecisionError("product " + to_string() + " * " + o.to_string() + " leaves the p^-1 scale");
  const int prec = std::min(precision_ + vb, o.precision_ + va);
  if (prec < 0) throw PrecisionError("precision exhausted in product");
  // exact numerator of the product: a*b/p, computed with enough room
  const u128 ab = static_cast<u128>(num_) * o.num_ / p_;
  return from_numerator(static_cast<u64>(ab % checked_pow(p_, prec + 1)), p_, prec);
}

ScaledPadic ScaledPadic::times_p() const {
  return from_numerator(static_cast<u64>(static_cast<u128>(num_) * p_ % numerator_modulus()), p_,
                        precision_);
}

ScaledPadic ScaledPadic::divided_by_p() const {
  if (precision_ < 1) throw PrecisionError("precision exhausted dividing by p");
  if (!is_integral()) throw PrecisionError("dividing " + to_string() + " by p leaves the p^-1 scale");
  return from_numerator(num_ / p_, p_, precision_ - 1);
}

ScaledPadic ScaledPadic::with_precision(int precision) const {
  if (precision > precision_) throw PrecisionError("cannot raise the precision of a truncated value");
  return from_numerator(num_, p_, precision);
}

std::string ScaledPadic::to_string() const {
  if (num_ == 0) return "0";
  const int v = valuation();
  u64 unit = num_;
  for (int k = 0; k < v + 1; ++k) unit /= p_;
  std::ostringstream os;
  os << unit << "*p^" << v;
  return os.str();
}

ScaledPadic ScaledPadic::parse(const std::string& text, u64 p, int precision) {
  if (text == "0") return zero(p, precision);
  const auto star = text.find("*p^");
  if (star == std::string::npos) throw InvalidArgument("expected 'u*p^v', got '" + text + "'");
  u64 unit = 0;
  int v = 0;
  try {
    std::size_t used = 0;
    unit = std::stoull(text.substr(0, star), &used);
    if (used != star) throw InvalidArgument("bad unit");
    const std::string vs = text.substr(star + 3);
    v = std::stoi(vs, &used);
    if (used != vs.size()) throw InvalidArgument("bad exponent");
  } catch (const std::exception&) {
    throw InvalidArgument("expected 'u*p^v', got '" + text + "'");
  }
  if (v < -1) throw InvalidArgument("exponent below -1 in '" + text + "'");
  if (unit % p == 0) throw InvalidArgument("unit part divisible by p in '" + text + "'");
  if (v + 1 > precision) return zero(p, precision);
  const u64 mod = checked_pow(p, precision + 1);
  const u64 scale = checked_pow(p, v + 1);
  return from_numerator(static_cast<u64>(static_cast<u128>(unit % mod) * scale % mod), p, precision);
}

// ----------------------------------------------------------- PadicMatrix

PadicMatrix::PadicMatrix(u64 p, int precision, std::size_t dim)
    : p_(p), precision_(precision), dim_(dim), data_(dim * dim, ScaledPadic::zero(p, precision)) {}

PadicMatrix PadicMatrix::from_integers(const ModMatrix& m, int precision) {
  if (m.rows() != m.cols()) throw InvalidArgument("PadicMatrix must be square");
  PadicMatrix out(m.ring().prime(), precision, m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out.set(i, j, ScaledPadic::from_integer(m(i, j), out.p_, precision));
  return out;
}

void PadicMatrix::set(std::size_t i, std::size_t j, const ScaledPadic& v) {
  if (v.prime() != p_) throw InvalidArgument("entry has the wrong prime");
  data_[i * dim_ + j] = v.precision() == precision_ ? v : v.with_precision(precision_);
}

int PadicMatrix::min_valuation() const {
  int v = kInfiniteValuation;
  for (const auto& e : data_) v = std::min(v, e.valuation());
  return v;
}

ModMatrix PadicMatrix::integer_part() const {
  const ModRing ring(p_, std::max(precision_, 1));
  ModMatrix out(ring, dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(i, j) = ring.reduce((*this)(i, j).integer_value());
  return out;
}

// ------------------------------------------------------------ ScaledPoly

ModPoly ScaledPoly::residue() const {
  if (coeffs.empty()) throw InvalidArgument("empty polynomial");
  if (precision < 1) throw PrecisionError("no residue digit left");
  const u64 p = coeffs.front().prime();
  const ModRing field(p, 1);
  std::vector<u64> c;
  for (const auto& v : coeffs) c.push_back(v.residue());
  return ModPoly(field, std::move(c));
}

bool ScaledPoly::is_even() const {
  for (std::size_t j = 1; j < coeffs.size(); j += 2)
    if (!coeffs[j].is_zero()) return false;
  return true;
}

ModPoly lift_modulus(const ModPoly& fbar, int precision) {
  if (!fbar.ring().is_field()) throw InvalidArgument("lift_modulus expects a polynomial over F_p");
  if (!fbar.is_monic()) throw InvalidArgument("lift_modulus expects a monic polynomial");
  if (!is_irreducible(fbar)) throw InvalidArgument("lift_modulus expects an irreducible polynomial");
  return ModPoly(ModRing(fbar.ring().prime(), precision), fbar.coeffs());
}

// ----------------------------------------------------- UnramifiedElement

UnramifiedElement::UnramifiedElement(ModPoly rep, ModPoly modulus)
    : rep_(std::move(rep) % modulus), modulus_(std::move(modulus)) {
  if (!modulus_.is_monic()) throw InvalidArgument("unramified modulus must be monic");
}

UnramifiedElement UnramifiedElement::constant(u64 c, const ModPoly& modulus) {
  return UnramifiedElement(ModPoly::constant(modulus.ring(), c), modulus);
}

UnramifiedElement UnramifiedElement::generator(const ModPoly& modulus) {
  return UnramifiedElement(ModPoly::monomial(modulus.ring(), 1), modulus);
}

UnramifiedElement UnramifiedElement::from_coords(const std::vector<u64>& coords, const ModPoly& modulus) {
  return UnramifiedElement(ModPoly(modulus.ring(), coords), modulus);
}

std::vector<u64> UnramifiedElement::coords() const {
  std::vector<u64> c(static_cast<std::size_t>(degree()));
  for (int i = 0; i < degree(); ++i) c[i] = rep_.coeff(i);
  return c;
}

UnramifiedElement UnramifiedElement::operator+(const UnramifiedElement& o) const {
  return UnramifiedElement(rep_ + o.rep_, modulus_);
}
UnramifiedElement UnramifiedElement::operator-(const UnramifiedElement& o) const {
  return UnramifiedElement(rep_ - o.rep_, modulus_);
}
UnramifiedElement UnramifiedElement::operator-() const { return UnramifiedElement(-rep_, modulus_); }
UnramifiedElement UnramifiedElement::operator*(const UnramifiedElement& o) const {
  return UnramifiedElement(rep_ * o.rep_, modulus_);
}
UnramifiedElement UnramifiedElement::scaled(u64 s) const { return UnramifiedElement(rep_.scaled(s), modulus_); }
UnramifiedElement UnramifiedElement::pow(u64 e) const {
  return UnramifiedElement(powmod(rep_, e, modulus_), modulus_);
}

ModMatrix UnramifiedElement::multiplication_matrix() const {
  const auto m = static_cast<std::size_t>(degree());
  ModMatrix out(ring(), m, m);
  UnramifiedElement basis = constant(1, modulus_);
  const UnramifiedElement t = generator(modulus_);
  for (std::size_t j = 0; j < m; ++j) {
    out.set_column(j, ((*this) * basis).coords());
    basis = basis * t;
  }
  return out;
}

u64 trace_to_base(const UnramifiedElement& e) {
  const ModMatrix mult = e.multiplication_matrix();
  u64 tr = 0;
  for (std::size_t i = 0; i < mult.rows(); ++i) tr = e.ring().add(tr, mult(i, i));
  return tr;
}

// --------------------------------------------------------------- charpoly

namespace {

// e_i in {0,1} with v(M_ij) + e_i - e_j >= 0 for every nonzero entry, or empty.
std::vector<int> balancing_exponents(const PadicMatrix& m) {
  const std::size_t n = m.dim();
  std::vector<int> e(n, 0);
  std::vector<bool> must_be_zero(n, false);
  std::deque<std::size_t> queue;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m(i, j).valuation() == -1) {
        if (i == j) return {};
        must_be_zero[j] = true;
        if (!e[i]) {
          e[i] = 1;
          queue.push_back(i);
        }
      }
  // e_j = 1 forces e_i = 1 wherever v(M_ij) = 0
  while (!queue.empty()) {
    const std::size_t j = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < n; ++i)
      if (!e[i] && m(i, j).valuation() == 0) {
        e[i] = 1;
        queue.push_back(i);
      }
  }
  for (std::size_t j = 0; j < n; ++j)
    if (must_be_zero[j] && e[j]) return {};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const int v = m(i, j).valuation();
      if (v != kInfiniteValuation && v + e[i] - e[j] < 0) return {};
    }
  return e;
}

}  // namespace

ScaledPoly charpoly(const PadicMatrix& m) {
  const std::size_t d = m.dim();
  const u64 p = m.prime();
  const int n_prec = m.precision();
  if (d == 0) return {{ScaledPadic::from_integer(1, p, n_prec)}, n_prec};

  std::vector<int> e = balancing_exponents(m);
  if (!e.empty()) {
    const bool mixed = std::find(e.begin(), e.end(), 0) != e.end() &&
                       std::find(e.begin(), e.end(), 1) != e.end();
    if (!mixed) std::fill(e.begin(), e.end(), 0);
    const int prec = mixed ? n_prec - 1 : n_prec;
    if (prec < 1) throw PrecisionError("precision exhausted while balancing the matrix");
    const ModRing ring(p, prec);
    ModMatrix y(ring, d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const ScaledPadic& v = m(i, j);
        if (v.is_zero()) continue;
        const int shift = e[i] - e[j];
        // value = num / p; scaled value = num * p^(shift - 1)
        if (shift == 1) y(i, j) = ring.reduce(v.numerator());
        else if (shift == 0) y(i, j) = ring.reduce(v.numerator() / p);
        else y(i, j) = ring.reduce(v.numerator() / (p * p));
      }
    const ModPoly cp = berkowitz_charpoly(y);
    ScaledPoly out{{}, prec};
    for (std::size_t j = 0; j <= d; ++j) out.coeffs.push_back(ScaledPadic::from_integer(cp.coeff(int(j)), p, prec));
    return out;
  }

  // fallback: det(xI - pM) = p^d charpoly(M)(x / p)
  const int dd = static_cast<int>(d);
  const int prec = n_prec + 1 - dd;
  if (prec < 1)
    throw PrecisionError("precision exhausted: dimension " + std::to_string(d) +
                         " needs more than " + std::to_string(n_prec) + " digits");
  const ModRing wide(p, n_prec + 1);
  ModMatrix u(wide, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) u(i, j) = m(i, j).numerator();
  const ModPoly cp = berkowitz_charpoly(u);
  ScaledPoly out{{}, prec};
  for (int j = 0; j <= dd; ++j) {
    const u64 c = cp.coeff(j);
    const int need = dd - j - 1;  // numerator = c / p^(d-j-1)
    if (need < 0) {
      out.coeffs.push_back(ScaledPadic::from_integer(1, p, prec));  // leading coefficient
      continue;
    }
    if (c != 0 && raw_valuation(c, p) < need)
      throw PrecisionError("characteristic polynomial coefficient of x^" + std::to_string(j) +
                           " leaves the p^-1 scale");
    out.coeffs.push_back(ScaledPadic::from_numerator(c / checked_pow(p, need), p, prec));
  }
  return out;
}

}  // namespace sptori
