#include "sptori/construction.hpp"

#include <map>
#include <numeric>

#include "sptori/errors.hpp"

namespace sptori {

std::string to_string(BlockKind kind) {
  switch (kind) {
    case BlockKind::Mu0: return "mu0";
    case BlockKind::MuPrime: return "mu'";
    case BlockKind::MuDoublePrime: return "mu''";
  }
  return "?";
}

void require_valid_prime(u64 p, int n) {
  require_odd_prime(p);
  if (n < 0) throw InvalidArgument("negative rank");
  if (p <= static_cast<u64>(2 * n))
    throw InvalidArgument("p = " + std::to_string(p) + " must exceed 2n = " + std::to_string(2 * n));
}

u64 default_prime(int n) {
  if (n < 0) throw InvalidArgument("negative rank");
  u64 p = static_cast<u64>(2 * n) + 1;
  if (p < 3) p = 3;
  while (!is_prime(p)) p += 2;
  return p;
}

Scalings pick_scalings(const TorusTriple& t, u64 p) {
  require_valid_prime(p, t.rank());
  const u64 g = primitive_root(p);
  const ModRing field = prime_field(p);
  auto representative = [&](int m, int index) {
    const u64 cosets = (p - 1) / std::gcd<u64, u64>(2 * static_cast<u64>(m), p - 1);
    if (static_cast<u64>(index) >= cosets)
      throw InvalidArgument("not enough cosets for " + std::to_string(index + 1) + " parts of size " +
                            std::to_string(m) + " at p = " + std::to_string(p));
    return FpElement{field.pow(g, static_cast<u64>(index)), p};
  };

  Scalings out;
  std::map<int, int> seen0;
  for (int m : t.mu0.parts()) out.mu0.push_back(representative(m, seen0[m]++));
  std::map<int, int> seen_field;
  for (int m : t.mu_prime.parts()) out.mu_prime.push_back(representative(m, seen_field[m]++));
  for (int m : t.mu_double_prime.parts()) out.mu_double_prime.push_back(representative(m, seen_field[m]++));
  return out;
}

namespace {

struct Vec2 {
  UnramifiedElement u;
  UnramifiedElement v;
};

Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.u + b.u, a.v + b.v}; }
Vec2 scale(const Vec2& a, u64 s) { return {a.u.scaled(s), a.v.scaled(s)}; }

// (1/m) Tr((u1 v2 - v1 u2) r); the common factor of c = p y is applied by the caller.
u64 pairing(const Vec2& a, const Vec2& b, const UnramifiedElement& r, u64 inv_m) {
  const UnramifiedElement w = (a.u * b.v - a.v * b.u) * r;
  return a.u.ring().mul(inv_m, trace_to_base(w));
}

PadicMatrix sub_block(const PadicMatrix& big, std::size_t r0, std::size_t c0, std::size_t m) {
  PadicMatrix out(big.prime(), big.precision(), m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out.set(i, j, big(r0 + i, c0 + j));
  return out;
}

bool is_standard_gram(const ModMatrix& g) {
  const std::size_t d = g.rows();
  const ModRing& ring = g.ring();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      u64 want = 0;
      if (i + j == d - 1) want = i < d / 2 ? 1 : ring.neg(1);
      if (g(i, j) != want) return false;
    }
  return true;
}

// Shared core: symplectic basis from Lagrangian halves P, Q, local matrices,
// and raw-basis coordinates. Returns integer data mod p^(N+1).
struct CoreResult {
  ModMatrix x;
  ModMatrix gram;
  ModMatrix raw_basis;  // columns: raw coordinates of e_k
};

CoreResult symplectic_core(int m, u64 d, const std::vector<Vec2>& ps, const std::vector<Vec2>& qs,
                           const UnramifiedElement& r, const std::string& label) {
  const ModRing& ring = r.ring();
  const auto mm = static_cast<std::size_t>(m);
  const u64 inv_m = ring.inv(static_cast<u64>(m));

  for (std::size_t i = 0; i < mm; ++i)
    for (std::size_t j = 0; j < mm; ++j) {
      if (pairing(ps[i], ps[j], r, inv_m) != 0)
        throw ConstructionError(label + ": the + half is not Lagrangian");
      if (pairing(qs[i], qs[j], r, inv_m) != 0)
        throw ConstructionError(label + ": the - half is not Lagrangian");
    }

  ModMatrix h(ring, mm, mm);
  for (std::size_t i = 0; i < mm; ++i)
    for (std::size_t j = 0; j < mm; ++j) h(i, j) = pairing(ps[i], qs[j], r, inv_m);
  ModMatrix c;
  try {
    c = inverse(h).transpose();
  } catch (const SingularMatrix&) {
    throw ConstructionError(label + ": cross Gram block is singular mod p");
  }

  // e_k = P_k (k < m), e_{m+l} = gamma_{m-1-l}, gamma_j = sum_s c_js Q_s
  std::vector<Vec2> e(ps);
  for (std::size_t l = 0; l < mm; ++l) {
    const std::size_t j = mm - 1 - l;
    Vec2 gamma{UnramifiedElement::constant(0, r.modulus()), UnramifiedElement::constant(0, r.modulus())};
    for (std::size_t s = 0; s < mm; ++s) gamma = gamma + scale(qs[s], c(j, s));
    e.push_back(gamma);
  }

  const std::size_t dim = 2 * mm;
  CoreResult out{ModMatrix(ring, dim, dim), ModMatrix(ring, dim, dim), ModMatrix(ring, dim, dim)};
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) out.gram(i, j) = pairing(e[i], e[j], r, inv_m);
  if (!is_standard_gram(out.gram)) throw ConstructionError(label + ": local Gram is not standard");

  // X (u, v) = (d r v, d u); coordinates recovered through the pairing
  for (std::size_t j = 0; j < dim; ++j) {
    const Vec2 xe{(e[j].v * r).scaled(d), e[j].u.scaled(d)};
    for (std::size_t k = 0; k < dim; ++k) {
      const u64 val = pairing(e[dim - 1 - k], xe, r, inv_m);
      out.x(k, j) = k >= mm ? val : ring.neg(val);
    }
  }

  // raw coordinates: u + v y = sum u_k r^k + sum v_k r^k y
  ModMatrix powers(ring, mm, mm);
  UnramifiedElement rk = UnramifiedElement::constant(1, r.modulus());
  for (std::size_t k = 0; k < mm; ++k) {
    powers.set_column(k, rk.coords());
    rk = rk * r;
  }
  for (std::size_t j = 0; j < dim; ++j) {
    std::vector<u64> uc, vc;
    try {
      uc = solve_linear(powers, e[j].u.coords());
      vc = solve_linear(powers, e[j].v.coords());
    } catch (const SingularMatrix&) {
      throw ConstructionError(label + ": powers of r do not span the extension");
    }
    for (std::size_t k = 0; k < mm; ++k) {
      out.raw_basis(2 * k, j) = uc[k];
      out.raw_basis(2 * k + 1, j) = vc[k];
    }
  }
  return out;
}

void check_kind_args(int m, const FpElement& d, u64 p, int precision) {
  require_odd_prime(p);
  if (m < 1) throw InvalidArgument("part must be positive");
  if (precision < 1) throw InvalidArgument("precision must be at least 1");
  if (static_cast<u64>(2 * m) >= p) throw InvalidArgument("part too large for p (need p > 2m)");
  if (d.p != p || d.residue % p == 0) throw InvalidArgument("scaling must be a unit of F_p");
  checked_pow(p, precision + 1);
}

void fill_blocks(BlockDatum& b) {
  const auto mm = static_cast<std::size_t>(b.part);
  b.m11 = sub_block(b.local_x, 0, 0, mm);
  b.m12 = sub_block(b.local_x, 0, mm, mm);
  b.m21 = sub_block(b.local_x, mm, 0, mm);
  b.m22 = sub_block(b.local_x, mm, mm, mm);
}

// Field case shared by mu' and mu''; mu'' conjugates by diag(1, .., 1, 1/p, .., 1/p).
BlockDatum build_field_block(BlockKind kind, int m, FpElement d, u64 p, int precision, u64 seed) {
  check_kind_args(m, d, p, precision);
  const ModRing ring(p, precision + 1);
  const std::string label = to_string(kind) + " block of size " + std::to_string(m);

  BlockDatum b;
  b.kind = kind;
  b.part = m;
  b.scaling = d;
  b.p = p;
  b.precision = precision;
  b.seed = seed;
  b.generator = find_delta(p, m, seed);
  b.generator_minpoly = minimal_polynomial(b.generator);
  b.lifted_modulus = lift_modulus(b.generator_minpoly, precision + 1);
  b.form_square = ExtensionElement(FqPolynomial::monomial(prime_field(p), 1), b.generator_minpoly);
  b.form_valuation = kind == BlockKind::MuDoublePrime ? 1 : 0;

  const UnramifiedElement delta = UnramifiedElement::generator(b.lifted_modulus);
  const UnramifiedElement zero = UnramifiedElement::constant(0, b.lifted_modulus);
  std::vector<Vec2> ps, qs;
  UnramifiedElement dj = UnramifiedElement::constant(1, b.lifted_modulus);
  for (int j = 0; j < m; ++j) {
    ps.push_back({dj, zero});
    qs.push_back({zero, dj});
    dj = dj * delta;
  }
  const CoreResult core = symplectic_core(m, d.residue, ps, qs, delta, label);

  const auto dim = static_cast<std::size_t>(2 * m);
  const auto mm = static_cast<std::size_t>(m);
  b.local_x = PadicMatrix(p, precision, dim);
  b.local_gram = PadicMatrix::from_integers(core.gram, precision);
  b.basis_change = PadicMatrix(p, precision, dim);
  const bool dp = kind == BlockKind::MuDoublePrime;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      const bool top = i < mm, left = j < mm;
      ScaledPadic xv = ScaledPadic::from_integer(core.x(i, j), p, precision);
      if (dp && top && !left) xv = ScaledPadic::from_numerator(core.x(i, j), p, precision);
      if (dp && !top && left) xv = xv.times_p();
      b.local_x.set(i, j, xv);
      ScaledPadic bc = ScaledPadic::from_integer(core.raw_basis(i, j), p, precision);
      if (dp && !left) bc = ScaledPadic::from_numerator(core.raw_basis(i, j), p, precision);
      b.basis_change.set(i, j, bc);
    }
  fill_blocks(b);

  // X^2 acts on W_i as d^2 delta, so the residue factor is minpoly(d^2 delta-bar)(x^2)
  const ModRing field = prime_field(p);
  const ExtensionElement d2delta = ExtensionElement::constant(field.mul(d.residue, d.residue), b.generator.modulus()) * b.generator;
  b.residue_factor = minimal_polynomial(d2delta).compose_square();
  if (b.residue_factor.degree() != 2 * m || !is_irreducible(b.residue_factor))
    throw ConstructionError(label + ": residue factor is not irreducible of degree 2m");
  return b;
}

}  // namespace

BlockDatum build_mu0_block(int m, FpElement d, u64 p, int precision, u64 seed) {
  check_kind_args(m, d, p, precision);
  const ModRing ring(p, precision + 1);
  const std::string label = "mu0 block of size " + std::to_string(m);

  BlockDatum b;
  b.kind = BlockKind::Mu0;
  b.part = m;
  b.scaling = d;
  b.p = p;
  b.precision = precision;
  b.seed = seed;
  b.generator = find_eta(p, m, seed);
  b.generator_minpoly = minimal_polynomial(b.generator);
  b.lifted_modulus = lift_modulus(b.generator_minpoly, precision + 1);
  b.form_square = ExtensionElement(FqPolynomial::monomial(prime_field(p), 2), b.generator_minpoly);
  b.form_valuation = 0;

  const UnramifiedElement eta = UnramifiedElement::generator(b.lifted_modulus);
  const UnramifiedElement r = eta * eta;
  const auto mm = static_cast<std::size_t>(m);

  // sqrt(A): multiplication by eta in the basis {eta^(2k)}
  ModMatrix even_powers(ring, mm, mm), odd_powers(ring, mm, mm);
  std::vector<Vec2> ps, qs;
  UnramifiedElement e2k = UnramifiedElement::constant(1, b.lifted_modulus);
  for (std::size_t k = 0; k < mm; ++k) {
    const UnramifiedElement odd = e2k * eta;
    even_powers.set_column(k, e2k.coords());
    odd_powers.set_column(k, odd.coords());
    ps.push_back({odd, e2k});
    qs.push_back({-odd, e2k});
    e2k = e2k * r;
  }
  try {
    b.sqrt_a = solve_linear(even_powers, odd_powers);
  } catch (const SingularMatrix&) {
    throw ConstructionError(label + ": eta^2 does not generate the residue field");
  }

  const CoreResult core = symplectic_core(m, d.residue, ps, qs, r, label);
  b.local_x = PadicMatrix::from_integers(core.x, precision);
  b.local_gram = PadicMatrix::from_integers(core.gram, precision);
  b.basis_change = PadicMatrix::from_integers(core.raw_basis, precision);
  fill_blocks(b);

  // cross-check against d sqrt(A) and its symplectic mirror J(-d sqrt(A))^T J
  const ModMatrix dsa = b.sqrt_a->scaled(d.residue);
  const PadicMatrix want11 = PadicMatrix::from_integers(dsa, precision);
  ModMatrix mirror(ring, mm, mm);
  for (std::size_t i = 0; i < mm; ++i)
    for (std::size_t j = 0; j < mm; ++j) mirror(i, j) = ring.neg(dsa(mm - 1 - j, mm - 1 - i));
  const PadicMatrix want22 = PadicMatrix::from_integers(mirror, precision);
  const PadicMatrix zero(p, precision, mm);
  if (!(b.m11 == want11) || !(b.m22 == want22) || !(b.m12 == zero) || !(b.m21 == zero))
    throw ConstructionError(label + ": block shape differs from diag(d sqrt(A), mirror)");

  const FqPolynomial g = b.generator_minpoly.scale_roots(d.residue);
  b.residue_factor = g * negation_partner(g);
  return b;
}

BlockDatum build_muprime_block(int m, FpElement d, u64 p, int precision, u64 seed) {
  return build_field_block(BlockKind::MuPrime, m, d, p, precision, seed);
}

BlockDatum build_mudoubleprime_block(int m, FpElement d, u64 p, int precision, u64 seed) {
  return build_field_block(BlockKind::MuDoublePrime, m, d, p, precision, seed);
}

BlockDatum build_block(BlockKind kind, int m, FpElement d, u64 p, int precision, u64 seed) {
  switch (kind) {
    case BlockKind::Mu0: return build_mu0_block(m, d, p, precision, seed);
    case BlockKind::MuPrime: return build_muprime_block(m, d, p, precision, seed);
    case BlockKind::MuDoublePrime: return build_mudoubleprime_block(m, d, p, precision, seed);
  }
  throw InvalidArgument("unknown block kind");
}

AssembledElement assemble(const TorusTriple& t, u64 p, int precision, u64 seed,
                          const std::optional<Scalings>& override_scalings) {
  const int n = t.rank();
  require_valid_prime(p, n);
  if (precision < 1) throw InvalidArgument("precision must be at least 1");
  checked_pow(p, precision + 1);
  const Scalings sc = override_scalings ? *override_scalings : pick_scalings(t, p);
  if (sc.mu0.size() != t.mu0.length() || sc.mu_prime.size() != t.mu_prime.length() ||
      sc.mu_double_prime.size() != t.mu_double_prime.length())
    throw InvalidArgument("scalings do not match the triple");

  AssembledElement a;
  a.triple = t;
  a.p = p;
  a.precision = precision;
  a.seed = seed;
  for (std::size_t i = 0; i < t.mu_double_prime.length(); ++i)
    a.blocks.push_back(build_mudoubleprime_block(t.mu_double_prime.parts()[i], sc.mu_double_prime[i], p, precision, seed));
  for (std::size_t i = 0; i < t.mu0.length(); ++i)
    a.blocks.push_back(build_mu0_block(t.mu0.parts()[i], sc.mu0[i], p, precision, seed));
  for (std::size_t i = 0; i < t.mu_prime.length(); ++i)
    a.blocks.push_back(build_muprime_block(t.mu_prime.parts()[i], sc.mu_prime[i], p, precision, seed));

  const auto dim = static_cast<std::size_t>(2 * n);
  a.x = PadicMatrix(p, precision, dim);
  a.gram = PadicMatrix(p, precision, dim);
  int offset = 0;
  for (const BlockDatum& b : a.blocks) {
    const int m = b.part;
    const BlockLayout lay{b.kind, m, offset, 2 * n - offset - m};
    a.layout.push_back(lay);
    // local index k < m sits at plus_begin + k, k >= m at minus_begin + (k - m)
    auto global = [&](int k) { return static_cast<std::size_t>(k < m ? lay.plus_begin + k : lay.minus_begin + k - m); };
    for (int i = 0; i < 2 * m; ++i)
      for (int j = 0; j < 2 * m; ++j) {
        a.x.set(global(i), global(j), b.local_x(i, j));
        a.gram.set(global(i), global(j), b.local_gram(i, j));
      }
    offset += m;
  }
  return a;
}

TorusTriple classify_blocks(const AssembledElement& a) {
  std::vector<int> mu0, mu_prime, mu_double_prime;
  for (const BlockDatum& b : a.blocks) {
    const ExtensionElement& r = b.form_square;
    const u64 half = (r.field_size() - 1) / 2;
    const bool split = r.pow(half).is_one();
    if (split) mu0.push_back(b.part);
    else if (b.form_valuation % 2 == 0) mu_prime.push_back(b.part);
    else mu_double_prime.push_back(b.part);
  }
  return {Partition::from_unsorted(mu0), Partition::from_unsorted(mu_prime),
          Partition::from_unsorted(mu_double_prime)};
}

}  // namespace sptori
