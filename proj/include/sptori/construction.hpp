#pragma once

// Explicit regular semisimple elements X_W of sp_2n(Q_p) whose centralizer
// is the maximal unramified torus attached to a partition triple.
//
// Each part m contributes a 2m-dimensional symplectic space W_i = E[y]/(y^2 - r)
// over the degree-m unramified extension E, with form
//   <v1, v2> = (1/2m) Tr_{W_i/F}(tau(v1) v2 c),  tau(y) = -y,
// and X acting by multiplication by a = d*y. The three kinds differ in r and c:
//   Mu0            r = eta^2 (split algebra), c = y
//   MuPrime        r = delta (a field),        c = y
//   MuDoublePrime  r = delta (a field),        c = p*y
// Internal arithmetic runs over Z/p^(N+1); outputs are ScaledPadic at precision N.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sptori/combinatorics.hpp"
#include "sptori/finite_field.hpp"
#include "sptori/padic.hpp"

namespace sptori {

enum class BlockKind { Mu0, MuPrime, MuDoublePrime };

std::string to_string(BlockKind kind);

struct BlockDatum {
  BlockKind kind = BlockKind::Mu0;
  int part = 0;
  FpElement scaling;
  u64 p = 0;
  int precision = 0;
  u64 seed = 0;

  /// eta-bar (Mu0) or delta-bar (MuPrime/MuDoublePrime) in its search field.
  ExtensionElement generator;
  /// Minimal polynomial of the generator over F_p and its lift.
  FqPolynomial generator_minpoly;
  ModPoly lifted_modulus;
  /// Reduction of r = y^2 as an element of F_p[t]/(generator_minpoly).
  ExtensionElement form_square;
  /// Valuation of the form parameter c (0 or 1).
  int form_valuation = 0;

  /// 2m x 2m matrices in the local basis {P_0..P_{m-1}, gamma_{m-1}..gamma_0}.
  PadicMatrix local_x;
  PadicMatrix local_gram;
  /// Column k: coordinates of local basis vector k in the raw basis {y^j}.
  PadicMatrix basis_change;
  /// Mu0 only: multiplication by eta in the basis {eta^(2k)}, mod p^(N+1).
  std::optional<ModMatrix> sqrt_a;

  /// m x m blocks of local_x.
  PadicMatrix m11, m12, m21, m22;

  /// Mod-p characteristic polynomial this block contributes (after the
  /// corner rescaling for MuDoublePrime).
  FqPolynomial residue_factor;
};

/// Scaling for every part occurrence, aligned with the partition parts.
struct Scalings {
  std::vector<FpElement> mu0;
  std::vector<FpElement> mu_prime;
  std::vector<FpElement> mu_double_prime;
};

/// Throws InvalidArgument unless p is an odd prime with p > 2n.
void require_valid_prime(u64 p, int n);

/// Representatives g^i of F_p^x / (2m-th roots of unity), g the smallest
/// primitive root. Equal parts of mu0 get g^0, g^1, ... in order; equal parts
/// across mu' then mu'' share one counter per size.
Scalings pick_scalings(const TorusTriple& t, u64 p);

BlockDatum build_mu0_block(int m, FpElement d, u64 p, int precision, u64 seed);
BlockDatum build_muprime_block(int m, FpElement d, u64 p, int precision, u64 seed);
BlockDatum build_mudoubleprime_block(int m, FpElement d, u64 p, int precision, u64 seed);
BlockDatum build_block(BlockKind kind, int m, FpElement d, u64 p, int precision, u64 seed);

struct BlockLayout {
  BlockKind kind = BlockKind::Mu0;
  int part = 0;
  /// Global indices plus_begin.. and minus_begin.., each of length part.
  int plus_begin = 0;
  int minus_begin = 0;
};

struct AssembledElement {
  PadicMatrix x;
  PadicMatrix gram;
  std::vector<BlockLayout> layout;
  std::vector<BlockDatum> blocks;
  TorusTriple triple;
  u64 p = 0;
  int precision = 0;
  u64 seed = 0;

  int n() const { return triple.rank(); }
};

/// Blocks in the order mu'' parts, mu0 parts, mu' parts. `override_scalings`
/// replaces pick_scalings (used to build deliberately degenerate elements).
AssembledElement assemble(const TorusTriple& t, u64 p, int precision, u64 seed,
                          const std::optional<Scalings>& override_scalings = std::nullopt);

/// Recomputes the triple from block data: split algebra -> mu0, otherwise
/// the parity of v(c) picks mu' (even) or mu'' (odd).
TorusTriple classify_blocks(const AssembledElement& a);

/// Smallest odd prime > 2n.
u64 default_prime(int n);

}  // namespace sptori
