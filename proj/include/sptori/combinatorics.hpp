#pragma once

// Partition triples, facet labels of the fundamental alcove of Sp_2n, Carter
// types of elliptic Weyl classes, and the bijection between the two
// parameterizations of maximal unramified tori.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace sptori {

/// Integer partition with parts stored in weakly decreasing order.
class Partition {
 public:
  Partition() = default;
  /// Throws InvalidArgument unless `parts` is weakly decreasing and positive.
  explicit Partition(std::vector<int> parts);
  /// Sorts `parts` descending first; still rejects non-positive parts.
  static Partition from_unsorted(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int sum() const { return sum_; }
  std::size_t length() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }

  /// "∅" for the empty partition, "(2,1,1)" otherwise.
  std::string to_string() const;

  bool operator==(const Partition& other) const { return parts_ == other.parts_; }
  auto operator<=>(const Partition& other) const { return parts_ <=> other.parts_; }

 private:
  std::vector<int> parts_;
  int sum_ = 0;
};

/// (mu0, mu', mu''): split quadratic algebras, then fields whose form
/// parameter has even resp. odd valuation.
struct TorusTriple {
  Partition mu0;
  Partition mu_prime;
  Partition mu_double_prime;

  int rank() const { return mu0.sum() + mu_prime.sum() + mu_double_prime.sum(); }
  std::string to_string() const;

  bool operator==(const TorusTriple&) const = default;
  auto operator<=>(const TorusTriple&) const = default;
};

/// Facet <a | x_1,...,x_t | b> of the fundamental alcove. The order of the
/// x_i is significant here; the bijection only ever emits descending order.
struct FacetLabel {
  int a = 0;
  std::vector<int> xs;
  int b = 0;

  int rank() const;
  /// Throws InvalidArgument on negative a/b or non-positive x_i.
  void validate() const;
  std::string to_string() const;

  bool operator==(const FacetLabel&) const = default;
};

enum class CycleParity { Even, Odd };

struct Cycle {
  int length = 0;
  CycleParity parity = CycleParity::Even;

  /// "C_k" for an odd k-cycle, "A_{k-1}" for an even one.
  std::string to_string() const;
  bool operator==(const Cycle&) const = default;
};

/// Multiset of signed cycles, kept sorted (odd before even, longer first).
class CarterType {
 public:
  CarterType() = default;
  explicit CarterType(std::vector<Cycle> cycles);

  const std::vector<Cycle>& cycles() const { return cycles_; }
  int rank() const;
  /// Factors joined by " × " with A_0 factors dropped; "1" when nothing is left.
  std::string to_string() const;

  bool operator==(const CarterType&) const = default;

 private:
  std::vector<Cycle> cycles_;
};

/// A facet together with an elliptic class of its Weyl group. Odd cycles are
/// recorded per side of the alcove: e-side (the C_a factor at H_e) and b-side
/// (the C_b factor at H_beta). Even cycles are stored descending.
struct WeylPair {
  FacetLabel facet;
  Partition e_side_odd;
  Partition b_side_odd;
  std::vector<int> even_cycles;

  /// Throws MalformedInput when the cycle data does not fit the facet.
  void validate() const;
  CarterType carter_type() const;
  /// Ordering: e-side C's, then A_{x-1} in facet order, then b-side C's.
  std::string type_string() const;
  std::string to_string() const;

  bool operator==(const WeylPair&) const = default;
};

/// Root-system factor of a reductive quotient, e.g. C_2 or A_1.
struct RootSystemFactor {
  char family = 'A';
  int rank = 0;

  std::string to_string() const;
  bool operator==(const RootSystemFactor&) const = default;
};

/// All partitions of k, lexicographically descending.
std::vector<Partition> enumerate_partitions(int k);

/// Every triple with total rank n, lexicographically descending.
std::vector<TorusTriple> enumerate_triples(int n);

/// Facets with descending xs, ordered by (a, xs, b) descending.
std::vector<FacetLabel> enumerate_canonical_facets(int n);

WeylPair triple_to_pair(const TorusTriple& t);
TorusTriple pair_to_triple(const WeylPair& p);
WeylPair canonicalize_pair(WeylPair p);

/// C_a × A_{x_1-1} × ... × C_b with zero-rank factors dropped.
std::vector<RootSystemFactor> reductive_quotient_type(const FacetLabel& f);
std::string to_string(const std::vector<RootSystemFactor>& factors);

/// One pair per (partition of a) × (partition of b).
std::vector<WeylPair> elliptic_classes(const FacetLabel& f);

/// Number of rational classes in the stable class: 2^(len mu' + len mu'').
std::uint64_t stable_class_size(const TorusTriple& t);

/// Parses "mu0;mu';mu''" where each field is a comma list, empty or "∅".
TorusTriple parse_triple(const std::string& text);

}  // namespace sptori
