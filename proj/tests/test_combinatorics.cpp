#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "sptori/combinatorics.hpp"
#include "sptori/errors.hpp"

using namespace sptori;

namespace {

// Partition counts from the weakly-decreasing-sequence recursion, no lists.
long count_partitions(int k, int max_part) {
  if (k == 0) return 1;
  long total = 0;
  for (int first = std::min(k, max_part); first >= 1; --first) total += count_partitions(k - first, first);
  return total;
}

long count_triples(int n) {
  long total = 0;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j) total += count_partitions(i, i) * count_partitions(j, j) * count_partitions(n - i - j, n - i - j);
  return total;
}

Partition random_partition(std::mt19937_64& rng, int k) {
  std::vector<int> parts;
  while (k > 0) {
    const int x = 1 + static_cast<int>(rng() % static_cast<unsigned>(k));
    parts.push_back(x);
    k -= x;
  }
  return Partition::from_unsorted(parts);
}

TorusTriple random_triple(std::mt19937_64& rng, int n) {
  const int i = static_cast<int>(rng() % static_cast<unsigned>(n + 1));
  const int j = static_cast<int>(rng() % static_cast<unsigned>(n - i + 1));
  return {random_partition(rng, i), random_partition(rng, j), random_partition(rng, n - i - j)};
}

TorusTriple tr(const std::string& s) { return parse_triple(s); }

}  // namespace

TEST(Partition, RejectsNonCanonicalParts) {
  EXPECT_THROW(Partition({1, 2}), InvalidArgument);
  EXPECT_THROW(Partition({2, 0}), InvalidArgument);
  EXPECT_THROW(Partition::from_unsorted({3, -1}), InvalidArgument);
  EXPECT_EQ(Partition::from_unsorted({1, 3, 2}).parts(), (std::vector<int>{3, 2, 1}));
  EXPECT_EQ(Partition({3, 1, 1}).sum(), 5);
}

TEST(Partition, Rendering) {
  EXPECT_EQ(Partition().to_string(), "∅");
  EXPECT_EQ(Partition({2, 1}).to_string(), "(2,1)");
  EXPECT_EQ(tr(";2;").to_string(), "(∅,(2),∅)");
}

TEST(EnumeratePartitions, SmallCases) {
  ASSERT_EQ(enumerate_partitions(0).size(), 1u);
  EXPECT_TRUE(enumerate_partitions(0)[0].empty());
  ASSERT_EQ(enumerate_partitions(1).size(), 1u);
  EXPECT_EQ(enumerate_partitions(1)[0].parts(), std::vector<int>{1});
  EXPECT_EQ(enumerate_partitions(5).size(), 7u);
}

TEST(EnumeratePartitions, MatchesRecursiveCountAndIsDescending) {
  for (int k = 0; k <= 20; ++k) {
    const auto ps = enumerate_partitions(k);
    EXPECT_EQ(static_cast<long>(ps.size()), count_partitions(k, k)) << k;
    std::set<std::vector<int>> seen;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      EXPECT_EQ(ps[i].sum(), k);
      EXPECT_TRUE(seen.insert(ps[i].parts()).second);
      if (i > 0) {
        EXPECT_TRUE(ps[i - 1].parts() > ps[i].parts());
      }
    }
  }
}

TEST(EnumerateTriples, Counts) {
  EXPECT_EQ(enumerate_triples(0).size(), 1u);
  EXPECT_EQ(enumerate_triples(2).size(), 9u);
  EXPECT_EQ(enumerate_triples(3).size(), 22u);
  for (int n = 0; n <= 10; ++n) EXPECT_EQ(static_cast<long>(enumerate_triples(n).size()), count_triples(n)) << n;
}

TEST(EnumerateTriples, OrderForRankTwo) {
  std::vector<std::string> got;
  for (const auto& t : enumerate_triples(2)) got.push_back(t.to_string());
  const std::vector<std::string> want{"((2),∅,∅)", "((1,1),∅,∅)", "((1),(1),∅)", "((1),∅,(1))", "(∅,(2),∅)",
                                      "(∅,(1,1),∅)", "(∅,(1),(1))", "(∅,∅,(2))", "(∅,∅,(1,1))"};
  EXPECT_EQ(got, want);
}

TEST(TripleToPair, SpFourExamples) {
  WeylPair w = triple_to_pair(tr(";2;"));
  EXPECT_EQ(w.facet.to_string(), "⟨0| |2⟩");
  EXPECT_EQ(w.b_side_odd.parts(), std::vector<int>{2});
  EXPECT_EQ(w.type_string(), "C_2");

  w = triple_to_pair(tr("2;;"));
  EXPECT_EQ(w.facet.to_string(), "⟨0|2|0⟩");
  EXPECT_EQ(w.even_cycles, std::vector<int>{2});
  EXPECT_EQ(w.type_string(), "A_1");

  w = triple_to_pair(tr("1;;1"));
  EXPECT_EQ(w.facet.to_string(), "⟨1|1|0⟩");
  EXPECT_EQ(w.e_side_odd.parts(), std::vector<int>{1});
  EXPECT_EQ(w.type_string(), "C_1");
}

TEST(PairToTriple, Examples) {
  WeylPair w{{0, {}, 2}, Partition(), Partition({2}), {}};
  EXPECT_EQ(pair_to_triple(w), tr(";2;"));

  w = {{0, {1, 1}, 0}, Partition(), Partition(), {1, 1}};
  EXPECT_EQ(pair_to_triple(w), tr("1,1;;"));
  EXPECT_EQ(w.type_string(), "1");

  w = {{2, {2, 1, 3}, 1}, Partition({1, 1}), Partition({1}), {2, 1, 3}};
  EXPECT_EQ(pair_to_triple(w), tr("3,2,1;1;1,1"));
  EXPECT_EQ(triple_to_pair(pair_to_triple(w)), canonicalize_pair(w));
}

TEST(PairToTriple, RejectsMalformedPairs) {
  WeylPair w{{1, {}, 1}, Partition({2}), Partition(), {}};
  EXPECT_THROW(pair_to_triple(w), MalformedInput);
  w = {{0, {2}, 0}, Partition(), Partition(), {1, 1}};
  EXPECT_THROW(pair_to_triple(w), MalformedInput);
  w = {{0, {}, 2}, Partition(), Partition({1}), {}};
  EXPECT_THROW(pair_to_triple(w), MalformedInput);
}

TEST(CanonicalizePair, SortsAndIsIdempotent) {
  WeylPair w{{1, {1, 3}, 0}, Partition({1}), Partition(), {1, 3}};
  const WeylPair c = canonicalize_pair(w);
  EXPECT_EQ(c.facet.to_string(), "⟨1|3,1|0⟩");
  EXPECT_EQ(canonicalize_pair(c), c);
  EXPECT_EQ(pair_to_triple(c), pair_to_triple(w));

  w = {{0, {1, 2, 1}, 0}, Partition(), Partition(), {1, 2, 1}};
  EXPECT_EQ(canonicalize_pair(w).facet.to_string(), "⟨0|2,1,1|0⟩");
}

TEST(ReductiveQuotient, Types) {
  EXPECT_EQ(to_string(reductive_quotient_type({2, {2, 1, 3}, 1})), "C_2 × A_1 × A_2 × C_1");
  EXPECT_EQ(to_string(reductive_quotient_type({0, {}, 5})), "C_5");
  EXPECT_TRUE(reductive_quotient_type({0, {1, 1}, 0}).empty());
}

TEST(EllipticClasses, KnownFacets) {
  std::vector<std::string> got;
  for (const auto& w : elliptic_classes({2, {2, 1, 3}, 1})) got.push_back(w.type_string());
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, (std::vector<std::string>{"C_1 × C_1 × A_1 × A_2 × C_1", "C_2 × A_1 × A_2 × C_1"}));

  got.clear();
  for (const auto& w : elliptic_classes({0, {}, 2})) got.push_back(w.type_string());
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, (std::vector<std::string>{"C_1 × C_1", "C_2"}));

  const auto interior = elliptic_classes({0, {1, 1}, 0});
  ASSERT_EQ(interior.size(), 1u);
  EXPECT_EQ(interior[0].type_string(), "1");
}

TEST(CanonicalFacets, SpFourHasSevenFacets) {
  std::set<std::string> got;
  for (const auto& f : enumerate_canonical_facets(2)) got.insert(f.to_string());
  EXPECT_EQ(got, (std::set<std::string>{"⟨0| |2⟩", "⟨1| |1⟩", "⟨2| |0⟩", "⟨0|1|1⟩", "⟨0|2|0⟩", "⟨1|1|0⟩",
                                        "⟨0|1,1|0⟩"}));
}

TEST(StableClassSize, Formula) {
  EXPECT_EQ(stable_class_size(tr("1,1;;")), 1u);
  EXPECT_EQ(stable_class_size(tr(";2;1")), 4u);
  EXPECT_EQ(stable_class_size(tr(";1,1;")), 4u);
}

TEST(ParseTriple, AcceptedSpellings) {
  EXPECT_EQ(parse_triple("∅;2;∅"), tr(";2;"));
  EXPECT_EQ(parse_triple("(2,1);();(1)"), tr("2,1;;1"));
  EXPECT_EQ(parse_triple("1,2;;"), tr("2,1;;"));
  EXPECT_THROW(parse_triple("1;2"), InvalidArgument);
  EXPECT_THROW(parse_triple("a;;"), InvalidArgument);
  EXPECT_THROW(parse_triple("0,1;;"), InvalidArgument);
}

TEST(Bijection, RoundTripsAndCountsUpToEight) {
  for (int n = 0; n <= 8; ++n) {
    const auto triples = enumerate_triples(n);
    for (const auto& t : triples) ASSERT_EQ(pair_to_triple(triple_to_pair(t)), t) << t.to_string();
    std::size_t pairs = 0;
    std::set<std::string> images;
    for (const auto& f : enumerate_canonical_facets(n))
      for (const auto& w : elliptic_classes(f)) {
        ++pairs;
        ASSERT_EQ(triple_to_pair(pair_to_triple(w)), w) << w.to_string();
        images.insert(w.to_string());
      }
    EXPECT_EQ(pairs, triples.size()) << n;
    EXPECT_EQ(images.size(), pairs) << n;
  }
}

TEST(Bijection, RandomTriplesSatisfyPairInvariants) {
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 500; ++iter) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const TorusTriple t = random_triple(rng, n);
    const WeylPair w = triple_to_pair(t);
    EXPECT_NO_THROW(w.validate());
    EXPECT_EQ(w.facet.rank(), n);
    EXPECT_EQ(w.carter_type().rank(), n);
    EXPECT_EQ(pair_to_triple(w), t);
  }
}

TEST(Bijection, PermutedFacetsCanonicalizeToTheSameTriple) {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 300; ++iter) {
    const TorusTriple t = random_triple(rng, 1 + static_cast<int>(rng() % 10));
    WeylPair w = triple_to_pair(t);
    std::shuffle(w.facet.xs.begin(), w.facet.xs.end(), rng);
    w.even_cycles = w.facet.xs;
    EXPECT_EQ(pair_to_triple(w), t);
    EXPECT_EQ(canonicalize_pair(w), triple_to_pair(t));
  }
}

TEST(CarterType, Rendering) {
  EXPECT_EQ(CarterType({{1, CycleParity::Even}, {1, CycleParity::Even}}).to_string(), "1");
  EXPECT_EQ(CarterType({{2, CycleParity::Even}, {3, CycleParity::Odd}}).to_string(), "C_3 × A_1");
  EXPECT_THROW(CarterType({{0, CycleParity::Odd}}), InvalidArgument);
}
