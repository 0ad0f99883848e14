#include "sptori/combinatorics.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "sptori/errors.hpp"

namespace sptori {

namespace {

const char* const kEmptySet = "∅";

std::string join_ints(const std::vector<int>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  return os.str();
}

std::vector<int> sorted_desc(std::vector<int> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

void partitions_rec(int remaining, int max_part, std::vector<int>& cur,
                    std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions_rec(remaining - part, part, cur, out);
    cur.pop_back();
  }
}

}  // namespace

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw InvalidArgument("partition parts must be positive");
    if (i && parts_[i] > parts_[i - 1])
      throw InvalidArgument("partition parts must be weakly decreasing");
  }
  sum_ = std::accumulate(parts_.begin(), parts_.end(), 0);
}

Partition Partition::from_unsorted(std::vector<int> parts) {
  return Partition(sorted_desc(std::move(parts)));
}

std::string Partition::to_string() const {
  if (parts_.empty()) return kEmptySet;
  return "(" + join_ints(parts_) + ")";
}

std::string TorusTriple::to_string() const {
  return "(" + mu0.to_string() + "," + mu_prime.to_string() + "," +
         mu_double_prime.to_string() + ")";
}

int FacetLabel::rank() const {
  return a + b + std::accumulate(xs.begin(), xs.end(), 0);
}

void FacetLabel::validate() const {
  if (a < 0 || b < 0) throw InvalidArgument("facet: a and b must be nonnegative");
  for (int x : xs)
    if (x <= 0) throw InvalidArgument("facet: x_i must be positive");
}

std::string FacetLabel::to_string() const {
  std::ostringstream os;
  os << "⟨" << a << '|' << (xs.empty() ? std::string(" ") : join_ints(xs)) << '|' << b << "⟩";
  return os.str();
}

std::string Cycle::to_string() const {
  if (parity == CycleParity::Odd) return "C_" + std::to_string(length);
  return "A_" + std::to_string(length - 1);
}

CarterType::CarterType(std::vector<Cycle> cycles) : cycles_(std::move(cycles)) {
  for (const auto& c : cycles_)
    if (c.length < 1) throw InvalidArgument("cycle lengths must be positive");
  std::sort(cycles_.begin(), cycles_.end(), [](const Cycle& l, const Cycle& r) {
    if (l.parity != r.parity) return l.parity == CycleParity::Odd;
    return l.length > r.length;
  });
}

int CarterType::rank() const {
  int r = 0;
  for (const auto& c : cycles_) r += c.length;
  return r;
}

namespace {

std::string join_factors(const std::vector<std::string>& factors) {
  if (factors.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += " × ";
    out += factors[i];
  }
  return out;
}

}  // namespace

std::string CarterType::to_string() const {
  std::vector<std::string> factors;
  for (const auto& c : cycles_)
    if (!(c.parity == CycleParity::Even && c.length == 1)) factors.push_back(c.to_string());
  return join_factors(factors);
}

void WeylPair::validate() const {
  facet.validate();
  if (e_side_odd.sum() != facet.a)
    throw MalformedInput("e-side odd cycles sum to " + std::to_string(e_side_odd.sum()) +
                         " but facet has a = " + std::to_string(facet.a));
  if (b_side_odd.sum() != facet.b)
    throw MalformedInput("b-side odd cycles sum to " + std::to_string(b_side_odd.sum()) +
                         " but facet has b = " + std::to_string(facet.b));
  if (sorted_desc(even_cycles) != sorted_desc(facet.xs))
    throw MalformedInput("even cycles do not match the facet's x_i");
}

CarterType WeylPair::carter_type() const {
  std::vector<Cycle> cycles;
  for (int k : e_side_odd.parts()) cycles.push_back({k, CycleParity::Odd});
  for (int k : even_cycles) cycles.push_back({k, CycleParity::Even});
  for (int k : b_side_odd.parts()) cycles.push_back({k, CycleParity::Odd});
  return CarterType(std::move(cycles));
}

std::string WeylPair::type_string() const {
  std::vector<std::string> factors;
  for (int k : e_side_odd.parts()) factors.push_back("C_" + std::to_string(k));
  for (int x : facet.xs)
    if (x > 1) factors.push_back("A_" + std::to_string(x - 1));
  for (int k : b_side_odd.parts()) factors.push_back("C_" + std::to_string(k));
  return join_factors(factors);
}

std::string WeylPair::to_string() const { return facet.to_string() + " " + type_string(); }

std::string RootSystemFactor::to_string() const {
  return std::string(1, family) + "_" + std::to_string(rank);
}

std::string to_string(const std::vector<RootSystemFactor>& factors) {
  std::vector<std::string> parts;
  for (const auto& f : factors) parts.push_back(f.to_string());
  return join_factors(parts);
}

std::vector<Partition> enumerate_partitions(int k) {
  if (k < 0) throw InvalidArgument("cannot partition a negative integer");
  std::vector<Partition> out;
  std::vector<int> cur;
  partitions_rec(k, k, cur, out);
  return out;
}

std::vector<TorusTriple> enumerate_triples(int n) {
  if (n < 0) throw InvalidArgument("rank must be nonnegative");
  std::vector<std::vector<Partition>> by_size;
  for (int k = 0; k <= n; ++k) by_size.push_back(enumerate_partitions(k));
  std::vector<TorusTriple> out;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j)
      for (const auto& a : by_size[i])
        for (const auto& b : by_size[j])
          for (const auto& c : by_size[n - i - j]) out.push_back({a, b, c});
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<FacetLabel> enumerate_canonical_facets(int n) {
  if (n < 0) throw InvalidArgument("rank must be nonnegative");
  std::vector<FacetLabel> out;
  for (int a = n; a >= 0; --a)
    for (int b = n - a; b >= 0; --b)
      for (const auto& xs : enumerate_partitions(n - a - b))
        out.push_back({a, xs.parts(), b});
  return out;
}

WeylPair triple_to_pair(const TorusTriple& t) {
  WeylPair p;
  p.facet = {t.mu_double_prime.sum(), t.mu0.parts(), t.mu_prime.sum()};
  p.e_side_odd = t.mu_double_prime;
  p.b_side_odd = t.mu_prime;
  p.even_cycles = t.mu0.parts();
  return p;
}

TorusTriple pair_to_triple(const WeylPair& p) {
  p.validate();
  return {Partition::from_unsorted(p.facet.xs), p.b_side_odd, p.e_side_odd};
}

WeylPair canonicalize_pair(WeylPair p) {
  p.facet.xs = sorted_desc(std::move(p.facet.xs));
  p.even_cycles = sorted_desc(std::move(p.even_cycles));
  return p;
}

std::vector<RootSystemFactor> reductive_quotient_type(const FacetLabel& f) {
  f.validate();
  std::vector<RootSystemFactor> out;
  if (f.a > 0) out.push_back({'C', f.a});
  for (int x : f.xs)
    if (x > 1) out.push_back({'A', x - 1});
  if (f.b > 0) out.push_back({'C', f.b});
  return out;
}

std::vector<WeylPair> elliptic_classes(const FacetLabel& f) {
  f.validate();
  std::vector<WeylPair> out;
  for (const auto& e : enumerate_partitions(f.a))
    for (const auto& b : enumerate_partitions(f.b))
      out.push_back({f, e, b, sorted_desc(f.xs)});
  return out;
}

std::uint64_t stable_class_size(const TorusTriple& t) {
  return std::uint64_t{1} << (t.mu_prime.length() + t.mu_double_prime.length());
}

namespace {

Partition parse_partition(std::string field) {
  auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) return std::string();
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
  };
  field = trim(field);
  if (field.size() >= 2 && field.front() == '(' && field.back() == ')')
    field = trim(field.substr(1, field.size() - 2));
  if (field.empty() || field == kEmptySet || field == "0" || field == "-") return {};
  std::vector<int> parts;
  std::stringstream ss(field);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("bad partition part '" + item + "'");
    }
    if (used != item.size()) throw InvalidArgument("bad partition part '" + item + "'");
    parts.push_back(v);
  }
  return Partition::from_unsorted(std::move(parts));
}

}  // namespace

TorusTriple parse_triple(const std::string& text) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : text) {
    if (ch == ';') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(cur);
  if (fields.size() != 3)
    throw InvalidArgument("triple must have three ';'-separated fields: '" + text + "'");
  return {parse_partition(fields[0]), parse_partition(fields[1]), parse_partition(fields[2])};
}

}  // namespace sptori
