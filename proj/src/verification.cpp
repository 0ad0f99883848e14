#include "sptori/verification.hpp"

#include <algorithm>
#include <sstream>

#include "sptori/errors.hpp"

namespace sptori {

std::string to_string(Requirement r) {
  switch (r) {
    case Requirement::Zero: return "ZERO";
    case Requirement::ValGe0: return "VAL_GE_0";
    case Requirement::ValGe1: return "VAL_GE_1";
    case Requirement::ValGeMinus1: return "VAL_GE_MINUS_1";
  }
  return "?";
}

namespace {

std::string at(std::size_t i, std::size_t j) {
  std::ostringstream os;
  os << "(" << i << "," << j << ")";
  return os.str();
}

}  // namespace

bool check_gram_standard(const AssembledElement& a) {
  const PadicMatrix& g = a.gram;
  const std::size_t d = g.dim();
  if (d != static_cast<std::size_t>(2 * a.n())) return false;
  const ScaledPadic one = ScaledPadic::from_integer(1, a.p, a.precision);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const ScaledPadic& v = g(i, j);
      if (i + j == d - 1) {
        if (!(v == (i < d / 2 ? one : -one))) return false;
      } else if (!v.is_zero()) {
        return false;
      }
    }
  return true;
}

std::vector<EntryCondition> entry_conditions(const FacetLabel& f) {
  f.validate();
  const int n = f.rank();
  enum Group { A, X, B };
  struct Coord {
    Group group;
    int xk;
    bool plus;
  };
  std::vector<int> x_of(static_cast<std::size_t>(n), -1);
  {
    int c = f.a;
    for (std::size_t k = 0; k < f.xs.size(); ++k)
      for (int i = 0; i < f.xs[k]; ++i) x_of[static_cast<std::size_t>(c++)] = static_cast<int>(k);
  }
  auto coord = [&](int r) {
    const bool plus = r < n;
    const int c = plus ? r : 2 * n - 1 - r;
    if (c < f.a) return Coord{A, -1, plus};
    if (c >= n - f.b) return Coord{B, -1, plus};
    return Coord{X, x_of[static_cast<std::size_t>(c)], plus};
  };
  auto sign = [](bool plus) { return plus ? '+' : '-'; };

  std::vector<EntryCondition> out;
  out.reserve(static_cast<std::size_t>(4 * n * n));
  for (int i = 0; i < 2 * n; ++i)
    for (int j = 0; j < 2 * n; ++j) {
      const Coord ci = coord(i), cj = coord(j);
      EntryCondition e{i, j, Requirement::Zero, "outside block support"};
      std::ostringstream prov;
      if (i == j) {
        e.requirement = Requirement::ValGe0;
        prov << "diagonal";
      } else if (ci.group == X && cj.group == X && ci.xk == cj.xk && ci.plus == cj.plus) {
        e.requirement = Requirement::ValGe0;
        prov << "A_" << f.xs[static_cast<std::size_t>(ci.xk)] - 1 << " band x_" << ci.xk + 1 << " ("
             << sign(ci.plus) << "," << sign(cj.plus) << ")";
      } else if (ci.group == A && cj.group == A) {
        if (ci.plus == cj.plus) e.requirement = Requirement::ValGe0;
        else e.requirement = ci.plus ? Requirement::ValGeMinus1 : Requirement::ValGe1;
        prov << "C_" << f.a << " corner (" << sign(ci.plus) << "," << sign(cj.plus) << ")";
      } else if (ci.group == B && cj.group == B) {
        e.requirement = Requirement::ValGe0;
        prov << "C_" << f.b << " block (" << sign(ci.plus) << "," << sign(cj.plus) << ")";
      }
      if (!prov.str().empty()) e.provenance = prov.str();
      out.push_back(std::move(e));
    }
  return out;
}

bool satisfies(const ScaledPadic& v, Requirement r) {
  if (v.is_zero()) return true;
  switch (r) {
    case Requirement::Zero: return false;
    case Requirement::ValGe0: return v.valuation() >= 0;
    case Requirement::ValGe1: return v.valuation() >= 1;
    case Requirement::ValGeMinus1: return v.valuation() >= -1;
  }
  return false;
}

namespace {

void require_matching_facet(const AssembledElement& a, const FacetLabel& f) {
  if (!(canonicalize_pair(triple_to_pair(a.triple)).facet == f))
    throw InvalidArgument("facet " + f.to_string() + " does not belong to triple " + a.triple.to_string());
}

}  // namespace

ParahoricResult check_parahoric(const AssembledElement& a, const FacetLabel& f) {
  require_matching_facet(a, f);
  ParahoricResult out;
  for (const EntryCondition& c : entry_conditions(f)) {
    const ScaledPadic& v = a.x(static_cast<std::size_t>(c.row), static_cast<std::size_t>(c.col));
    if (!satisfies(v, c.requirement)) {
      out.ok = false;
      out.failures.push_back({to_string(c.requirement) + " [" + c.provenance + "]", at(c.row, c.col), v.to_string()});
    }
  }
  return out;
}

ModMatrix quotient_matrix(const AssembledElement& a, const FacetLabel& f) {
  require_matching_facet(a, f);
  const ModRing field(a.p, 1);
  const std::size_t d = a.x.dim();
  const std::size_t corner = static_cast<std::size_t>(f.a);
  ModMatrix out(field, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const ScaledPadic& v = a.x(i, j);
      if (v.is_zero()) continue;
      const bool top_right = i < corner && j >= d - corner;
      const bool bottom_left = i >= d - corner && j < corner;
      try {
        if (top_right) out(i, j) = v.times_p().residue();
        else if (bottom_left) out(i, j) = v.divided_by_p().residue();
        else out(i, j) = v.residue();
      } catch (const PrecisionError&) {
        throw MalformedInput("entry " + at(i, j) + " = " + v.to_string() + " is not integral after rescaling");
      }
    }
  return out;
}

bool check_quotient_regular(const AssembledElement& a, const FacetLabel& f,
                            std::vector<VerificationFailure>* failures) {
  auto fail = [&](const std::string& cond, const std::string& loc, const std::string& found) {
    if (failures) failures->push_back({cond, loc, found});
    return false;
  };
  ModMatrix q;
  try {
    q = quotient_matrix(a, f);
  } catch (const MalformedInput& e) {
    return fail("quotient integral", "X", e.what());
  }
  const FqPolynomial cp = berkowitz_charpoly(q);
  bool ok = true;
  if (!is_squarefree(cp)) ok = fail("residue charpoly squarefree", "quotient", cp.to_string());

  const ModRing field(a.p, 1);
  FqPolynomial product = FqPolynomial::constant(field, 1);
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    product = product * a.blocks[i].residue_factor;
    for (std::size_t j = i + 1; j < a.blocks.size(); ++j) {
      const FqPolynomial g = gcd(a.blocks[i].residue_factor, a.blocks[j].residue_factor);
      if (g.degree() > 0)
        ok = fail("block factors coprime", "blocks " + std::to_string(i) + "," + std::to_string(j), g.to_string());
    }
  }
  if (!(product == cp)) ok = fail("block factors multiply to residue charpoly", "quotient", product.to_string());
  return ok;
}

WeylPair extract_carter_type(const AssembledElement& a, const FacetLabel& f) {
  const FqPolynomial cp = berkowitz_charpoly(quotient_matrix(a, f));
  std::vector<int> e_side, b_side, even;
  for (const CycleFactor& cf : cycle_decomposition(cp, a.seed)) {
    const BlockDatum* owner = nullptr;
    for (const BlockDatum& b : a.blocks) {
      const bool divides = std::all_of(cf.factors.begin(), cf.factors.end(), [&](const FqPolynomial& h) {
        return (b.residue_factor % h).is_zero();
      });
      if (divides) {
        owner = &b;
        break;
      }
    }
    if (!owner) throw MalformedInput("cycle factor " + cf.factors.front().to_string() + " belongs to no block");
    if (cf.cycle.parity == CycleParity::Even) {
      if (owner->kind != BlockKind::Mu0)
        throw MalformedInput("even cycle found in a " + to_string(owner->kind) + " block");
      even.push_back(cf.cycle.length);
    } else if (owner->kind == BlockKind::MuDoublePrime) {
      e_side.push_back(cf.cycle.length);
    } else if (owner->kind == BlockKind::MuPrime) {
      b_side.push_back(cf.cycle.length);
    } else {
      throw MalformedInput("odd cycle found in a mu0 block");
    }
  }
  std::sort(even.begin(), even.end(), std::greater<>());
  WeylPair out{f, Partition::from_unsorted(e_side), Partition::from_unsorted(b_side), even};
  out.validate();
  return out;
}

VerificationReport verify_element(const AssembledElement& a) {
  VerificationReport r;
  r.triple = a.triple;
  r.expected_pair = canonicalize_pair(triple_to_pair(a.triple));
  r.facet = r.expected_pair.facet;
  r.p = a.p;
  r.precision = a.precision;
  r.seed = a.seed;

  r.gram_ok = check_gram_standard(a);
  if (!r.gram_ok) r.failures.push_back({"gram standard", "gram", "non-standard entries"});

  ParahoricResult ph = check_parahoric(a, r.facet);
  r.parahoric_ok = ph.ok;
  r.failures.insert(r.failures.end(), ph.failures.begin(), ph.failures.end());

  try {
    const ScaledPoly cp = charpoly(a.x);
    r.charpoly_ok = cp.is_even();
    if (!r.charpoly_ok) r.failures.push_back({"charpoly even", "charpoly(X)", "odd coefficient"});
    const FqPolynomial residue = cp.residue();
    const FqPolynomial quotient = berkowitz_charpoly(quotient_matrix(a, r.facet));
    if (!(residue == quotient)) {
      r.charpoly_ok = false;
      r.failures.push_back({"quotient charpoly = reduced charpoly", "charpoly(X)", residue.to_string()});
    }
  } catch (const std::runtime_error& e) {
    r.charpoly_ok = false;
    r.failures.push_back({"charpoly", "charpoly(X)", e.what()});
  }

  r.quotient_regular_ok = check_quotient_regular(a, r.facet, &r.failures);

  if (r.quotient_regular_ok) {
    try {
      WeylPair got = canonicalize_pair(extract_carter_type(a, r.facet));
      r.extracted_type = got.carter_type();
      r.cycle_type_ok = got == r.expected_pair;
      if (!r.cycle_type_ok)
        r.failures.push_back({"cycle type", "quotient", got.type_string() + " on " + got.facet.to_string()});
      r.extracted_pair = std::move(got);
    } catch (const MalformedInput& e) {
      r.failures.push_back({"cycle type", "quotient", e.what()});
    }
  } else {
    r.failures.push_back({"cycle type", "quotient", "skipped: quotient not regular"});
  }
  return r;
}

VerificationReport verify_all(const TorusTriple& t, u64 p, int precision, u64 seed) {
  return verify_element(assemble(t, p, precision, seed));
}

}  // namespace sptori
