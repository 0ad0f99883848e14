#pragma once

// Checks on an assembled element: standard Gram matrix, membership in the
// parahoric of its facet (entrywise valuation bounds), regular semisimplicity
// of the image in the reductive quotient, and the Frobenius cycle type.

#include <optional>
#include <string>
#include <vector>

#include "sptori/combinatorics.hpp"
#include "sptori/construction.hpp"

namespace sptori {

enum class Requirement { Zero, ValGe0, ValGe1, ValGeMinus1 };

std::string to_string(Requirement r);

struct EntryCondition {
  int row = 0;
  int col = 0;
  Requirement requirement = Requirement::Zero;
  /// Which block support the entry belongs to, e.g. "A_1 band x_1 (+,+)".
  std::string provenance;
};

struct VerificationFailure {
  std::string condition;
  std::string location;
  std::string found;
};

struct VerificationReport {
  TorusTriple triple;
  FacetLabel facet;
  u64 p = 0;
  int precision = 0;
  u64 seed = 0;

  bool gram_ok = false;
  bool parahoric_ok = false;
  /// charpoly(X) is even and its reduction matches the quotient charpoly.
  bool charpoly_ok = false;
  bool quotient_regular_ok = false;
  bool cycle_type_ok = false;

  std::optional<WeylPair> extracted_pair;
  CarterType extracted_type;
  WeylPair expected_pair;
  std::vector<VerificationFailure> failures;

  bool passed() const { return gram_ok && parahoric_ok && charpoly_ok && quotient_regular_ok && cycle_type_ok; }
};

/// +1 on the upper antidiagonal half, -1 on the lower, 0 elsewhere, exactly.
bool check_gram_standard(const AssembledElement& a);

/// One condition per entry of the 2n x 2n matrix, row-major.
std::vector<EntryCondition> entry_conditions(const FacetLabel& f);

bool satisfies(const ScaledPadic& v, Requirement r);

struct ParahoricResult {
  bool ok = true;
  std::vector<VerificationFailure> failures;
};

/// Throws InvalidArgument if f is not the facet of a.triple.
ParahoricResult check_parahoric(const AssembledElement& a, const FacetLabel& f);

/// Top-right a x a corner times p, bottom-left corner divided by p, reduced
/// mod p. Throws MalformedInput on an entry that does not become integral.
ModMatrix quotient_matrix(const AssembledElement& a, const FacetLabel& f);

/// Residue charpoly squarefree, block factors pairwise coprime and
/// multiplying to it.
bool check_quotient_regular(const AssembledElement& a, const FacetLabel& f,
                            std::vector<VerificationFailure>* failures = nullptr);

/// Cycle type of the residue charpoly with odd cycles assigned to the e-side
/// (mu'' blocks) or b-side (mu' blocks). Throws MalformedInput if a factor
/// belongs to no block or lands in a block of the wrong kind.
WeylPair extract_carter_type(const AssembledElement& a, const FacetLabel& f);

/// Runs every check on an already assembled element.
VerificationReport verify_element(const AssembledElement& a);

/// assemble + verify_element.
VerificationReport verify_all(const TorusTriple& t, u64 p, int precision, u64 seed);

}  // namespace sptori
