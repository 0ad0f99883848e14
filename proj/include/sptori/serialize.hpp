#pragma once

// JSON forms of the main value types; field layout is documented in
// docs/json_schema.md.

#include <json.hpp>

#include "sptori/combinatorics.hpp"
#include "sptori/construction.hpp"
#include "sptori/verification.hpp"

namespace sptori {

using json = nlohmann::ordered_json;

json partition_to_json(const Partition& p);
Partition partition_from_json(const json& j);

json triple_to_json(const TorusTriple& t);
TorusTriple triple_from_json(const json& j);

json facet_to_json(const FacetLabel& f);
json pair_to_json(const WeylPair& p);

/// Rows of "u*p^v" strings.
json matrix_to_json(const PadicMatrix& m);
PadicMatrix matrix_from_json(const json& j, u64 p, int precision);

json element_to_json(const AssembledElement& a);
/// Restores triple, parameters, layout, X and gram; block data is not part
/// of the serialized form and comes back empty.
AssembledElement element_from_json(const json& j);

json report_to_json(const VerificationReport& r);

}  // namespace sptori
