#include "sptori/serialize.hpp"

#include "sptori/errors.hpp"

namespace sptori {

namespace {

BlockKind kind_from_string(const std::string& s) {
  if (s == "mu0") return BlockKind::Mu0;
  if (s == "mu'") return BlockKind::MuPrime;
  if (s == "mu''") return BlockKind::MuDoublePrime;
  throw MalformedInput("unknown block kind '" + s + "'");
}

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw MalformedInput(std::string("bad ") + what + " JSON: " + e.what());
  }
}

}  // namespace

json partition_to_json(const Partition& p) { return json(p.parts()); }

Partition partition_from_json(const json& j) {
  return guarded("partition", [&] { return Partition(j.get<std::vector<int>>()); });
}

json triple_to_json(const TorusTriple& t) {
  return json{{"mu0", partition_to_json(t.mu0)},
              {"muPrime", partition_to_json(t.mu_prime)},
              {"muDoublePrime", partition_to_json(t.mu_double_prime)},
              {"text", t.to_string()}};
}

TorusTriple triple_from_json(const json& j) {
  return guarded("triple", [&] {
    return TorusTriple{partition_from_json(j.at("mu0")), partition_from_json(j.at("muPrime")),
                       partition_from_json(j.at("muDoublePrime"))};
  });
}

json facet_to_json(const FacetLabel& f) {
  return json{{"a", f.a}, {"xs", f.xs}, {"b", f.b}, {"text", f.to_string()}};
}

json pair_to_json(const WeylPair& p) {
  return json{{"facet", facet_to_json(p.facet)},
              {"eSideOdd", partition_to_json(p.e_side_odd)},
              {"bSideOdd", partition_to_json(p.b_side_odd)},
              {"evenCycles", p.even_cycles},
              {"type", p.type_string()}};
}

json matrix_to_json(const PadicMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

PadicMatrix matrix_from_json(const json& j, u64 p, int precision) {
  return guarded("matrix", [&] {
    const std::size_t d = j.size();
    PadicMatrix m(p, precision, d);
    for (std::size_t i = 0; i < d; ++i) {
      if (j.at(i).size() != d) throw MalformedInput("matrix JSON is not square");
      for (std::size_t k = 0; k < d; ++k)
        m.set(i, k, ScaledPadic::parse(j.at(i).at(k).get<std::string>(), p, precision));
    }
    return m;
  });
}

json element_to_json(const AssembledElement& a) {
  json layout = json::array();
  for (std::size_t i = 0; i < a.layout.size(); ++i) {
    const BlockLayout& l = a.layout[i];
    json entry{{"kind", to_string(l.kind)},
               {"part", l.part},
               {"plusBegin", l.plus_begin},
               {"minusBegin", l.minus_begin}};
    if (i < a.blocks.size()) entry["scaling"] = a.blocks[i].scaling.residue;
    layout.push_back(std::move(entry));
  }
  return json{{"triple", triple_to_json(a.triple)},
              {"n", a.n()},
              {"p", a.p},
              {"precision", a.precision},
              {"seed", a.seed},
              {"layout", std::move(layout)},
              {"X", matrix_to_json(a.x)},
              {"gram", matrix_to_json(a.gram)}};
}

AssembledElement element_from_json(const json& j) {
  return guarded("element", [&] {
    AssembledElement a;
    a.triple = triple_from_json(j.at("triple"));
    a.p = j.at("p").get<u64>();
    a.precision = j.at("precision").get<int>();
    a.seed = j.at("seed").get<u64>();
    for (const json& l : j.at("layout"))
      a.layout.push_back({kind_from_string(l.at("kind").get<std::string>()), l.at("part").get<int>(),
                          l.at("plusBegin").get<int>(), l.at("minusBegin").get<int>()});
    a.x = matrix_from_json(j.at("X"), a.p, a.precision);
    a.gram = matrix_from_json(j.at("gram"), a.p, a.precision);
    if (a.x.dim() != static_cast<std::size_t>(2 * a.n()) || a.gram.dim() != a.x.dim())
      throw MalformedInput("matrix size does not match the triple");
    return a;
  });
}

json report_to_json(const VerificationReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures)
    failures.push_back({{"condition", f.condition}, {"location", f.location}, {"found", f.found}});
  return json{{"triple", triple_to_json(r.triple)},
              {"facet", facet_to_json(r.facet)},
              {"p", r.p},
              {"precision", r.precision},
              {"seed", r.seed},
              {"gramOk", r.gram_ok},
              {"parahoricOk", r.parahoric_ok},
              {"charpolyOk", r.charpoly_ok},
              {"quotientRegularOk", r.quotient_regular_ok},
              {"cycleTypeOk", r.cycle_type_ok},
              {"passed", r.passed()},
              {"extractedType", r.extracted_pair ? json(r.extracted_type.to_string()) : json(nullptr)},
              {"extractedPair", r.extracted_pair ? pair_to_json(*r.extracted_pair) : json(nullptr)},
              {"expectedPair", pair_to_json(r.expected_pair)},
              {"failures", std::move(failures)}};
}

}  // namespace sptori
