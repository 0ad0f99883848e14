#include "sptori/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <set>
#include <sstream>
#include <thread>

#include "sptori/construction.hpp"
#include "sptori/errors.hpp"
#include "sptori/serialize.hpp"
#include "sptori/verification.hpp"

namespace sptori {

namespace {

// Terminal columns of a UTF-8 string (every code point counts as one).
std::size_t display_width(const std::string& s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  }));
}

std::string pad(const std::string& s, std::size_t width) {
  const std::size_t w = display_width(s);
  return w >= width ? s : s + std::string(width - w, ' ');
}

std::string render_columns(const std::vector<std::vector<std::string>>& rows, const std::string& indent = "") {
  std::vector<std::size_t> widths;
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (widths.size() <= c) widths.push_back(0);
      widths[c] = std::max(widths[c], display_width(row[c]));
    }
  std::ostringstream os;
  for (const auto& row : rows) {
    std::string line = indent;
    for (std::size_t c = 0; c < row.size(); ++c) line += c + 1 == row.size() ? row[c] : pad(row[c], widths[c]) + "  ";
    os << line << "\n";
  }
  return os.str();
}

std::string matrix_text(const PadicMatrix& m, const std::string& indent) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    std::vector<std::string> row;
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return render_columns(rows, indent);
}

struct Resolved {
  int n = 0;
  u64 p = 0;
  bool p_defaulted = false;
};

Resolved resolve(const CliConfig& cfg, int n) {
  if (cfg.n && *cfg.n != n)
    throw InvalidArgument("--n " + std::to_string(*cfg.n) + " does not match the triple's rank " + std::to_string(n));
  Resolved r{n, cfg.p.value_or(default_prime(n)), !cfg.p.has_value()};
  require_valid_prime(r.p, n);
  if (cfg.precision < 1) throw InvalidArgument("--precision must be at least 1");
  checked_pow(r.p, cfg.precision + 1);
  return r;
}

std::string header(const Resolved& r, const CliConfig& cfg) {
  std::ostringstream os;
  os << "# n = " << r.n << ", p = " << r.p << (r.p_defaulted ? " (default)" : "") << ", N = " << cfg.precision
     << ", seed = " << cfg.seed << "\n";
  return os.str();
}

json params_json(const Resolved& r, const CliConfig& cfg) {
  return json{{"n", r.n}, {"p", r.p}, {"pDefault", r.p_defaulted}, {"precision", cfg.precision}, {"seed", cfg.seed}};
}

// Runs f over [0, count) on a few threads; results stay in index order.
template <class T, class F>
std::vector<T> parallel_map(std::size_t count, F&& f, std::vector<std::exception_ptr>& errors) {
  std::vector<T> out(count);
  errors.assign(count, nullptr);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

std::string report_text(const VerificationReport& r) {
  auto flag = [](bool b) { return b ? "ok" : "FAIL"; };
  std::ostringstream os;
  os << (r.passed() ? "PASS" : "FAIL") << "  " << r.triple.to_string() << "  " << r.facet.to_string() << "  "
     << (r.extracted_pair ? r.extracted_pair->type_string() : std::string("?")) << "  [gram " << flag(r.gram_ok)
     << ", parahoric " << flag(r.parahoric_ok) << ", charpoly " << flag(r.charpoly_ok) << ", quotient "
     << flag(r.quotient_regular_ok) << ", cycle type " << flag(r.cycle_type_ok) << "]\n";
  for (const auto& f : r.failures) os << "    " << f.condition << " at " << f.location << ": " << f.found << "\n";
  return os.str();
}

}  // namespace

std::string cmd_table(int n, OutputFormat format) {
  if (n < 0) throw InvalidArgument("--n must be non-negative");
  const auto triples = enumerate_triples(n);
  if (format == OutputFormat::Json) {
    json rows = json::array();
    for (const auto& t : triples) {
      const WeylPair w = triple_to_pair(t);
      rows.push_back({{"triple", triple_to_json(t)},
                      {"facet", facet_to_json(w.facet)},
                      {"type", w.type_string()},
                      {"stableClassSize", stable_class_size(t)}});
    }
    return json{{"n", n}, {"count", triples.size()}, {"rows", std::move(rows)}}.dump(2) + "\n";
  }
  std::vector<std::vector<std::string>> rows{{"triple", "facet", "type", "stable class size"}};
  for (const auto& t : triples) {
    const WeylPair w = triple_to_pair(t);
    rows.push_back({t.to_string(), w.facet.to_string(), w.type_string(), std::to_string(stable_class_size(t))});
  }
  std::ostringstream os;
  os << "# Sp_" << 2 * n << ": " << triples.size() << " classes of maximal unramified tori\n" << render_columns(rows);
  return os.str();
}

CliResult cmd_construct(const CliConfig& cfg) {
  if (!cfg.triple) throw InvalidArgument("construct needs --triple");
  const Resolved r = resolve(cfg, cfg.triple->rank());
  const AssembledElement a = assemble(*cfg.triple, r.p, cfg.precision, cfg.seed);
  CliResult out;
  if (cfg.format == OutputFormat::Json) {
    json j = params_json(r, cfg);
    j["element"] = element_to_json(a);
    out.out = j.dump(2) + "\n";
    return out;
  }
  std::ostringstream os;
  os << header(r, cfg);
  os << "triple " << a.triple.to_string() << "  facet " << canonicalize_pair(triple_to_pair(a.triple)).facet.to_string()
     << "\n";
  for (std::size_t i = 0; i < a.layout.size(); ++i) {
    const BlockLayout& l = a.layout[i];
    os << "block " << i << ": " << to_string(l.kind) << " part " << l.part << " scaling " << a.blocks[i].scaling.residue
       << "  + [" << l.plus_begin << "," << l.plus_begin + l.part << ")  - [" << l.minus_begin << ","
       << l.minus_begin + l.part << ")\n";
  }
  os << "X:\n" << matrix_text(a.x, "  ") << "gram:\n" << matrix_text(a.gram, "  ");
  out.out = os.str();
  return out;
}

CliResult cmd_verify(const CliConfig& cfg) {
  if (cfg.all == cfg.triple.has_value()) throw InvalidArgument("verify needs exactly one of --triple and --all");
  if (cfg.all && !cfg.n) throw InvalidArgument("verify --all needs --n");
  const int n = cfg.all ? *cfg.n : cfg.triple->rank();
  const Resolved r = resolve(cfg, n);
  const std::vector<TorusTriple> triples = cfg.all ? enumerate_triples(n) : std::vector<TorusTriple>{*cfg.triple};

  std::vector<std::exception_ptr> errors;
  const auto reports = parallel_map<VerificationReport>(triples.size(), [&](std::size_t i) {
    AssembledElement a = assemble(triples[i], r.p, cfg.precision, cfg.seed);
    if (cfg.inject_fault && a.x.dim() > 0) a.x.set(0, 0, ScaledPadic::from_numerator(1, r.p, cfg.precision));
    return verify_element(a);
  }, errors);

  CliResult out;
  std::ostringstream text, err;
  json jreports = json::array();
  std::size_t passed = 0;
  bool construction_failed = false;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    if (errors[i]) {
      try {
        std::rethrow_exception(errors[i]);
      } catch (const InvalidArgument&) {
        throw;
      } catch (const std::exception& e) {
        construction_failed = true;
        err << "construction failed for " << triples[i].to_string() << ": " << e.what() << "\n";
        text << "ERROR " << triples[i].to_string() << ": " << e.what() << "\n";
        jreports.push_back({{"triple", triple_to_json(triples[i])}, {"error", e.what()}});
      }
      continue;
    }
    if (reports[i].passed()) ++passed;
    text << report_text(reports[i]);
    jreports.push_back(report_to_json(reports[i]));
  }
  if (cfg.format == OutputFormat::Json) {
    json j = params_json(r, cfg);
    j["total"] = triples.size();
    j["passed"] = passed;
    j["reports"] = std::move(jreports);
    out.out = j.dump(2) + "\n";
  } else {
    out.out = header(r, cfg) + text.str() + std::to_string(passed) + "/" + std::to_string(triples.size()) +
              " passed\n";
  }
  out.err = err.str();
  out.exit_code = construction_failed             ? exit_code::kConstructionFailed
                  : passed == triples.size()      ? exit_code::kOk
                                                  : exit_code::kVerificationFailed;
  return out;
}

CliResult cmd_roundtrip(int n, OutputFormat format) {
  if (n < 0) throw InvalidArgument("--n must be non-negative");
  const auto triples = enumerate_triples(n);
  std::vector<WeylPair> pairs;
  for (const auto& f : enumerate_canonical_facets(n))
    for (auto& w : elliptic_classes(f)) pairs.push_back(canonicalize_pair(std::move(w)));

  std::vector<std::string> problems;
  std::set<std::string> images;
  for (const auto& t : triples) {
    const WeylPair w = canonicalize_pair(triple_to_pair(t));
    images.insert(w.to_string());
    if (!(pair_to_triple(w) == t)) problems.push_back("triple " + t.to_string() + " does not come back");
  }
  std::set<std::string> pair_set;
  for (const auto& w : pairs) {
    pair_set.insert(w.to_string());
    if (!(canonicalize_pair(triple_to_pair(pair_to_triple(w))) == w))
      problems.push_back("pair " + w.to_string() + " does not come back");
  }
  if (images != pair_set) problems.push_back("images of the triples differ from the enumerated pairs");
  if (triples.size() != pairs.size()) problems.push_back("counts differ");

  CliResult out;
  out.exit_code = problems.empty() ? exit_code::kOk : exit_code::kVerificationFailed;
  if (format == OutputFormat::Json) {
    out.out = json{{"n", n},
                   {"triples", triples.size()},
                   {"pairs", pairs.size()},
                   {"roundTripsOk", problems.empty()},
                   {"problems", problems}}
                  .dump(2) +
              "\n";
    return out;
  }
  std::ostringstream os;
  os << "# Sp_" << 2 * n << ": " << triples.size() << " triples, " << pairs.size() << " (facet, elliptic class) pairs\n";
  for (const auto& p : problems) os << "problem: " << p << "\n";
  os << triples.size() << (triples.size() == pairs.size() ? " = " : " != ") << pairs.size()
     << (problems.empty() ? ", round trips OK" : ", round trips FAILED") << "\n";
  out.out = os.str();
  return out;
}

CliResult run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Maximal unramified tori of Sp_2n: partition triples, facets with elliptic Weyl classes, and explicit "
               "p-adic representatives.",
               "sptori"};
  app.require_subcommand(1);

  CliConfig cfg;
  int n_value = 0;
  std::uint64_t p_value = 0;
  std::string format = "text";
  std::string triple_text;

  auto common = [&](CLI::App* sub, bool arithmetic) {
    sub->add_option("--n", n_value, "rank n of Sp_2n")->check(CLI::NonNegativeNumber);
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));
    if (!arithmetic) return;
    sub->add_option("--p", p_value, "odd prime p > 2n (default: smallest such prime)");
    sub->add_option("--precision", cfg.precision, "p-adic precision N")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "seed for generator and factoring choices");
  };

  CLI::App* table = app.add_subcommand("table", "list triples with their facet and Weyl class");
  common(table, false);
  CLI::App* construct = app.add_subcommand("construct", "build X_W for one triple");
  common(construct, true);
  construct->add_option("--triple", triple_text, "\"mu0;mu';mu''\", comma lists, empty or ∅ allowed")->required();
  CLI::App* verify = app.add_subcommand("verify", "build and check X_W");
  common(verify, true);
  verify->add_option("--triple", triple_text, "\"mu0;mu';mu''\"");
  verify->add_flag("--all", cfg.all, "every triple of rank n");
  verify->add_flag("--inject-fault", cfg.inject_fault)->group("");
  CLI::App* roundtrip = app.add_subcommand("roundtrip", "check the bijection in both directions");
  common(roundtrip, false);

  std::vector<std::string> storage{"sptori"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());

  CliResult result;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int code = app.exit(e, out, err);
    result.out = out.str();
    result.err = err.str();
    result.exit_code = code == 0 ? exit_code::kOk : exit_code::kBadParameters;
    return result;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    if (sub->count("--n")) cfg.n = n_value;
    if (sub->get_option_no_throw("--p") && sub->count("--p")) cfg.p = p_value;
    if (!triple_text.empty()) cfg.triple = parse_triple(triple_text);
    cfg.format = format == "json" ? OutputFormat::Json : OutputFormat::Text;

    if (sub == table) {
      cfg.command = Command::Table;
      if (!cfg.n) throw InvalidArgument("table needs --n");
      result.out = cmd_table(*cfg.n, cfg.format);
    } else if (sub == construct) {
      cfg.command = Command::Construct;
      result = cmd_construct(cfg);
    } else if (sub == verify) {
      cfg.command = Command::Verify;
      result = cmd_verify(cfg);
    } else {
      cfg.command = Command::Roundtrip;
      if (!cfg.n) throw InvalidArgument("roundtrip needs --n");
      result = cmd_roundtrip(*cfg.n, cfg.format);
    }
  } catch (const InvalidArgument& e) {
    result = {"", std::string("error: ") + e.what() + "\n", exit_code::kBadParameters};
  } catch (const MalformedInput& e) {
    result = {"", std::string("error: ") + e.what() + "\n", exit_code::kBadParameters};
  } catch (const std::runtime_error& e) {
    result = {"", std::string("construction failed: ") + e.what() + "\n", exit_code::kConstructionFailed};
  }
  return result;
}

}  // namespace sptori
