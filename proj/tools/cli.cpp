#include "cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>
#include <thread>

#include "opetope/catalog.hpp"
#include "opetope/coherence.hpp"
#include "opetope/error.hpp"
#include "opetope/metatree.hpp"
#include "opetope/nerve.hpp"
#include "opetope/opetopic_set.hpp"
#include "opetope/set_ops.hpp"
#include "opetope/slice.hpp"

namespace opetope::cli {

namespace {

using json = nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Relative paths that do not exist are looked up under $OPETOPE_CORPUS.
std::string resolvePath(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::exists(path)) return path;
  if (const char* corpus = std::getenv("OPETOPE_CORPUS"); corpus && fs::path(path).is_relative()) {
    fs::path p = fs::path(corpus) / path;
    if (fs::exists(p)) return p.string();
  }
  throw UsageError("no such file: " + path);
}

std::string readFile(const std::string& path) {
  std::ifstream in(resolvePath(path));
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool isMetatreeText(const std::string& text) {
  auto i = text.find_first_not_of(" \t\r\n");
  return i != std::string::npos && text[i] == '(';
}

std::string baseSpec(const std::string& base) {
  if (base.empty() || base.front() == '{') return base;
  // Builtin names win over files of the same name.
  try {
    operadByName(base);
    return base;
  } catch (const Error&) {
    return resolvePath(base);
  }
}

SizeBound parseBound(const std::string& text) {
  SizeBound b;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      size_t used = 0;
      int v = std::stoi(part, &used);
      if (used != part.size() || v < 0) throw std::invalid_argument(part);
      b.perDim.push_back(v);
    } catch (const std::logic_error&) {
      throw UsageError("bad size bound '" + text + "'");
    }
  }
  if (b.perDim.empty()) throw UsageError("empty size bound");
  return b;
}

std::string metatreeLine(const Opetope& w, const CatalogPtr& cat) {
  return printMetatree(operationToMetatree(w.value, w.dim, cat));
}

struct Options {
  bool json = false;
  bool parallel = false;
  long budget = 10'000'000;
};

int enumerateCmd(const Options& o, int dim, int size, const std::string& base, bool counts, std::ostream& out) {
  CatalogPtr cat = catalogFor(base.empty() ? "I" : baseSpec(base));
  if (counts) {
    std::map<int, long> byArity;
    enumerateOpetopes(*cat, dim, size, [&](const Opetope& w) {
      ++byArity[dim == 0 ? 0 : w.value.arity()];
      return true;
    });
    if (o.json) {
      json j = json::object();
      for (auto [k, n] : byArity) j[std::to_string(k)] = n;
      out << j.dump() << "\n";
    } else {
      long total = 0;
      for (auto [k, n] : byArity) {
        out << k << " infaces: " << n << "\n";
        total += n;
      }
      out << "total: " << total << "\n";
    }
    return Ok;
  }
  auto emit = [&](const std::string& line) {
    if (o.json)
      out << json{{"dim", dim}, {"metatree", line}}.dump() << "\n";
    else
      out << line << "\n";
  };
  if (!o.parallel) {
    enumerateOpetopes(*cat, dim, size, [&](const Opetope& w) {
      emit(metatreeLine(w, cat));
      return true;
    });
    return Ok;
  }
  // Printing is split into contiguous chunks and merged in enumeration order.
  std::vector<Opetope> all = enumerateOpetopes(*cat, dim, size);
  const size_t workers = std::max(1u, std::thread::hardware_concurrency());
  const size_t chunk = (all.size() + workers - 1) / std::max<size_t>(workers, 1);
  std::vector<std::future<std::vector<std::string>>> parts;
  for (size_t lo = 0; lo < all.size(); lo += chunk)
    parts.push_back(std::async(std::launch::async, [&, lo] {
      std::vector<std::string> lines;
      for (size_t i = lo; i < std::min(all.size(), lo + chunk); ++i) lines.push_back(metatreeLine(all[i], cat));
      return lines;
    }));
  for (auto& p : parts)
    for (const std::string& line : p.get()) emit(line);
  return Ok;
}

int facesCmd(const Options& o, const std::string& file, std::ostream& out) {
  std::string text = readFile(file);
  Metatree m = parseMetatree(text);
  Opetope w = metatreeToOpetope(m);
  const CatalogPtr& cat = m.catalog;
  auto ins = infacesOf(*cat, w);
  Opetope outface = outfaceOf(*cat, w);
  if (o.json) {
    json j;
    j["infaces"] = json::array();
    for (const Opetope& f : ins) j["infaces"].push_back(metatreeLine(f, cat));
    j["outface"] = metatreeLine(outface, cat);
    out << j.dump(2) << "\n";
  } else {
    for (size_t i = 0; i < ins.size(); ++i) out << "inface " << i + 1 << ": " << metatreeLine(ins[i], cat) << "\n";
    out << "outface: " << metatreeLine(outface, cat) << "\n";
  }
  return Ok;
}

int describeCmd(const Options& o, const std::string& file, std::ostream& out) {
  std::string text = readFile(file);
  Metatree m = parseMetatree(text);
  FaceDescription d = describeOpetope(*m.catalog, metatreeToOpetope(m));
  if (o.json) {
    json j;
    j["dim"] = d.dim;
    j["shape"] = d.shape;
    j["counts"] = d.counts;
    j["infaces"] = d.infaces;
    j["outface"] = d.outface;
    j["adjacency"] = json::array();
    for (const auto& [face, boundary] : d.adjacency) j["adjacency"].push_back({{"face", face}, {"boundary", boundary}});
    j["flags"] = d.flags;
    out << j.dump(2) << "\n";
  } else {
    out << d.text;
    if (!d.text.empty() && d.text.back() != '\n') out << "\n";
  }
  return Ok;
}

json reportJson(const Report& r) { return json{{"ok", r.ok}, {"checked", r.checked}, {"violations", r.violations}}; }

int validateCmd(const Options& o, const std::string& file, std::ostream& out) {
  std::string text = readFile(file);
  Report r;
  std::string kind;
  if (isMetatreeText(text)) {
    kind = "metatree";
    r = validateMetatree(parseMetatree(text));
  } else {
    kind = "opetopic set";
    OpetopicSet x = setFromJson(text);
    r = validateSet(x);
  }
  if (o.json) {
    json j = reportJson(r);
    j["kind"] = kind;
    out << j.dump(2) << "\n";
  } else {
    out << kind << ": " << (r.ok ? "valid" : "invalid") << "\n";
    for (const std::string& v : r.violations) out << "  " << v << "\n";
  }
  return r.ok ? Ok : Fails;
}

int sliceCmd(const Options& o, const std::string& base, int treeSize, std::ostream& out) {
  OperadPtr b = operadByName(base.empty() ? "I" : baseSpec(base));
  auto sl = sliceOperad(b);
  auto ops = sl->operations(Bound{treeSize, treeSize});
  if (!ops) raise(ErrorCode::Unbounded, b->name() + " cannot enumerate operations");
  for (const Value& f : *ops) {
    Profile p = profileOf(*sl, f);
    if (o.json) {
      json ins = json::array();
      for (const Value& x : p.inputs) ins.push_back(x.text());
      out << json{{"op", f.text()}, {"inputs", ins}, {"output", p.output.text()}}.dump() << "\n";
    } else {
      out << f.text() << " :";
      for (const Value& x : p.inputs) out << " " << x.text();
      out << " -> " << p.output.text() << "\n";
    }
  }
  return Ok;
}

int checkCmd(const Options& o, int n, const std::string& file, std::ostream& out) {
  OpetopicSet x = loadSet(resolvePath(file));
  CoherenceReport r = checkNCoherent(x, n, o.budget);
  if (o.json) {
    out << reportToJson(r) << "\n";
  } else {
    out << n << "-coherence: " << verdictName(r.verdict.value) << "\n";
    out << "niches checked: " << r.nichesChecked << "\n";
    out << "composites checked: " << r.compositesChecked << "\n";
    out << "recursion nodes: " << r.verdict.consumed << "\n";
    if (!r.verdict.witness.empty()) out << "witness: " << r.verdict.witness << "\n";
    for (const std::string& s : r.nichesWithoutUniversal) out << "  no universal occupant: " << s << "\n";
    for (const std::string& s : r.nonUniversalComposites) out << "  non-universal composite: " << s << "\n";
  }
  if (r.verdict.exhausted()) return Exhausted;
  return r.verdict.holds() ? Ok : Fails;
}

void emitSet(const Options& o, const OpetopicSet& x, bool counts, std::ostream& out) {
  if (!counts) {
    out << setToJson(x) << "\n";
    return;
  }
  std::vector<size_t> perDim;
  for (int m = 0; m <= x.maxDim(); ++m) perDim.push_back(x.stratum(m).size());
  if (o.json) {
    out << json{{"cells", perDim}, {"total", x.size()}}.dump() << "\n";
  } else {
    for (size_t m = 0; m < perDim.size(); ++m) out << "dim " << m << ": " << perDim[m] << "\n";
    out << "total: " << x.size() << "\n";
  }
}

int nerveCmd(const Options& o, const std::string& kind, const std::string& file, std::optional<int> maxDim,
             const std::string& boundText, const std::string& base, bool counts, std::ostream& out) {
  std::string text = readFile(file);
  if (kind == "category") {
    NerveOptions opts;
    if (maxDim) opts.maxDim = *maxDim;
    if (!boundText.empty()) opts.bound = parseBound(boundText);
    emitSet(o, nerveOfCategory(FiniteCategory::fromJson(text), opts), counts, out);
    return Ok;
  }
  const int dim = maxDim.value_or(2);
  if (kind == "set") {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      raise(ErrorCode::SyntaxError, std::string("set document: ") + e.what());
    }
    if (!j.contains("elements") || !j["elements"].is_array()) raise(ErrorCode::SyntaxError, "set document needs \"elements\"");
    auto elems = j["elements"].get<std::vector<std::string>>();
    SizeBound b = boundText.empty() ? SizeBound::uniform(3) : parseBound(boundText);
    emitSet(o, nerveOfAlgebra(operadI(), "I", setAsAlgebra(elems), dim, b), counts, out);
    return Ok;
  }
  if (kind == "monoid") {
    SizeBound b = boundText.empty() ? SizeBound{{3, 2}} : parseBound(boundText);
    emitSet(o, nerveOfAlgebra(operadByName("I+"), "I+", monoidAsAlgebra(Monoid::fromJson(text)), dim, b), counts, out);
    return Ok;
  }
  const std::string spec = base.empty() ? "I+" : baseSpec(base);
  OperadPtr op = operadByName(spec);
  SizeBound b = boundText.empty() ? SizeBound{{3, 2}} : parseBound(boundText);
  emitSet(o, nerveOfAlgebra(op, spec, AlgebraTable::fromJson(text, *op), dim, b), counts, out);
  return Ok;
}

int terminalCmd(const Options& o, const std::string& base, int maxDim, int size, bool counts, std::ostream& out) {
  OpetopicSet x = terminalSet(base.empty() ? "I" : baseSpec(base), maxDim, size, o.budget);
  emitSet(o, x, counts, out);
  return Ok;
}

int errorExit(const Error& e, const Options& o, std::ostream& out, std::ostream& err) {
  if (o.json) out << json{{"error", errorName(e.code())}, {"message", e.what()}}.dump() << "\n";
  err << "error: " << e.what() << "\n";
  return e.code() == ErrorCode::BudgetExceeded ? Exhausted : Fails;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Opetopes, opetopic sets and their coherence", "opetope"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Machine-readable output");
  app.add_option("--budget", o.budget, "Recursion budget for coherence checks, cell budget for constructions")
      ->check(CLI::PositiveNumber);
  app.add_flag("--parallel", o.parallel, "Parallel enumeration with deterministic merge");

  int dim = 0, size = 0, treeSize = 0, n = 0, termDim = 0;
  std::optional<int> maxDim;
  std::string base, file, kind, bound;
  bool counts = false;

  auto* en = app.add_subcommand("enumerate", "Stream canonical metatrees of opetopes");
  en->add_option("--dim", dim, "Dimension")->required()->check(CLI::NonNegativeNumber);
  en->add_option("--size", size, "Nodes per metatree level")->required()->check(CLI::NonNegativeNumber);
  en->add_option("--base", base, "Base operad: I, K, T<n>, F<k> or a JSON file");
  en->add_flag("--count", counts, "Only print counts by number of infaces");

  auto* fa = app.add_subcommand("faces", "Print the infaces and outface of an opetope");
  fa->add_option("FILE", file, "Metatree file")->required();

  auto* de = app.add_subcommand("describe", "Face lattice of an opetope");
  de->add_option("FILE", file, "Metatree file")->required();

  auto* va = app.add_subcommand("validate", "Validate a metatree or an opetopic set");
  va->add_option("FILE", file, "Metatree or opetopic set JSON")->required();

  auto* sl = app.add_subcommand("slice", "List slice operations up to a tree size");
  sl->add_option("--base", base, "Base operad: I, K, T<n>, F<k> or a JSON file");
  sl->add_option("--tree-size", treeSize, "Maximum node count")->required()->check(CLI::NonNegativeNumber);

  auto* ch = app.add_subcommand("check", "Coherence report for an opetopic set");
  ch->add_option("--n", n, "Coherence level")->required()->check(CLI::NonNegativeNumber);
  ch->add_option("FILE", file, "Opetopic set JSON")->required();

  auto* ne = app.add_subcommand("nerve", "Emit the nerve of a classical structure");
  ne->add_option("--kind", kind, "set, monoid, category or algebra")
      ->required()
      ->check(CLI::IsMember({"set", "monoid", "category", "algebra"}));
  ne->add_option("FILE", file, "Input document")->required();
  ne->add_option("--max-dim", maxDim, "Highest dimension")->check(CLI::NonNegativeNumber);
  ne->add_option("--bound", bound, "Infaces per frame, per dimension (e.g. 3,3,2)");
  ne->add_option("--base", base, "Operad of an algebra (default I+)");
  ne->add_flag("--counts", counts, "Print cell counts instead of the set");

  auto* te = app.add_subcommand("terminal", "Emit the terminal opetopic set");
  te->add_option("--base", base, "Base operad: I, K, T<n>, F<k> or a JSON file");
  te->add_option("--max-dim", termDim, "Highest dimension")->required()->check(CLI::NonNegativeNumber);
  te->add_option("--size", size, "Infaces per frame")->required()->check(CLI::NonNegativeNumber);
  te->add_flag("--counts", counts, "Print cell counts instead of the set");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Ok;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return Usage;
  }

  try {
    if (en->parsed()) return enumerateCmd(o, dim, size, base, counts, out);
    if (fa->parsed()) return facesCmd(o, file, out);
    if (de->parsed()) return describeCmd(o, file, out);
    if (va->parsed()) return validateCmd(o, file, out);
    if (sl->parsed()) return sliceCmd(o, base, treeSize, out);
    if (ch->parsed()) return checkCmd(o, n, file, out);
    if (ne->parsed()) return nerveCmd(o, kind, file, maxDim, bound, base, counts, out);
    if (te->parsed()) return terminalCmd(o, base, termDim, size, counts, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return Usage;
  } catch (const Error& e) {
    return errorExit(e, o, out, err);
  }
  return Usage;
}

}  // namespace opetope::cli
