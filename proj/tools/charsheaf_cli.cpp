// Command-line front end over the library: classification queries, exact
// Fourier and Mellin data for built-in family groups, cuspidal symbols, and
// the randomized block verification suite. Every subcommand is a thin
// adapter over library calls; no algebra lives here, so integration tests
// can compare the output against the library directly.
//
// Results go to stdout as indented JSON (or a plain table with
// --format table); diagnostics go to stderr. Output is byte-stable for
// fixed arguments and seed. Exit codes: 0 on success, 1 when a verification
// suite reports a failed identity, 2 on usage or argument errors.

#include <cstddef>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "charsheaf/block.hpp"
#include "charsheaf/classify.hpp"
#include "charsheaf/family.hpp"
#include "charsheaf/group.hpp"
#include "charsheaf/json_io.hpp"
#include "charsheaf/symbol.hpp"

namespace {

using charsheaf::BlockSuiteReport;
using charsheaf::CuspidalSheafDatum;
using charsheaf::Cyclotomic;
using charsheaf::FamilyDatum;
using charsheaf::FiniteGroupTable;
using charsheaf::GroupSpec;
using charsheaf::MPair;
using charsheaf::Symbol;
using charsheaf::SymbolType;
using charsheaf::TransformMatrix;
using nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

struct CliConfig {
  std::string format = "json";
  int seed = 0;
  int verbosity = 0;
};

void emit(const ordered_json& payload) { std::cout << payload.dump(2) << "\n"; }

// Errors print a one-line JSON object on stdout so that consumers always
// receive parseable output, plus a human message on stderr.
int usage_error(const std::string& message) {
  ordered_json err;
  err["schema_version"] = kSchemaVersion;
  err["error"] = message;
  std::cout << err.dump() << "\n";
  std::cerr << "error: " << message << "\n";
  return 2;
}

void note(const CliConfig& config, const std::string& message) {
  if (config.verbosity > 0) std::cerr << message << "\n";
}

// ---------------------------------------------------------------------------
// Group names
// ---------------------------------------------------------------------------

// Grammar for --group: "1", "Zn" (cyclic of order n), "Sn" for n <= 6,
// "D8", "Z2^k" for k <= 6 (elementary abelian), and "x"-separated products
// of these, such as "Z2xZ2" or "Z2xS3".
FiniteGroupTable parse_group_atom(const std::string& name) {
  auto small_int = [&](const std::string& text, int lo, int hi) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size() || value < lo || value > hi)
      throw std::invalid_argument("unknown group name: " + name);
    return value;
  };
  if (name == "1") return FiniteGroupTable::cyclic(1);
  if (name == "D8") return FiniteGroupTable::dihedral8();
  if (name.size() >= 2 && name[0] == 'S')
    return FiniteGroupTable::symmetric(small_int(name.substr(1), 1, 6));
  if (name.size() >= 2 && name[0] == 'Z') {
    std::size_t caret = name.find('^');
    if (caret == std::string::npos)
      return FiniteGroupTable::cyclic(small_int(name.substr(1), 1, 60));
    if (name.substr(0, caret) != "Z2")
      throw std::invalid_argument("unknown group name: " + name);
    int rank = small_int(name.substr(caret + 1), 1, 6);
    return FiniteGroupTable::elementary_abelian_2(rank);
  }
  throw std::invalid_argument("unknown group name: " + name);
}

FiniteGroupTable parse_group(const std::string& name) {
  std::vector<std::string> atoms;
  std::string current;
  for (char ch : name) {
    if (ch == 'x') {
      atoms.push_back(current);
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  atoms.push_back(current);
  if (atoms.empty() || atoms.front().empty())
    throw std::invalid_argument("unknown group name: " + name);
  FiniteGroupTable g = parse_group_atom(atoms.front());
  for (std::size_t i = 1; i < atoms.size(); ++i)
    g = FiniteGroupTable::product(g, parse_group_atom(atoms[i]));
  return g;
}

// ---------------------------------------------------------------------------
// Plain-table rendering
// ---------------------------------------------------------------------------

void print_table(const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths(header.size());
  for (std::size_t j = 0; j < header.size(); ++j) widths[j] = header[j].size();
  for (const auto& row : rows)
    for (std::size_t j = 0; j < row.size(); ++j)
      widths[j] = std::max(widths[j], row[j].size());
  auto print_row = [&](const std::vector<std::string>& row) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) std::cout << "  ";
      std::cout << row[j];
      if (j + 1 < row.size())
        std::cout << std::string(widths[j] - row[j].size(), ' ');
    }
    std::cout << "\n";
  };
  print_row(header);
  std::vector<std::string> rule;
  for (std::size_t w : widths) rule.push_back(std::string(w, '-'));
  print_row(rule);
  for (const auto& row : rows) print_row(row);
}

std::string pair_label(const MPair& p) {
  return "(" + std::to_string(p.x_class) + "," + std::to_string(p.chi) + ")";
}

ordered_json legend_to_json(const std::vector<MPair>& pairs) {
  ordered_json legend = ordered_json::array();
  for (const MPair& p : pairs) {
    ordered_json entry;
    entry["x_class"] = p.x_class;
    entry["chi"] = p.chi;
    legend.push_back(std::move(entry));
  }
  return legend;
}

// ---------------------------------------------------------------------------
// classify
// ---------------------------------------------------------------------------

struct ClassifyArgs {
  std::string series;
  std::string isogeny = "sc";
  long rank = 0;
  long p = 0;
};

ordered_json cuspidal_to_json(const CuspidalSheafDatum& r) {
  ordered_json row;
  row["label"] = r.label;
  row["condition"] = r.char_condition;
  row["centralizer"] = r.support_semisimple;
  if (r.support_pair)
    row["support_pair"] =
        ordered_json::array({r.support_pair->first, r.support_pair->second});
  else
    row["support_pair"] = nullptr;
  row["unipotent_class"] = r.support_unipotent;
  row["component_group"] = r.component_group;
  row["local_system"] = r.local_system;
  row["eigenvalue"] = r.shintani_printed;
  row["eigenvalue_exact"] =
      r.shintani ? charsheaf::cyclotomic_to_json(*r.shintani)
                 : ordered_json(nullptr);
  row["series"] = r.lusztig_series;
  row["central_character"] = r.central_character;
  row["uncertain"] = r.uncertain;
  return row;
}

int run_classify(const CliConfig& config, const ClassifyArgs& args) {
  GroupSpec spec = charsheaf::make_group_spec(
      charsheaf::series_from_string(args.series), args.isogeny, args.rank,
      args.p);
  std::vector<CuspidalSheafDatum> records = charsheaf::enumerate_cuspidal(spec);
  note(config, "classify: " + std::to_string(records.size()) + " record(s)");
  if (config.format == "table") {
    std::vector<std::vector<std::string>> rows;
    for (const CuspidalSheafDatum& r : records)
      rows.push_back({r.label, r.char_condition, r.support_semisimple,
                      r.support_unipotent, r.component_group, r.local_system,
                      r.shintani_printed, r.lusztig_series, r.central_character,
                      r.uncertain ? "yes" : "no"});
    print_table({"label", "condition", "centralizer", "unipotent_class",
                 "component_group", "local_system", "eigenvalue", "series",
                 "central_character", "uncertain"},
                rows);
    return 0;
  }
  ordered_json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = "classify";
  ordered_json group;
  group["series"] = charsheaf::series_name(spec.series);
  group["isogeny"] = charsheaf::isogeny_name(spec.isogeny);
  group["rank"] = spec.rank;
  group["p"] = spec.p;
  out["group"] = std::move(group);
  ordered_json list = ordered_json::array();
  for (const CuspidalSheafDatum& r : records) list.push_back(cuspidal_to_json(r));
  out["records"] = std::move(list);
  emit(out);
  return 0;
}

// ---------------------------------------------------------------------------
// fourier / mellin
// ---------------------------------------------------------------------------

struct FamilyArgs {
  std::string group;
  bool exceptional = false;
  int delta = 1;
  int x = 0;
  int y = 0;
};

int run_fourier(const CliConfig& config, const FamilyArgs& args) {
  FamilyDatum f(parse_group(args.group), args.exceptional, args.delta);
  TransformMatrix t = charsheaf::fourier_matrix(f);
  note(config,
       "fourier: " + std::to_string(t.index.size()) + " pair(s) in M(" +
           args.group + ")");
  if (config.format == "table") {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < t.index.size(); ++i) {
      std::vector<std::string> row{pair_label(t.index[i])};
      for (std::size_t j = 0; j < t.index.size(); ++j)
        row.push_back(t.entries.at(i, j).to_string());
      rows.push_back(std::move(row));
    }
    std::vector<std::string> header{"pair"};
    for (const MPair& p : t.index) header.push_back(pair_label(p));
    print_table(header, rows);
    return 0;
  }
  ordered_json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = "fourier";
  out["group"] = args.group;
  out["exceptional"] = args.exceptional;
  out["delta"] = args.delta;
  out["legend"] = legend_to_json(t.index);
  out["matrix"] = charsheaf::matrix_to_json(t.entries);
  emit(out);
  return 0;
}

int run_mellin(const CliConfig& config, const FamilyArgs& args) {
  FamilyDatum f(parse_group(args.group), args.exceptional, args.delta);
  std::vector<Cyclotomic> mu = charsheaf::mellin_vector(f, args.x, args.y);
  std::vector<MPair> legend = charsheaf::m_set(f.group);
  note(config, "mellin: " + std::to_string(mu.size()) + " coefficient(s)");
  if (config.format == "table") {
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < mu.size(); ++i)
      rows.push_back({pair_label(legend[i]), mu[i].to_string()});
    print_table({"pair", "coefficient"}, rows);
    return 0;
  }
  ordered_json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = "mellin";
  out["group"] = args.group;
  out["exceptional"] = args.exceptional;
  out["delta"] = args.delta;
  out["x"] = args.x;
  out["y"] = args.y;
  out["legend"] = legend_to_json(legend);
  ordered_json coeffs = ordered_json::array();
  for (const Cyclotomic& c : mu) coeffs.push_back(charsheaf::cyclotomic_to_json(c));
  out["coefficients"] = std::move(coeffs);
  emit(out);
  return 0;
}

// ---------------------------------------------------------------------------
// symbol
// ---------------------------------------------------------------------------

struct SymbolArgs {
  std::string type;
  long rank = 0;
};

SymbolType parse_symbol_type(const std::string& text) {
  if (text == "B") return SymbolType::B;
  if (text == "C") return SymbolType::C;
  if (text == "D") return SymbolType::D;
  throw std::invalid_argument("unknown symbol type: " + text);
}

int run_symbol(const CliConfig& config, const SymbolArgs& args) {
  SymbolType type = parse_symbol_type(args.type);
  std::optional<Symbol> s = charsheaf::cuspidal_symbol(type, args.rank);
  note(config, s ? "symbol: cuspidal symbol found"
                 : "symbol: no cuspidal symbol at this rank");
  if (config.format == "table") {
    std::cout << (s ? s->to_string() : std::string("none")) << "\n";
    return 0;
  }
  ordered_json out;
  out["schema_version"] = kSchemaVersion;
  out["command"] = "symbol";
  out["type"] = args.type;
  out["rank"] = args.rank;
  if (s) {
    ordered_json sym;
    sym["row_a"] = s->row_a;
    sym["row_b"] = s->row_b;
    sym["defect"] = charsheaf::defect(*s);
    sym["rank"] = charsheaf::rank(*s);
    sym["printed"] = s->to_string();
    out["symbol"] = std::move(sym);
  } else {
    out["symbol"] = nullptr;
  }
  emit(out);
  return 0;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "blocks";
  int seeds = 100;
};

int run_verify(const CliConfig& config, const VerifyArgs& args) {
  if (args.suite != "blocks")
    throw std::invalid_argument("unknown suite: " + args.suite);
  note(config, "verify: running " + std::to_string(args.seeds) +
                   " seed(s) starting at " + std::to_string(config.seed));
  BlockSuiteReport report = charsheaf::verify_block_suite(args.seeds, config.seed);
  std::vector<std::string> failed;
  for (const auto& [name, slot] : report.identities)
    if (slot[0] != slot[1]) failed.push_back(name);
  if (config.format == "table") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& [name, slot] : report.identities)
      rows.push_back({name, std::to_string(slot[0]), std::to_string(slot[1])});
    print_table({"identity", "passed", "run"}, rows);
    std::cout << (failed.empty() ? "all passed" : "FAILED") << "\n";
  } else {
    ordered_json out;
    out["schema_version"] = kSchemaVersion;
    out["command"] = "verify";
    out["suite"] = args.suite;
    out["seeds"] = args.seeds;
    out["first_seed"] = config.seed;
    out["models"] = report.models;
    out["instantiations"] = report.instantiations;
    ordered_json identities;
    for (const auto& [name, slot] : report.identities) {
      ordered_json counts;
      counts["passed"] = slot[0];
      counts["run"] = slot[1];
      identities[name] = std::move(counts);
    }
    out["identities"] = std::move(identities);
    out["all_passed"] = report.all_passed();
    emit(out);
  }
  if (!failed.empty()) {
    std::string joined;
    for (const std::string& name : failed) {
      if (!joined.empty()) joined += ", ";
      joined += name;
    }
    std::cerr << "verification failed: " << joined << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact data for character-sheaf computations: classification tables, "
      "family transforms, cuspidal symbols, and verification suites."};
  app.require_subcommand(1);

  CliConfig config;
  app.add_option("--format", config.format, "output format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();
  app.add_option("--seed", config.seed, "starting seed for randomized suites")
      ->capture_default_str();
  app.add_flag("-v,--verbose", config.verbosity,
               "print progress diagnostics on stderr");

  ClassifyArgs classify_args;
  CLI::App* classify =
      app.add_subcommand("classify", "enumerate cuspidal sheaf data");
  classify->add_option("--series", classify_args.series, "series letter")
      ->required();
  classify->add_option("--isogeny", classify_args.isogeny, "isogeny position")
      ->capture_default_str();
  classify->add_option("--rank", classify_args.rank, "Lie rank");
  classify->add_option("--p", classify_args.p, "field characteristic");

  FamilyArgs fourier_args;
  CLI::App* fourier =
      app.add_subcommand("fourier", "Fourier matrix of a family");
  fourier->add_option("--group", fourier_args.group, "finite family group")
      ->required();
  fourier->add_flag("--exceptional", fourier_args.exceptional,
                    "use the exceptional-family convention");
  fourier->add_option("--delta", fourier_args.delta, "sign delta")
      ->capture_default_str();

  FamilyArgs mellin_args;
  CLI::App* mellin =
      app.add_subcommand("mellin", "Mellin transform coefficients");
  mellin->add_option("--group", mellin_args.group, "finite family group")
      ->required();
  mellin->add_option("--x", mellin_args.x, "first element index")->required();
  mellin->add_option("--y", mellin_args.y, "second element index")->required();
  mellin->add_flag("--exceptional", mellin_args.exceptional,
                   "use the exceptional-family convention");
  mellin->add_option("--delta", mellin_args.delta, "sign delta")
      ->capture_default_str();

  SymbolArgs symbol_args;
  CLI::App* symbol = app.add_subcommand("symbol", "cuspidal symbol lookup");
  symbol->add_option("--type", symbol_args.type, "symbol type (B, C, or D)")
      ->required();
  symbol->add_option("--rank", symbol_args.rank, "group rank")->required();
  symbol->add_flag("--cuspidal", "select the cuspidal symbol")->required();

  VerifyArgs verify_args;
  CLI::App* verify =
      app.add_subcommand("verify", "run a randomized verification suite");
  verify->add_option("--suite", verify_args.suite, "suite name")
      ->capture_default_str();
  verify->add_option("--seeds", verify_args.seeds, "number of random models")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    return usage_error(e.what());
  }

  try {
    if (*classify) return run_classify(config, classify_args);
    if (*fourier) return run_fourier(config, fourier_args);
    if (*mellin) return run_mellin(config, mellin_args);
    if (*symbol) return run_symbol(config, symbol_args);
    if (*verify) return run_verify(config, verify_args);
  } catch (const std::invalid_argument& e) {
    return usage_error(e.what());
  } catch (const std::exception& e) {
    return usage_error(e.what());
  }
  return usage_error("no subcommand given");
}
