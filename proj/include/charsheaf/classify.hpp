#pragma once

// Inventory of cuspidal character sheaves on a quasi-simple group, keyed by
// series, isogeny type, rank, and the characteristic of the ground field.
// Classical series are enumerated by arithmetic rules on triangular and
// square decompositions of the rank; the five exceptional series are data
// tables embedded at build time from data/tables/*.json (overridable at
// runtime through CHARSHEAF_DATA_DIR). Exceptional rows carry a machine
// readable form of their label, enough to recompute the printed twisting
// eigenvalue from the finite family group; check_shintani performs that
// cross-check.

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "charsheaf/character.hpp"
#include "charsheaf/cyclotomic.hpp"
#include "charsheaf/embedded_tables.hpp"
#include "charsheaf/group.hpp"
#include "charsheaf/symbol.hpp"

namespace charsheaf {

// ---------------------------------------------------------------------------
// Group specifications
// ---------------------------------------------------------------------------

enum class Series { A, B, C, D, G2, F4, E6, E7, E8 };

// Canonical isogeny positions. The string form of make_group_spec accepts
// the aliases spin (-> sc), sp (-> sc), psp (-> ad), and so in series B
// (-> ad, since SO_{2n+1} is the adjoint group). Series D keeps so and
// half_spin as positions of their own.
enum class Isogeny { sc, ad, so, half_spin };

struct GroupSpec {
  Series series = Series::A;
  Isogeny isogeny = Isogeny::sc;
  long rank = 0;  // the n of SL_n in series A, the Lie rank otherwise
  long p = 0;     // characteristic of the ground field: 0 or a prime
};

inline const char* series_name(Series s) {
  switch (s) {
    case Series::A: return "A";
    case Series::B: return "B";
    case Series::C: return "C";
    case Series::D: return "D";
    case Series::G2: return "G2";
    case Series::F4: return "F4";
    case Series::E6: return "E6";
    case Series::E7: return "E7";
    case Series::E8: return "E8";
  }
  throw std::logic_error("series_name: unknown series");
}

inline Series series_from_string(std::string_view text) {
  if (text == "A") return Series::A;
  if (text == "B") return Series::B;
  if (text == "C") return Series::C;
  if (text == "D") return Series::D;
  if (text == "G2") return Series::G2;
  if (text == "F4") return Series::F4;
  if (text == "E6") return Series::E6;
  if (text == "E7") return Series::E7;
  if (text == "E8") return Series::E8;
  throw std::invalid_argument("unknown series: " + std::string(text));
}

inline const char* isogeny_name(Isogeny i) {
  switch (i) {
    case Isogeny::sc: return "sc";
    case Isogeny::ad: return "ad";
    case Isogeny::so: return "so";
    case Isogeny::half_spin: return "half_spin";
  }
  throw std::logic_error("isogeny_name: unknown isogeny");
}

namespace detail {

inline bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline long exceptional_rank(Series s) {
  switch (s) {
    case Series::G2: return 2;
    case Series::F4: return 4;
    case Series::E6: return 6;
    case Series::E7: return 7;
    case Series::E8: return 8;
    default: return -1;
  }
}

}  // namespace detail

// Checks admissibility of an already canonical spec: the isogeny position
// must exist for the series, the rank must lie in the validity range, and p
// must be 0 or a prime.
inline void validate_group_spec(const GroupSpec& spec) {
  if (spec.p != 0 && !detail::is_prime(spec.p))
    throw std::invalid_argument("characteristic must be 0 or a prime");
  auto require = [&](bool ok, const char* what) {
    if (!ok)
      throw std::invalid_argument(std::string("invalid group spec: ") + what);
  };
  switch (spec.series) {
    case Series::A:
      require(spec.rank >= 2, "series A requires rank >= 2");
      require(spec.isogeny == Isogeny::sc || spec.isogeny == Isogeny::ad,
              "series A admits isogenies sc and ad");
      break;
    case Series::B:
    case Series::C:
      require(spec.rank >= 2, "series B and C require rank >= 2");
      require(spec.isogeny == Isogeny::sc || spec.isogeny == Isogeny::ad,
              "series B and C admit isogenies sc and ad");
      break;
    case Series::D:
      require(spec.rank >= 4, "series D requires rank >= 4");
      if (spec.isogeny == Isogeny::half_spin)
        require(spec.rank % 2 == 0, "half_spin requires even rank");
      break;
    default: {
      long r = detail::exceptional_rank(spec.series);
      require(spec.rank == r, "exceptional series has a fixed rank");
      if (spec.series == Series::E6 || spec.series == Series::E7)
        require(spec.isogeny == Isogeny::sc || spec.isogeny == Isogeny::ad,
                "series E6 and E7 admit isogenies sc and ad");
      else
        require(spec.isogeny == Isogeny::ad,
                "series G2, F4, E8 have a single isogeny type");
      break;
    }
  }
}

// Builds a canonical spec from enum arguments. Series B normalizes so to ad;
// G2, F4, E8 accept sc or ad and store ad (the two coincide). A rank of 0
// for an exceptional series is replaced by the canonical rank.
inline GroupSpec make_group_spec(Series series, Isogeny isogeny, long rank,
                                 long p) {
  GroupSpec spec{series, isogeny, rank, p};
  if (series == Series::B && isogeny == Isogeny::so) spec.isogeny = Isogeny::ad;
  bool single_isogeny = series == Series::G2 || series == Series::F4 ||
                        series == Series::E8;
  if (single_isogeny && isogeny == Isogeny::sc) spec.isogeny = Isogeny::ad;
  if (detail::exceptional_rank(series) > 0 && rank == 0)
    spec.rank = detail::exceptional_rank(series);
  validate_group_spec(spec);
  return spec;
}

// Builds a canonical spec from an isogeny token, resolving the aliases
// spin, sp, psp, and the series-B reading of so.
inline GroupSpec make_group_spec(Series series, std::string_view isogeny,
                                 long rank, long p) {
  Isogeny iso;
  if (isogeny == "sc" || isogeny == "spin" || isogeny == "sp")
    iso = Isogeny::sc;
  else if (isogeny == "ad" || isogeny == "psp")
    iso = Isogeny::ad;
  else if (isogeny == "so")
    iso = Isogeny::so;
  else if (isogeny == "half_spin")
    iso = Isogeny::half_spin;
  else
    throw std::invalid_argument("unknown isogeny token: " +
                                std::string(isogeny));
  return make_group_spec(series, iso, rank, p);
}

// ---------------------------------------------------------------------------
// Triangular and square pair decompositions
// ---------------------------------------------------------------------------

enum class PairConstraint { none, same_parity, opposite_parity, both_even,
                            even_then_odd };

namespace detail {

inline bool pair_meets(long a, long b, PairConstraint c) {
  switch (c) {
    case PairConstraint::none: return true;
    case PairConstraint::same_parity: return a % 2 == b % 2;
    case PairConstraint::opposite_parity: return a % 2 != b % 2;
    case PairConstraint::both_even: return a % 2 == 0 && b % 2 == 0;
    case PairConstraint::even_then_odd: return a % 2 == 0 && b % 2 == 1;
  }
  throw std::logic_error("pair_meets: unknown constraint");
}

// Index d with d(d+1)/2 == n, or -1 when n is not triangular.
inline long triangular_index(long n) {
  if (n < 0) return -1;
  for (long d = 0; d * (d + 1) / 2 <= n; ++d)
    if (d * (d + 1) / 2 == n) return d;
  return -1;
}

// Index r with r * r == n, or -1 when n is not a square.
inline long square_index(long n) {
  if (n < 0) return -1;
  for (long r = 0; r * r <= n; ++r)
    if (r * r == n) return r;
  return -1;
}

inline std::vector<std::pair<long, long>> value_pairs(long total,
                                                      PairConstraint c,
                                                      bool ordered,
                                                      bool squares) {
  if (total < 0)
    throw std::invalid_argument("pair enumeration requires total >= 0");
  std::vector<std::pair<long, long>> out;
  for (long k = 0;; ++k) {
    long a = squares ? k * k : k * (k + 1) / 2;
    if (a > total) break;
    long b = total - a;
    if ((squares ? square_index(b) : triangular_index(b)) < 0) continue;
    if (!pair_meets(a, b, c)) continue;
    // even_then_odd orients the pair, so the ordered and unordered readings
    // coincide there.
    if (!ordered && c != PairConstraint::even_then_odd && a > b) continue;
    out.emplace_back(a, b);
  }
  return out;
}

}  // namespace detail

// All decompositions total = a + b into two triangular numbers meeting the
// constraint, in ascending order of a. Unordered output keeps a <= b.
inline std::vector<std::pair<long, long>> triangular_pairs(long total,
                                                           PairConstraint c,
                                                           bool ordered) {
  return detail::value_pairs(total, c, ordered, false);
}

// All decompositions total = a + b into two squares meeting the constraint,
// in ascending order of a. Unordered output keeps a <= b.
inline std::vector<std::pair<long, long>> square_pairs(long total,
                                                       PairConstraint c,
                                                       bool ordered) {
  return detail::value_pairs(total, c, ordered, true);
}

// ---------------------------------------------------------------------------
// Dual series data
// ---------------------------------------------------------------------------

// The five shapes of centralizer of a series element in the dual group that
// occur for classical supports. Inputs are the two indices (t, r) of the
// decomposition; each case has its own integrality constraints and throws
// logic_error when they fail, which flags a malformed case.
enum class DualCase { c_series, b_squares, b_triangular, d_squares,
                      d_triangular };

struct DualSeriesData {
  long a = 0;
  long b = 0;
  std::string centralizer;  // shape of C_{G*}(s), subscripts filled in
  std::string weyl_label;   // attached label group when the case names one
};

namespace detail {

inline long exact_div(long num, long den, const char* what) {
  if (num % den != 0 || num < 0)
    throw std::logic_error(std::string("dual_series_classical: ") + what +
                           " is not a non-negative integer");
  return num / den;
}

}  // namespace detail

inline DualSeriesData dual_series_classical(DualCase tag, long t, long r) {
  if (t < 0 || r < 0)
    throw std::invalid_argument("dual_series_classical: indices must be >= 0");
  DualSeriesData out;
  std::ostringstream os;
  switch (tag) {
    case DualCase::c_series: {
      if ((t + r) % 2 == 1) {
        out.a = detail::exact_div((t + r + 1) * (t + r + 1), 4, "A");
        out.b = detail::exact_div((t - r) * (t - r) - 1, 8, "B");
      } else {
        out.a = detail::exact_div((t - r) * (t - r), 4, "A");
        out.b = detail::exact_div((t + r + 2) * (t + r), 8, "B");
      }
      os << "Spin_" << 2 * out.a << " x_{Z/2} Spin_" << 4 * out.b + 1;
      out.centralizer = os.str();
      os.str("");
      os << "W(D_" << out.a << ") x W(B_" << 2 * out.b << ")";
      out.weyl_label = os.str();
      break;
    }
    case DualCase::b_squares: {
      out.a = detail::exact_div((r + t) * (r + t) - 1, 2, "first factor");
      out.b = detail::exact_div((r - t) * (r - t) - 1, 2, "second factor");
      os << "Sp_" << out.a << " x Sp_" << out.b;
      out.centralizer = os.str();
      break;
    }
    case DualCase::b_triangular: {
      if ((t + r) % 2 == 1) {
        out.a = detail::exact_div((r + t + 3) * (r + t - 1), 16, "A");
        out.b = detail::exact_div((r - t - 1) * (r - t + 1), 8, "B");
      } else {
        out.a = detail::exact_div((r - t - 2) * (r - t + 2), 16, "A");
        out.b = detail::exact_div((r + t) * (r + t + 2), 8, "B");
      }
      os << "((Sp_" << 2 * out.a << " x GL_" << out.b << " x Sp_" << 2 * out.a
         << ")/(Z/2)) x| Z/2";
      out.centralizer = os.str();
      break;
    }
    case DualCase::d_squares: {
      out.a = t * t;
      out.b = r * r;
      os << "Spin_" << 2 * out.a << " x Spin_" << 2 * out.b;
      out.centralizer = os.str();
      os.str("");
      os << "W(D_" << out.a << ") x W(D_" << out.b << ")";
      out.weyl_label = os.str();
      break;
    }
    case DualCase::d_triangular: {
      if ((r - t) % 4 != 0) {
        out.a = detail::exact_div((r + t + 1) * (r + t + 1), 8, "SO part");
        out.b = detail::exact_div((r - t) * (r - t) - 1, 8, "GL part");
      } else {
        out.a = detail::exact_div((r - t) * (r - t), 8, "SO part");
        out.b = detail::exact_div((r + t) * (r + t + 2), 8, "GL part");
      }
      os << "SO_" << out.a << " x GL_" << out.b << " x SO_" << out.a;
      out.centralizer = os.str();
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cuspidal sheaf data
// ---------------------------------------------------------------------------

// A pinned value of the label character: the character takes the root of
// unity exp(2 pi i power / order) at the element named by the token.
struct ChiPin {
  std::string at;
  long order = 1;
  long power = 0;

  friend bool operator==(const ChiPin&, const ChiPin&) = default;
};

// Machine readable form of a family label (x, chi). Tokens for x: "1",
// "g2", "g2p", "g3", "g4", "g5", "g6" in a symmetric family group; "1",
// "-1" in Z2; "w", "w^2", "-1", "-w", "-w^2" in Z3xZ2; "w", "w*g3", "s",
// "g3" in Z2xS3. The character is pinned either as the Coxeter sign of the
// centralizer (kind "coxeter_sign") or by its values at named elements
// (kind "linear"); pin tokens additionally allow "x" for x itself and
// "x3" / "x2" for the 3-cycle and 2-cycle parts of x in a symmetric group,
// where "x2" falls back to the transposition of the two smallest fixed
// points when x has no 2-cycle.
struct LabelMachine {
  std::string family_group;  // empty when the label has no family form
  std::string x;
  std::string chi_kind;  // "coxeter_sign", "linear", or empty
  std::vector<ChiPin> chi_values;

  friend bool operator==(const LabelMachine&, const LabelMachine&) = default;
};

struct CuspidalSheafDatum {
  std::string label;
  std::string char_condition;  // predicate on p, as printed in the source row
  std::string support_semisimple;
  std::optional<std::pair<long, long>> support_pair;  // (N1, N2) when split
  std::string support_unipotent;
  std::string component_group;
  std::string local_system;
  std::optional<Cyclotomic> shintani;  // twisting eigenvalue when known
  std::string shintani_printed;        // printed form, empty when unknown
  std::string lusztig_series;
  std::string central_character;
  bool uncertain = false;  // true on rows whose multiplicity is conjectural
  LabelMachine machine;

  friend bool operator==(const CuspidalSheafDatum&,
                         const CuspidalSheafDatum&) = default;
};

// ---------------------------------------------------------------------------
// Exceptional tables
// ---------------------------------------------------------------------------

struct TableRow {
  std::string label;
  std::string condition;
  std::string centralizer;
  std::string unipotent_class;
  std::string component_group;
  std::string local_system;
  std::string eigenvalue;
  std::string series;
  std::string central_character;
  bool uncertain = false;
  LabelMachine machine;
  long eigenvalue_order = 1;
  long eigenvalue_power = 0;
};

struct ExceptionalTable {
  long schema_version = 1;
  std::string name;
  std::vector<TableRow> rows;
};

namespace detail {

inline LabelMachine parse_machine(const nlohmann::json& j) {
  LabelMachine m;
  m.family_group = j.at("family_group").get<std::string>();
  m.x = j.at("x").get<std::string>();
  const auto& chi = j.at("chi");
  m.chi_kind = chi.at("kind").get<std::string>();
  for (const auto& pin : chi.at("values")) {
    ChiPin p;
    p.at = pin.at("at").get<std::string>();
    p.order = pin.at("order").get<long>();
    p.power = pin.at("power").get<long>();
    m.chi_values.push_back(std::move(p));
  }
  return m;
}

inline nlohmann::ordered_json machine_to_json(const LabelMachine& m,
                                              long eig_order,
                                              long eig_power) {
  nlohmann::ordered_json chi;
  chi["kind"] = m.chi_kind;
  auto& values = chi["values"] = nlohmann::ordered_json::array();
  for (const auto& pin : m.chi_values) {
    nlohmann::ordered_json v;
    v["at"] = pin.at;
    v["order"] = pin.order;
    v["power"] = pin.power;
    values.push_back(std::move(v));
  }
  nlohmann::ordered_json out;
  out["family_group"] = m.family_group;
  out["x"] = m.x;
  out["chi"] = std::move(chi);
  out["eigenvalue"] = {{"order", eig_order}, {"power", eig_power}};
  return out;
}

}  // namespace detail

inline ExceptionalTable parse_table(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed table JSON: ") +
                                e.what());
  }
  ExceptionalTable table;
  try {
    table.schema_version = j.at("schema_version").get<long>();
    if (table.schema_version != 1)
      throw std::invalid_argument("unsupported table schema version");
    table.name = j.at("table").get<std::string>();
    for (const auto& row : j.at("rows")) {
      TableRow r;
      r.label = row.at("label").get<std::string>();
      r.condition = row.at("condition").get<std::string>();
      r.centralizer = row.at("centralizer").get<std::string>();
      r.unipotent_class = row.at("unipotent_class").get<std::string>();
      r.component_group = row.at("component_group").get<std::string>();
      r.local_system = row.at("local_system").get<std::string>();
      r.eigenvalue = row.at("eigenvalue").get<std::string>();
      r.series = row.at("series").get<std::string>();
      r.central_character = row.at("central_character").get<std::string>();
      r.uncertain = row.at("uncertain").get<bool>();
      r.machine = detail::parse_machine(row.at("machine"));
      const auto& eig = row.at("machine").at("eigenvalue");
      r.eigenvalue_order = eig.at("order").get<long>();
      r.eigenvalue_power = eig.at("power").get<long>();
      if (r.eigenvalue_order < 1)
        throw std::invalid_argument("eigenvalue order must be positive");
      table.rows.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed table JSON: ") +
                                e.what());
  }
  return table;
}

inline std::string serialize_table(const ExceptionalTable& table) {
  nlohmann::ordered_json j;
  j["schema_version"] = table.schema_version;
  j["table"] = table.name;
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : table.rows) {
    nlohmann::ordered_json row;
    row["label"] = r.label;
    row["condition"] = r.condition;
    row["centralizer"] = r.centralizer;
    row["unipotent_class"] = r.unipotent_class;
    row["component_group"] = r.component_group;
    row["local_system"] = r.local_system;
    row["eigenvalue"] = r.eigenvalue;
    row["series"] = r.series;
    row["central_character"] = r.central_character;
    row["uncertain"] = r.uncertain;
    row["machine"] = detail::machine_to_json(r.machine, r.eigenvalue_order,
                                             r.eigenvalue_power);
    rows.push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

// Raw bytes of the named table: the file under CHARSHEAF_DATA_DIR when that
// variable is set, the embedded copy otherwise.
inline std::string table_text(const std::string& name) {
  if (const char* dir = std::getenv("CHARSHEAF_DATA_DIR")) {
    std::string path = std::string(dir) + "/" + name + ".json";
    std::ifstream in(path, std::ios::binary);
    if (!in)
      throw std::runtime_error("cannot read classification table: " + path);
    std::ostringstream contents;
    contents << in.rdbuf();
    return contents.str();
  }
  const auto& tables = detail::embedded_tables();
  auto it = tables.find(name);
  if (it == tables.end())
    throw std::invalid_argument("unknown classification table: " + name);
  return std::string(it->second);
}

// Parsed table, memoized by name. The data source is sampled on first use
// of each name, so CHARSHEAF_DATA_DIR must not change within a process.
inline const ExceptionalTable& exceptional_table(const std::string& name) {
  static std::mutex mutex;
  static std::map<std::string, ExceptionalTable> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(name);
  if (it == cache.end())
    it = cache.emplace(name, parse_table(table_text(name))).first;
  return it->second;
}

// Evaluates a table row condition at characteristic p. Supported forms are
// "any", "p = K", and "p != K1,K2,...". Characteristic 0 plays the role of
// a very large prime: it satisfies every "!=" and no "=".
inline bool condition_allows(const std::string& condition, long p) {
  if (condition == "any") return true;
  std::string_view rest = condition;
  auto strip = [&](std::string_view prefix) {
    if (rest.substr(0, prefix.size()) != prefix) return false;
    rest.remove_prefix(prefix.size());
    return true;
  };
  bool negated;
  if (strip("p != "))
    negated = true;
  else if (strip("p = "))
    negated = false;
  else
    throw std::invalid_argument("malformed condition: " + condition);
  bool found = false;
  while (!rest.empty()) {
    std::size_t next = rest.find(',');
    std::string_view item = rest.substr(0, next);
    long value = 0;
    if (item.empty()) throw std::invalid_argument("malformed condition: " +
                                                  condition);
    for (char ch : item) {
      if (!std::isdigit(static_cast<unsigned char>(ch)))
        throw std::invalid_argument("malformed condition: " + condition);
      value = value * 10 + (ch - '0');
    }
    if (p == value) found = true;
    if (next == std::string_view::npos) break;
    rest.remove_prefix(next + 1);
  }
  return negated ? !found : found;
}

inline CuspidalSheafDatum datum_from_table_row(const TableRow& r) {
  CuspidalSheafDatum d;
  d.label = r.label;
  d.char_condition = r.condition;
  d.support_semisimple = r.centralizer;
  d.support_unipotent = r.unipotent_class;
  d.component_group = r.component_group;
  d.local_system = r.local_system;
  d.shintani = Cyclotomic::root_of_unity(r.eigenvalue_order,
                                         r.eigenvalue_power);
  d.shintani_printed = r.eigenvalue;
  d.lusztig_series = r.series;
  d.central_character = r.central_character;
  d.uncertain = r.uncertain;
  d.machine = r.machine;
  return d;
}

// ---------------------------------------------------------------------------
// Classical enumeration
// ---------------------------------------------------------------------------

namespace detail {

// "(first, first + step, ..., first + (count-1) step)"; "()" when count <= 0.
inline std::string arithmetic_partition(long first, long step, long count) {
  std::ostringstream os;
  os << "(";
  for (long i = 0; i < count; ++i) {
    if (i) os << ",";
    os << first + i * step;
  }
  os << ")";
  return os.str();
}

inline std::string pair_string(long a, long b) {
  std::ostringstream os;
  os << "(" << a << "," << b << ")";
  return os.str();
}

// "(k/m)" multiplicity tag appended to labels when one support carries
// several data.
inline std::string slot_tag(int k, int m) {
  std::ostringstream os;
  os << " (" << k << "/" << m << ")";
  return os.str();
}

// Cuspidal symbol string of W(B_n) or W(D_n); "1" for the empty group.
inline std::string weyl_symbol_string(SymbolType type, long n) {
  if (n == 0) return "1";
  auto symbol = cuspidal_symbol(type, n);
  if (!symbol)
    throw std::logic_error("weyl_symbol_string: rank has no cuspidal symbol");
  return symbol->to_string();
}

// Label group string for the centralizer shapes attached to series C
// supports: the cuspidal symbols of W(D_A) x W(B_{2B}).
inline std::string c_series_label(const DualSeriesData& dual) {
  return weyl_symbol_string(SymbolType::D, dual.a) + " x " +
         weyl_symbol_string(SymbolType::B, 2 * dual.b);
}

// Shared by the unipotent-support rows of series B, C, D in characteristic
// 2: the label is the cuspidal symbol together with its (x, chi) pair in
// the family (Z/2)^d.
inline std::string char2_label(SymbolType type, long n, int d) {
  CuspidalLabel pair = cuspidal_label(d);
  std::ostringstream os;
  os << weyl_symbol_string(type, n) << " = ((";
  for (int i = 0; i < d; ++i) {
    if (i) os << ",";
    os << pair.x[i];
  }
  os << "),(";
  for (int i = 0; i < d; ++i) {
    if (i) os << ",";
    os << pair.chi[i];
  }
  os << ")) in M((Z/2)^" << d << ")";
  return os.str();
}

inline std::vector<CuspidalSheafDatum> cuspidal_type_a(const GroupSpec& s) {
  std::vector<CuspidalSheafDatum> out;
  if (s.isogeny != Isogeny::sc) return out;  // labels are injective on Z(G)
  long n = s.rank;
  if (s.p != 0 && n % s.p == 0) return out;
  for (long a = 0; a < n; ++a) {
    for (long c = 1; c < n; ++c) {
      if (std::gcd(c, n) != 1) continue;
      CuspidalSheafDatum d;
      std::ostringstream label;
      label << "(z^" << a << ", chi^" << c << ")";
      d.label = label.str();
      d.char_condition = "p does not divide n";
      std::ostringstream ss;
      ss << "x_s = z^" << a << " (central)";
      d.support_semisimple = ss.str();
      d.support_unipotent =
          "regular, Jordan type " + arithmetic_partition(n, 0, 1);
      std::ostringstream comp;
      comp << "Z(G) = Z/" << n;
      d.component_group = comp.str();
      std::ostringstream sys;
      sys << "chi^" << c << " on A_G(x) = Z(G)";
      d.local_system = sys.str();
      d.lusztig_series = "regular semisimple shape; Omega = Z/" +
                         std::to_string(n);
      std::ostringstream cent;
      cent << "chi^" << c << " (injective)";
      d.central_character = cent.str();
      out.push_back(std::move(d));
    }
  }
  // n = 1 would leave no injective character; validate_group_spec already
  // excludes it through the rank bound.
  return out;
}

// Series B and C in characteristic 2 coincide: a single datum when the rank
// is d(d+1), supported on the unipotent class with Jordan type
// (4, 8, ..., 4d).
inline std::vector<CuspidalSheafDatum> cuspidal_bc_char2(const GroupSpec& s) {
  std::vector<CuspidalSheafDatum> out;
  long n = s.rank;
  long d = -1;
  for (long k = 1; k * (k + 1) <= n; ++k)
    if (k * (k + 1) == n) d = k;
  if (d < 0) return out;
  CuspidalSheafDatum datum;
  datum.label = char2_label(SymbolType::B, n, static_cast<int>(d));
  datum.char_condition = "p = 2";
  datum.support_semisimple = "x_s = 1";
  datum.support_unipotent = arithmetic_partition(4, 4, d);
  std::ostringstream comp;
  comp << "(Z/2)^" << d;
  datum.component_group = comp.str();
  std::string symbol = d % 2 == 1
      ? "(" + arithmetic_partition(0, 4, d + 1) + ",())"
      : "(()," + arithmetic_partition(2, 4, d) + ")";
  datum.local_system = "alternating character vector; symbol " + symbol;
  datum.lusztig_series = "unipotent";
  datum.central_character = "trivial";
  out.push_back(std::move(datum));
  return out;
}

// Jordan type of the cuspidal unipotent support of Sp_{2N}, N = d(d+1)/2.
inline std::string sp_jordan(long n_value) {
  long d = triangular_index(n_value);
  if (d < 0) throw std::logic_error("sp_jordan: not a triangular number");
  return arithmetic_partition(2, 2, d);
}

inline std::vector<CuspidalSheafDatum> cuspidal_c_ad(const GroupSpec& s) {
  std::vector<CuspidalSheafDatum> out;
  for (auto [n1, n2] :
       triangular_pairs(s.rank, PairConstraint::same_parity, false)) {
    long t = triangular_index(n1);
    long r = triangular_index(n2);
    DualSeriesData dual = dual_series_classical(DualCase::c_series, t, r);
    int copies = n1 == n2 ? 2 : 1;
    for (int k = 1; k <= copies; ++k) {
      CuspidalSheafDatum d;
      d.label = c_series_label(dual);
      if (copies > 1) d.label += slot_tag(k, copies);
      d.char_condition = "p != 2";
      std::ostringstream ss;
      if (n1 == n2)
        ss << "C_G(x_s) = (Sp_" << 2 * n1 << " x_{Z/2} Sp_" << 2 * n2
           << ") x| Z/2";
      else
        ss << "C_G(x_s) = Sp_" << 2 * n1 << " x_{Z/2} Sp_" << 2 * n2;
      d.support_semisimple = ss.str();
      d.support_pair = {n1, n2};
      d.support_unipotent = sp_jordan(n1) + " x " + sp_jordan(n2);
      d.component_group = n1 == n2 ? "Z/2" : "1";
      d.local_system = "cuspidal pair on each factor";
      if (copies > 1)
        d.local_system += k == 1 ? "; A_G(x_s) character trivial"
                                 : "; A_G(x_s) character nontrivial";
      d.lusztig_series = "C_{G*}(s) = " + dual.centralizer +
                         (n1 == n2 ? " (two central elements s)" : "");
      d.central_character = "trivial";
      out.push_back(std::move(d));
    }
  }
  return out;
}

inline std::vector<CuspidalSheafDatum> cuspidal_c_sc(const GroupSpec& s) {
  std::vector<CuspidalSheafDatum> out;
  for (auto [n1, n2] : triangular_pairs(s.rank, PairConstraint::none, true)) {
    long t = triangular_index(n1);
    long r = triangular_index(n2);
    DualSeriesData dual = dual_series_classical(DualCase::c_series, t, r);
    CuspidalSheafDatum d;
    d.label = c_series_label(dual);
    if (n1 < n2)
      d.label += "; Omega part: x_s";
    else if (n1 > n2)
      d.label += "; Omega part: x_s z";
    d.char_condition = "p != 2";
    std::ostringstream ss;
    ss << "C_G(x_s) = Sp_" << 2 * n1 << " x Sp_" << 2 * n2;
    d.support_semisimple = ss.str();
    d.support_pair = {n1, n2};
    d.support_unipotent = sp_jordan(n1) + " x " + sp_jordan(n2);
    d.component_group = "1";
    d.local_system = "cuspidal pair on each factor";
    d.lusztig_series = "C_{G*}(s) = " + dual.centralizer +
                       (n1 == n2 ? "; Omega = 1" : "; Omega = Z/2");
    d.central_character = s.rank % 2 == 0 ? "trivial" : "nontrivial";
    out.push_back(std::move(d));
  }
  return out;
}

inline std::vector<CuspidalSheafDatum> cuspidal_b_ad(const GroupSpec& s) {
  std::vector<CuspidalSheafDatum> out;
  for (auto [n1, n2] :
       square_pairs(2 * s.rank + 1, PairConstraint::even_then_odd, false)) {
    long rr = square_index(n1);
    long tt = square_index(n2);
    DualSeriesData dual = dual_series_classical(DualCase::b_squares, tt, rr);
    int copies = n1 == 0 ? 1 : 2;
    for (int k = 1; k <= copies; ++k) {
      CuspidalSheafDatum d;
      d.label = "square pair " + pair_string(n1, n2);
      if (copies > 1) d.label += slot_tag(k, copies);
      d.char_condition = "p != 2";
      d.support_pair = {n1, n2};
      if (n1 == 0) {
        d.support_semisimple = "x_s = 1";
        d.support_unipotent = arithmetic_partition(1, 2, tt);
        std::ostringstream comp;
        comp << "(Z/2)^" << tt - 1;
        d.component_group = comp.str();
        d.local_system = "alternating character vector";
      } else {
        std::ostringstream ss;
        ss << "C_G(x_s) = O_" << n1 << " x SO_" << n2;
        d.support_semisimple = ss.str();
        d.support_unipotent = arithmetic_partition(1, 2, rr) + " x " +
                              arithmetic_partition(1, 2, tt);
        d.component_group = "Z/2";
        d.local_system = k == 1 ? "cuspidal pair; A_G(x_s) character trivial"
                                : "cuspidal pair; A_G(x_s) character "
                                  "nontrivial";
      }
      d.lusztig_series = "C_{G*}(s) = " + dual.centralizer;
      d.central_character = "trivial";
      out.push_back(std::move(d));
    }
  }
  return out;
}

inline std::vector<CuspidalSheafDatum> cuspidal_b_sc(const GroupSpec& s) {
  std::vector<CuspidalSheafDatum> out;
  // Data with trivial central character mirror the adjoint group, except
  // that a unipotent support splits into the class itself and its translate
  // by the nontrivial central element, while a non-central semisimple part
  // folds the two adjoint systems into one (the preimages of x_s are
  // conjugate).
  for (auto [n1, n2] :
       square_pairs(2 * s.rank + 1, PairConstraint::even_then_odd, false)) {
    long rr = square_index(n1);
    long tt = square_index(n2);
    DualSeriesData dual = dual_series_classical(DualCase::b_squares, tt, rr);
    int copies = n1 == 0 ? 2 : 1;
    for (int k = 1; k <= copies; ++k) {
      CuspidalSheafDatum d;
      d.label = "square pair " + pair_string(n1, n2);
      if (copies > 1)
        d.label += k == 1 ? "; x_s = 1" : "; x_s = z";
      d.char_condition = "p != 2";
      d.support_pair = {n1, n2};
      if (n1 == 0) {
        d.support_semisimple = k == 1 ? "x_s = 1" : "x_s = z";
        d.support_unipotent = arithmetic_partition(1, 2, tt);
        std::ostringstream comp;
        comp << "(Z/2)^" << tt - 1;
        d.component_group = comp.str();
        d.local_system = "alternating character vector";
      } else {
        std::ostringstream ss;
        ss << "C_G(x_s) = Spin_" << n1 << " x_{Z/2} Spin_" << n2
           << " (x_s and x_s z conjugate)";
        d.support_semisimple = ss.str();
        d.support_unipotent = arithmetic_partition(1, 2, rr) + " x " +
                              arithmetic_partition(1, 2, tt);
        d.component_group = "Z/2";
        d.local_system = "cuspidal pair";
      }
      d.lusztig_series = "C_{G*}(s) = " + dual.centralizer;
      d.central_character = "trivial";
      out.push_back(std::move(d));
    }
  }
  // Data with nontrivial central character: 2n+1 = N1 + N2 with N1 an even
  // and N2 an odd triangular number. The printed congruences on the indices
  // are kept as filters; arithmetic shows they always hold, so the filter
  // only guards against transcription drift.
  for (auto [n1, n2] :
       triangular_pairs(2 * s.rank + 1, PairConstraint::even_then_odd,
                        false)) {
    long i1 = triangular_index(n1);
    long i2 = triangular_index(n2);
    long t, r;
    if (i1 % 2 != i2 % 2) {
      t = i1 % 2 == 0 ? i1 : i2;
      r = i1 % 2 == 0 ? i2 : i1;
      if (((r - t - 1) % 4 + 4) % 4 != 0) continue;
    } else {
      r = std::max(i1, i2);
      t = std::min(i1, i2);
      if (((r - t - 2) % 4 + 4) % 4 != 0) continue;
    }
    DualSeriesData dual =
        dual_series_classical(DualCase::b_triangular, t, r);
    for (int k = 1; k <= 2; ++k) {
      CuspidalSheafDatum d;
      d.label = "triangular pair " + pair_string(n1, n2) + slot_tag(k, 2);
      d.char_condition = "p != 2";
      d.support_pair = {n1, n2};
      if (n1 == 0) {
        d.support_semisimple = "x_s = 1";
        long dd = (i2 + 1) / 2;  // N2 = dd(2 dd -+ 1) picks the Jordan type
        d.support_unipotent = 2 * dd * dd - dd == n2
                                  ? arithmetic_partition(1, 4, dd)
                                  : arithmetic_partition(3, 4, dd);
        std::ostringstream comp;
        comp << "(Z/2)^" << dd;
        d.component_group = comp.str();
        d.local_system = "one of two characters restricting nontrivially "
                         "to the centre";
      } else if (n2 == 1) {
        std::ostringstream ss;
        ss << "C_G(x_s) = Spin_" << n1;
        d.support_semisimple = ss.str();
        d.support_unipotent = arithmetic_partition(1, 2, i1) + " x (1)";
        d.component_group = "Z/2";
        d.local_system = k == 1 ? "central character of Spin factor (1 of 2)"
                                : "central character of Spin factor (2 of 2)";
      } else {
        std::ostringstream ss;
        ss << "C_G(x_s) = Spin_" << n1 << " x_{Z/2} Spin_" << n2;
        d.support_semisimple = ss.str();
        d.support_unipotent = arithmetic_partition(1, 2, i1) + " x " +
                              arithmetic_partition(1, 2, i2);
        d.component_group = "Z/2";
        d.local_system = k == 1 ? "central character of Spin factor (1 of 2)"
                                : "central character of Spin factor (2 of 2)";
      }
      d.lusztig_series = "C_{G*}(s) = " + dual.centralizer;
      d.central_character = "nontrivial";
      out.push_back(std::move(d));
    }
  }
  return out;
}

inline std::vector<CuspidalSheafDatum> cuspidal_d_char2(const GroupSpec& s) {
  std::vector<CuspidalSheafDatum> out;
  long d = square_index(s.rank);
  if (d < 2 || d % 2 != 0) return out;
  CuspidalSheafDatum datum;
  datum.label = char2_label(SymbolType::D, s.rank, static_cast<int>(d));
  datum.char_condition = "p = 2";
  datum.support_semisimple = "x_s = 1";
  datum.support_unipotent = arithmetic_partition(2, 4, d);
  std::ostringstream comp;
  comp << "(Z/2)^" << d - 1;
  datum.component_group = comp.str();
  datum.local_system = "alternating character vector; symbol (" +
                       arithmetic_partition(0, 4, d + 1) + ",())";
  datum.lusztig_series = "unipotent";
  datum.central_character = "trivial";
  out.push_back(std::move(datum));
  return out;
}

// Jordan type of the unipotent support attached to an even square (the
// (1, 3, ..., 2d-1) shape) inside an orthogonal group of that dimension.
inline std::string so_square_jordan(long n_value) {
  long d = square_index(n_value);
  if (d < 0) throw std::logic_error("so_square_jordan: not a square");
  return arithmetic_partition(1, 2, d);
}

// Jordan type of the unipotent support attached to an even triangular
// number 2n = d(d+1)/2 in type D.
inline std::string so_triangular_jordan(long n_value) {
  long d = triangular_index(n_value);
  if (d < 0) throw std::logic_error("so_triangular_jordan: not triangular");
  return d % 2 == 1 ? arithmetic_partition(1, 4, (d + 1) / 2)
                    : arithmetic_partition(3, 4, d / 2);
}

inline std::vector<CuspidalSheafDatum> cuspidal_d_ad(const GroupSpec& s) {
  std::vector<CuspidalSheafDatum> out;
  if (s.rank % 4 != 0) return out;
  for (auto [n1, n2] :
       square_pairs(2 * s.rank, PairConstraint::both_even, false)) {
    long r1 = square_index(n1);
    long r2 = square_index(n2);
    long a = (r2 + r1) / 2;
    long b = (r2 - r1) / 2;
    DualSeriesData dual = dual_series_classical(DualCase::d_squares, a, b);
    int copies = n1 == 0 ? 1 : (n1 == n2 ? 4 : 2);
    for (int k = 1; k <= copies; ++k) {
      CuspidalSheafDatum d;
      d.label = weyl_symbol_string(SymbolType::D, a * a) + " x " +
                weyl_symbol_string(SymbolType::D, b * b);
      if (copies > 1) d.label += slot_tag(k, copies);
      d.char_condition = "p != 2";
      d.support_pair = {n1, n2};
      if (n1 == 0) {
        d.support_semisimple = "x_s = 1";
        d.support_unipotent = so_square_jordan(n2);
        std::ostringstream comp;
        comp << "A_SO(x) = (Z/2)^" << r2 - 1;
        d.component_group = comp.str();
        d.local_system = "alternating character vector";
      } else {
        std::ostringstream ss;
        ss << "C_G(x_s)^0 = SO_" << n1 << " x_{Z/2} SO_" << n2;
        d.support_semisimple = ss.str();
        d.support_unipotent = so_square_jordan(n1) + " x " +
                              so_square_jordan(n2);
        d.component_group = n1 == n2 ? "Z/2 x Z/2" : "Z/2";
        d.local_system = "cuspidal pair; system " + std::to_string(k) +
                         " of " + std::to_string(copies);
      }
      d.lusztig_series = "C_{G*}(s) affords " + dual.centralizer +
                         " (one class s per system)";
      d.central_character = "trivial";
      out.push_back(std::move(d));
    }
  }
  return out;
}

inline std::vector<CuspidalSheafDatum> cuspidal_d_so(const GroupSpec& s) {
  std::vector<CuspidalSheafDatum> out;
  if (s.rank % 2 != 0) return out;  // 2n is a sum of two even squares
  for (auto [n1, n2] :
       square_pairs(2 * s.rank, PairConstraint::both_even, true)) {
    long r1 = square_index(n1);
    long r2 = square_index(n2);
    long a = (r1 + r2) / 2;
    long b = (r1 - r2) / 2;  // the sign of b records the ordering
    std::ostringstream dual;
    dual << "SO_" << 2 * a * a << " x SO_" << 2 * b * b;
    int copies = (n1 == 0 || n2 == 0) ? 1 : 2;
    for (int k = 1; k <= copies; ++k) {
      CuspidalSheafDatum d;
      d.label = "square pair " + pair_string(n1, n2);
      if (copies > 1) d.label += slot_tag(k, copies);
      d.char_condition = "p != 2";
      d.support_pair = {n1, n2};
      if (n1 == 0 || n2 == 0) {
        d.support_semisimple = n1 == 0 ? "x_s = 1" : "x_s = z";
        d.support_unipotent = so_square_jordan(n1 == 0 ? n2 : n1);
        std::ostringstream comp;
        comp << "(Z/2)^" << (n1 == 0 ? r2 : r1) - 1;
        d.component_group = comp.str();
        d.local_system = "alternating character vector";
      } else {
        std::ostringstream ss;
        ss << "C_G(x_s)^0 = SO_" << n1 << " x SO_" << n2;
        d.support_semisimple = ss.str();
        d.support_unipotent = so_square_jordan(n1) + " x " +
                              so_square_jordan(n2);
        d.component_group = "Z/2";
        d.local_system = k == 1 ? "cuspidal pair; A_G(x_s) character trivial"
                                : "cuspidal pair; A_G(x_s) character "
                                  "nontrivial";
      }
      std::ostringstream series;
      series << "C_{G*}(s) = " << dual.str() << " (b = " << b << ")";
      d.lusztig_series = series.str();
      d.central_character = s.rank % 4 == 0 ? "trivial" : "nontrivial";
      out.push_back(std::move(d));
    }
  }
  return out;
}

inline std::vector<CuspidalSheafDatum> cuspidal_d_half_spin(
    const GroupSpec& s) {
  std::vector<CuspidalSheafDatum> out;
  // Data with nontrivial central character, present from rank 6 on: 2n is a
  // sum of two even triangular numbers.
  if (s.rank >= 6) {
    for (auto [n1, n2] :
         triangular_pairs(2 * s.rank, PairConstraint::both_even, false)) {
      long t = triangular_index(n1);
      long r = triangular_index(n2);
      DualSeriesData dual =
          dual_series_classical(DualCase::d_triangular, t, r);
      int copies = n1 == n2 ? 4 : 2;
      for (int k = 1; k <= copies; ++k) {
        CuspidalSheafDatum d;
        d.label = "triangular pair " + pair_string(n1, n2) +
                  slot_tag(k, copies);
        d.char_condition = "p != 2";
        d.support_pair = {n1, n2};
        if (n1 == 0) {
          long dd = triangular_index(n2);
          d.support_semisimple = "x_s central";
          d.support_unipotent = so_triangular_jordan(n2);
          std::ostringstream comp;
          comp << "nonsplit central extension of (Z/2)^" << (dd - 1) / 2
               << " by Z/2";
          d.component_group = comp.str();
          std::ostringstream sys;
          sys << "character of degree 2^" << (dd - 1) / 4;
          d.local_system = sys.str();
        } else {
          std::ostringstream ss;
          ss << "C_G(x_s)^0 isogenous to SO_" << n1 << " x SO_" << n2;
          d.support_semisimple = ss.str();
          d.support_unipotent = so_triangular_jordan(n1) + " x " +
                                so_triangular_jordan(n2);
          d.component_group = "";
          d.local_system = "cuspidal pair; system " + std::to_string(k) +
                           " of " + std::to_string(copies);
        }
        d.lusztig_series = "C_{G*}(s)^0 = " + dual.centralizer +
                           "; A_{G*}(s) = Z/2";
        d.central_character = "nontrivial";
        out.push_back(std::move(d));
      }
    }
  }
  // Data with trivial central character exist when 4 divides the rank and
  // come from the adjoint group, with smaller multiplicities: one system
  // for distinct squares, two for an equal pair.
  if (s.rank % 4 == 0) {
    for (auto [n1, n2] :
         square_pairs(2 * s.rank, PairConstraint::both_even, false)) {
      long r1 = square_index(n1);
      long r2 = square_index(n2);
      long a = (r2 + r1) / 2;
      long b = (r2 - r1) / 2;
      int copies = n1 == n2 ? 2 : 1;
      for (int k = 1; k <= copies; ++k) {
        CuspidalSheafDatum d;
        d.label = "square pair " + pair_string(n1, n2);
        if (copies > 1) d.label += slot_tag(k, copies);
        d.char_condition = "p != 2";
        d.support_pair = {n1, n2};
        if (n1 == 0) {
          d.support_semisimple = "x_s = 1";
          d.support_unipotent = so_square_jordan(n2);
          std::ostringstream comp;
          comp << "(Z/2)^" << r2 - 1;
          d.component_group = comp.str();
          d.local_system = "alternating character vector";
        } else {
          std::ostringstream ss;
          ss << "C_G(x_s)^0 isogenous to SO_" << n1 << " x SO_" << n2;
          d.support_semisimple = ss.str();
          d.support_unipotent = so_square_jordan(n1) + " x " +
                                so_square_jordan(n2);
          d.component_group = n1 == n2 ? "Z/2" : "1";
          d.local_system = "cuspidal pair; system " + std::to_string(k) +
                           " of " + std::to_string(copies);
        }
        std::ostringstream series;
        series << "C_{G*}(s) isogenous to SO_" << 2 * a * a << " x SO_"
               << 2 * b * b;
        d.lusztig_series = series.str();
        d.central_character = "trivial";
        out.push_back(std::move(d));
      }
    }
  }
  return out;
}

inline std::vector<CuspidalSheafDatum> cuspidal_d_sc(const GroupSpec& s) {
  std::vector<CuspidalSheafDatum> out;
  if (s.rank % 2 == 0) {
    // Square decompositions, pulled back from the special orthogonal or
    // projective group depending on the rank modulo 4.
    for (auto [n1, n2] :
         square_pairs(2 * s.rank, PairConstraint::both_even, true)) {
      long r1 = square_index(n1);
      long r2 = square_index(n2);
      long a = (r1 + r2) / 2;
      long b = (r1 - r2) / 2;
      bool has_zero = n1 == 0 || n2 == 0;
      int copies = has_zero ? 2 : 1;
      for (int k = 1; k <= copies; ++k) {
        CuspidalSheafDatum d;
        d.label = "square pair " + pair_string(n1, n2);
        if (copies > 1) d.label += slot_tag(k, copies);
        d.char_condition = "p != 2";
        d.support_pair = {n1, n2};
        if (has_zero) {
          // The four data across the two orderings of the zero pair have the
          // four central elements as semisimple parts.
          if (n1 == 0)
            d.support_semisimple = k == 1 ? "x_s = 1" : "x_s = z";
          else
            d.support_semisimple = k == 1 ? "x_s = z'" : "x_s = z''";
          d.support_unipotent = so_square_jordan(n1 == 0 ? n2 : n1);
          std::ostringstream comp;
          comp << "(Z/2)^" << (n1 == 0 ? r2 : r1) - 1;
          d.component_group = comp.str();
          d.local_system = "alternating character vector";
        } else {
          std::ostringstream ss;
          ss << "C_G(x_s) affords Spin_" << n1 << " x Spin_" << n2
             << " as double cover";
          d.support_semisimple = ss.str();
          d.support_unipotent = so_square_jordan(n1) + " x " +
                                so_square_jordan(n2);
          d.component_group = n1 == n2 ? "Z/2" : "1";
          d.local_system = "cuspidal pair";
        }
        std::ostringstream series;
        series << "C_{G*}(s) = SO_" << 2 * a * a << " x_{Z/2} SO_"
               << 2 * b * b << "; A_{G*}(s) of order "
               << (has_zero ? 4 : (n1 == n2 ? 1 : 2));
        d.lusztig_series = series.str();
        d.central_character = s.rank % 4 == 0
                                  ? "trivial"
                                  : "order 2 (factors through SO_2n)";
        out.push_back(std::move(d));
      }
    }
    // Triangular decompositions, pulled back from the half-spin group,
    // present from rank 6 on.
    if (s.rank >= 6) {
      for (auto [n1, n2] :
           triangular_pairs(2 * s.rank, PairConstraint::both_even, true)) {
        long t = triangular_index(n1);
        long r = triangular_index(n2);
        DualSeriesData dual =
            dual_series_classical(DualCase::d_triangular, t, r);
        for (int k = 1; k <= 2; ++k) {
          CuspidalSheafDatum d;
          d.label = "triangular pair " + pair_string(n1, n2) +
                    slot_tag(k, 2);
          d.char_condition = "p != 2";
          d.support_pair = {n1, n2};
          if (n1 == 0 || n2 == 0) {
            d.support_semisimple = "x_s central";
            d.support_unipotent = so_triangular_jordan(n1 == 0 ? n2 : n1);
            long dd = triangular_index(n1 == 0 ? n2 : n1);
            std::ostringstream comp;
            comp << "nonsplit central extension of (Z/2)^" << (dd - 1) / 2
                 << " by Z/2";
            d.component_group = comp.str();
          } else {
            std::ostringstream ss;
            ss << "C_G(x_s) affords Spin_" << n1 << " x Spin_" << n2
               << " as double cover";
            d.support_semisimple = ss.str();
            d.support_unipotent = so_triangular_jordan(n1) + " x " +
                                  so_triangular_jordan(n2);
            d.component_group = "";
          }
          d.local_system = "cuspidal pair; system " + std::to_string(k) +
                           " of 2";
          d.lusztig_series =
              "C_{G*}(s)^0 = (" + dual.centralizer + ")/{+-1}; A_{G*}(s) " +
              (n1 == n2 ? "of order 2" : "noncyclic of order 4");
          d.central_character = "order 2 (factors through 1/2Spin_2n)";
          out.push_back(std::move(d));
        }
      }
    }
  } else {
    // Odd rank: the centre is Z/4 and the data pair up with its two
    // injective characters.
    for (auto [n1, n2] :
         triangular_pairs(2 * s.rank, PairConstraint::both_even, true)) {
      long t = triangular_index(n1);
      long r = triangular_index(n2);
      DualSeriesData dual =
          dual_series_classical(DualCase::d_triangular, t, r);
      for (int k = 1; k <= 2; ++k) {
        CuspidalSheafDatum d;
        d.label = "triangular pair " + pair_string(n1, n2) +
                  "; central character " + (k == 1 ? "xi" : "xi^3");
        d.char_condition = "p != 2";
        d.support_pair = {n1, n2};
        if (n1 == 0 || n2 == 0) {
          d.support_semisimple = "x_s central";
          d.support_unipotent = so_triangular_jordan(n1 == 0 ? n2 : n1);
          long dd = triangular_index(n1 == 0 ? n2 : n1);
          std::ostringstream comp;
          comp << "nonsplit central extension of (Z/2)^" << (dd - 1) / 2
               << " by Z/2";
          d.component_group = comp.str();
        } else {
          std::ostringstream ss;
          ss << "C_G(x_s) affords Spin_" << n1 << " x Spin_" << n2
             << " as double cover";
          d.support_semisimple = ss.str();
          d.support_unipotent = so_triangular_jordan(n1) + " x " +
                                so_triangular_jordan(n2);
          d.component_group = "";
        }
        d.local_system = "cuspidal pair; system " + std::to_string(k) +
                         " of 2";
        d.lusztig_series = "C_{G*}(s)^0 = (" + dual.centralizer +
                           ")/{+-1}; A_{G*}(s) = Z/4";
        d.central_character = k == 1 ? "injective (xi)" : "injective (xi^3)";
        out.push_back(std::move(d));
      }
    }
  }
  return out;
}

inline std::vector<CuspidalSheafDatum> cuspidal_exceptional(
    const GroupSpec& s) {
  std::string name;
  switch (s.series) {
    case Series::G2: name = "g2"; break;
    case Series::F4: name = "f4"; break;
    case Series::E8: name = "e8"; break;
    case Series::E6:
      // In characteristic 3 the centre of the simply connected group is
      // infinitesimal and the two isogenous groups carry the same data.
      name = (s.isogeny == Isogeny::sc && s.p != 3) ? "e6_sc" : "e6_ad";
      break;
    case Series::E7:
      name = (s.isogeny == Isogeny::sc && s.p != 2) ? "e7_sc" : "e7_ad";
      break;
    default:
      throw std::logic_error("cuspidal_exceptional: classical series");
  }
  std::vector<CuspidalSheafDatum> out;
  for (const auto& row : exceptional_table(name).rows)
    if (condition_allows(row.condition, s.p))
      out.push_back(datum_from_table_row(row));
  return out;
}

}  // namespace detail

// Enumerates the cuspidal character sheaf data of the specified group in
// the specified characteristic, in a fixed canonical order: branches as
// documented in the per-series helpers, decompositions ascending, systems
// on one support numbered from 1.
inline std::vector<CuspidalSheafDatum> enumerate_cuspidal(
    const GroupSpec& spec) {
  validate_group_spec(spec);
  switch (spec.series) {
    case Series::A:
      return detail::cuspidal_type_a(spec);
    case Series::B:
      if (spec.p == 2) return detail::cuspidal_bc_char2(spec);
      return spec.isogeny == Isogeny::sc ? detail::cuspidal_b_sc(spec)
                                         : detail::cuspidal_b_ad(spec);
    case Series::C:
      if (spec.p == 2) return detail::cuspidal_bc_char2(spec);
      return spec.isogeny == Isogeny::sc ? detail::cuspidal_c_sc(spec)
                                         : detail::cuspidal_c_ad(spec);
    case Series::D:
      if (spec.p == 2) return detail::cuspidal_d_char2(spec);
      switch (spec.isogeny) {
        case Isogeny::sc: return detail::cuspidal_d_sc(spec);
        case Isogeny::ad: return detail::cuspidal_d_ad(spec);
        case Isogeny::so: return detail::cuspidal_d_so(spec);
        case Isogeny::half_spin: return detail::cuspidal_d_half_spin(spec);
      }
      throw std::logic_error("enumerate_cuspidal: unknown isogeny");
    default:
      return detail::cuspidal_exceptional(spec);
  }
}

// ---------------------------------------------------------------------------
// Label eigenvalue cross-check
// ---------------------------------------------------------------------------

namespace detail {

inline const FiniteGroupTable& family_table(const std::string& name) {
  static std::mutex mutex;
  static std::map<std::string, FiniteGroupTable> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  auto build = [&]() -> FiniteGroupTable {
    if (name == "S3") return FiniteGroupTable::symmetric(3);
    if (name == "S4") return FiniteGroupTable::symmetric(4);
    if (name == "S5") return FiniteGroupTable::symmetric(5);
    if (name == "Z2") return FiniteGroupTable::cyclic(2);
    if (name == "Z3xZ2")
      return FiniteGroupTable::product(FiniteGroupTable::cyclic(3),
                                       FiniteGroupTable::cyclic(2));
    if (name == "Z2xS3")
      return FiniteGroupTable::product(FiniteGroupTable::cyclic(2),
                                       FiniteGroupTable::symmetric(3));
    throw std::invalid_argument("unknown family group: " + name);
  };
  return cache.emplace(name, build()).first->second;
}

inline int find_permutation_element(const FiniteGroupTable& g,
                                    const std::vector<int>& one_line) {
  for (int i = 0; i < g.size(); ++i)
    if (g.permutation(i) == one_line) return i;
  throw std::logic_error("find_permutation_element: no such element");
}

// First element whose cycle type matches the target multiset.
inline int element_with_cycle_type(const FiniteGroupTable& g,
                                   std::vector<int> target) {
  std::sort(target.begin(), target.end());
  for (int c = 0; c < g.num_classes(); ++c) {
    std::vector<int> ct = g.cycle_type(g.class_rep(c));
    std::sort(ct.begin(), ct.end());
    if (ct == target) return g.class_rep(c);
  }
  throw std::logic_error("element_with_cycle_type: no matching class");
}

inline int s3_element(const FiniteGroupTable& s3, const std::string& token) {
  if (token == "1") return 0;
  if (token == "g2") return element_with_cycle_type(s3, {2, 1});
  if (token == "g3") return element_with_cycle_type(s3, {3});
  throw std::invalid_argument("unknown S3 element token: " + token);
}

inline int resolve_family_element(const FiniteGroupTable& g,
                                  const std::string& family,
                                  const std::string& token) {
  if (family == "S3" || family == "S4" || family == "S5") {
    int k = g.param();
    std::vector<int> target;
    if (token == "1")
      target.assign(k, 1);
    else if (token == "g2") {
      target.assign(k - 2, 1);
      target.push_back(2);
    } else if (token == "g2p") {
      target.assign(k - 4, 1);
      target.insert(target.end(), {2, 2});
    } else if (token == "g3" || token == "g4" || token == "g5") {
      int len = token[1] - '0';
      target.assign(k - len, 1);
      target.push_back(len);
    } else if (token == "g6") {
      target.assign(k - 5, 1);
      target.insert(target.end(), {2, 3});
    } else {
      throw std::invalid_argument("unknown element token: " + token);
    }
    return element_with_cycle_type(g, target);
  }
  if (family == "Z2") {
    if (token == "1") return 0;
    if (token == "-1") return 1;
    throw std::invalid_argument("unknown Z2 element token: " + token);
  }
  if (family == "Z3xZ2") {
    std::string rest = token;
    int sign = 0;
    if (!rest.empty() && rest[0] == '-') {
      sign = 1;
      rest = rest.substr(1);
    }
    int j;
    if (rest == "1")
      j = 0;
    else if (rest == "w")
      j = 1;
    else if (rest == "w^2")
      j = 2;
    else
      throw std::invalid_argument("unknown Z3xZ2 element token: " + token);
    return g.product_index(j, sign);
  }
  if (family == "Z2xS3") {
    const FiniteGroupTable& s3 = g.right_factor();
    if (token == "w") return g.product_index(1, 0);
    if (token == "w*g3") return g.product_index(1, s3_element(s3, "g3"));
    if (token == "s") return g.product_index(0, s3_element(s3, "g2"));
    if (token == "g3") return g.product_index(0, s3_element(s3, "g3"));
    throw std::invalid_argument("unknown Z2xS3 element token: " + token);
  }
  throw std::invalid_argument("unknown family group: " + family);
}

// Resolves a chi pin token relative to the family group and the chosen x:
// "x" is x itself, "x3" and "x2" split x into its 3-cycle and 2-cycle parts
// inside a symmetric family group (with the fixed-point transposition
// fallback for "x2"), and any other token is an element token.
inline int resolve_pin_element(const FiniteGroupTable& g,
                               const std::string& family, int x,
                               const std::string& token) {
  if (token == "x") return x;
  if (token == "x3" || token == "x2") {
    if (family != "S3" && family != "S4" && family != "S5")
      throw std::invalid_argument("cycle-part token outside a symmetric "
                                  "family group");
    const std::vector<int>& perm = g.permutation(x);
    int k = static_cast<int>(perm.size());
    std::vector<int> part(k);
    for (int i = 0; i < k; ++i) part[i] = i;
    std::vector<bool> seen(k, false);
    std::vector<int> fixed;
    bool has_two_cycle = false;
    for (int i = 0; i < k; ++i) {
      if (seen[i]) continue;
      std::vector<int> cycle;
      int j = i;
      while (!seen[j]) {
        seen[j] = true;
        cycle.push_back(j);
        j = perm[j];
      }
      if (cycle.size() == 1) fixed.push_back(i);
      if (cycle.size() == 2) has_two_cycle = true;
      bool keep = token == "x3" ? cycle.size() == 3 : cycle.size() == 2;
      if (keep)
        for (int idx : cycle) part[idx] = perm[idx];
    }
    if (token == "x2" && !has_two_cycle) {
      if (fixed.size() < 2)
        throw std::logic_error("no transposition available for pin x2");
      std::swap(part[fixed[0]], part[fixed[1]]);
    }
    return find_permutation_element(g, part);
  }
  return resolve_family_element(g, family, token);
}

// True when the ambient cycle type of the element is a single transposition
// (exactly one 2-cycle, all other cycles trivial).
inline bool is_single_transposition(const std::vector<int>& cycle_type) {
  int twos = 0;
  for (int part : cycle_type) {
    if (part == 2)
      ++twos;
    else if (part != 1)
      return false;
  }
  return twos == 1;
}

}  // namespace detail

// Recomputes the twisting eigenvalue of a datum from its machine label: the
// label character is located in the character table of the centralizer of x
// in the family group, and its normalized value at x is compared with the
// stored eigenvalue. Returns nullopt when the datum has no family label or
// no recorded eigenvalue; throws logic_error when the label fails to pin a
// unique character, which indicates a corrupted table.
inline std::optional<bool> check_shintani(const CuspidalSheafDatum& datum) {
  const LabelMachine& m = datum.machine;
  if (m.family_group.empty() || !datum.shintani) return std::nullopt;
  const FiniteGroupTable& g = detail::family_table(m.family_group);
  int x = detail::resolve_family_element(g, m.family_group, m.x);
  FiniteGroupTable c = g.centralizer(x);
  CharacterTable table = character_table(c);
  int x_in_c = c.from_parent(x);

  std::vector<int> candidates;
  for (int i = 0; i < static_cast<int>(table.rows.size()); ++i) {
    if (table.degrees[i] != 1) continue;
    bool ok = true;
    if (m.chi_kind == "coxeter_sign") {
      // The sign character of the centralizer as a reflection group: the
      // unique linear character that is -1 on every reflection class. In
      // the dihedral shape the reflections are the two noncentral
      // involution classes; elsewhere they are the elements whose ambient
      // cycle type is a single transposition.
      Cyclotomic minus_one = Cyclotomic::root_of_unity(2, 1);
      bool dihedral = c.size() == 8 && !c.is_abelian();
      for (int cls = 0; cls < c.num_classes() && ok; ++cls) {
        int rep = c.class_rep(cls);
        bool reflection;
        if (dihedral) {
          reflection = c.classes()[cls].members.size() == 2 &&
                       c.element_order(rep) == 2;
        } else {
          int parent = c.has_embedding() ? c.to_parent(rep) : rep;
          reflection = detail::is_single_transposition(g.cycle_type(parent));
        }
        if (reflection && !(table.value_at(i, rep) == minus_one)) ok = false;
      }
    } else if (m.chi_kind == "linear") {
      for (const ChiPin& pin : m.chi_values) {
        int parent = detail::resolve_pin_element(g, m.family_group, x,
                                                 pin.at);
        int elt = c.from_parent(parent);
        Cyclotomic want = Cyclotomic::root_of_unity(pin.order, pin.power);
        if (!(table.value_at(i, elt) == want)) {
          ok = false;
          break;
        }
      }
    } else {
      throw std::logic_error("unknown chi kind: " + m.chi_kind);
    }
    if (ok) candidates.push_back(i);
  }
  if (candidates.size() != 1)
    throw std::logic_error("family label does not pin a unique character: " +
                           datum.label);
  // Pinned characters are linear, so the normalization by the degree is
  // trivially by 1 and the eigenvalue is the plain character value.
  const Cyclotomic& value = table.value_at(candidates[0], x_in_c);
  return value == *datum.shintani;
}

}  // namespace charsheaf
