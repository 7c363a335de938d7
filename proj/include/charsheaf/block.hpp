#pragma once

// A synthetic model of the space of unipotently supported class functions.
//
// The model replaces geometry with exact linear algebra. A support class
// carries a dimension (which drives the closure order), a finite component
// group A with F acting trivially, and a positive integer z standing in for
// the fixed-point count of the connected centralizer. Rational classes of a
// support are the conjugacy classes of A, and the local-system functions
// take the values Y_iota(u_a) = chi_iota(a). A block bundles pairs with a
// unitriangular transition matrix Ptilde, a sign eta, a fourth root of unity
// zeta, and a hat involution with signs eps; the Mellin basis Gamma is cut
// out by the Gram condition <Gtilde_iota, Xtilde_{hat kappa}> = eps_kappa
// Ptilde*_{iota kappa}. Every identity of interest is then a consequence of
// these axioms and is checked here by exact computation.
//
// q is treated as a real transcendental: the inner product conjugates
// Cyclotomic coefficients and fixes q, while the star operation substitutes
// q -> q^{-1} and is applied only where a formula says so.

#include <charsheaf/character.hpp>
#include <charsheaf/group.hpp>
#include <charsheaf/matrix.hpp>

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace charsheaf {

// ---------------------------------------------------------------------------
// Model data
// ---------------------------------------------------------------------------

struct SupportClass {
  int id = 0;   // index into BlockModel::supports
  int dim = 0;  // closure order: strictly smaller dimension means strictly below
  long z = 1;   // stand-in for the connected-centralizer point count
  std::shared_ptr<const FiniteGroupTable> component_group;
  CharacterTable irr;  // character table of the component group

  long a() const { return component_group->size(); }
  int num_rational_classes() const { return component_group->num_classes(); }
};

struct PairDatum {
  int id = 0;       // global pair index across the model
  int support = 0;  // SupportClass id
  int chi = 0;      // row of the support's character table (the local system)
  long a = 1;       // |A| of the support
  int c2 = 0;       // twice the normalisation exponent c, in half-steps of q
};

struct BlockDatum {
  std::vector<PairDatum> pairs;  // ordered by (dim, support, chi)
  Matrix<LaurentPoly> ptilde;    // unitriangular in the pair order
  int eta = 1;                   // +1 or -1
  Cyclotomic zeta;               // a fourth root of unity
  std::vector<int> hat;          // involution on local pair indices
  std::vector<int> eps;          // signs +-1 with eps[hat[i]] == eps[i]
};

struct BlockModel {
  std::vector<SupportClass> supports;
  std::vector<BlockDatum> blocks;

  int total_pairs() const {
    int n = 0;
    for (const auto& b : blocks) n += static_cast<int>(b.pairs.size());
    return n;
  }
  int pair_offset(int block) const {
    int n = 0;
    for (int b = 0; b < block; ++b) n += static_cast<int>(blocks[b].pairs.size());
    return n;
  }
  const PairDatum& pair(int gid) const {
    for (const auto& b : blocks) {
      if (gid < static_cast<int>(b.pairs.size())) return b.pairs[gid];
      gid -= static_cast<int>(b.pairs.size());
    }
    throw std::invalid_argument("BlockModel::pair: index out of range");
  }
  int block_of_pair(int gid) const {
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
      int sz = static_cast<int>(blocks[b].pairs.size());
      if (gid < sz) return b;
      gid -= sz;
    }
    throw std::invalid_argument("BlockModel::block_of_pair: index out of range");
  }

  // Rational classes are flattened support by support, class by class.
  int rational_class_offset(int support) const {
    int n = 0;
    for (int s = 0; s < support; ++s) n += supports[s].num_rational_classes();
    return n;
  }
  int total_rational_classes() const {
    return rational_class_offset(static_cast<int>(supports.size()));
  }
};

// Coordinates of a class function: coefficients against one of the bases
// (indexed by global pair id) or values on rational classes. DGamma
// coordinates express a function as a combination of the D Gamma_iota.
enum class FnBasis { Y, X, Gamma, GammaTilde, DGamma, Values };

struct ClassFn {
  const BlockModel* model = nullptr;
  FnBasis basis = FnBasis::Y;
  std::vector<LaurentPoly> coeffs;
};

inline ClassFn make_fn(const BlockModel& m, FnBasis basis,
                       std::vector<LaurentPoly> coeffs) {
  std::size_t want = basis == FnBasis::Values
                         ? static_cast<std::size_t>(m.total_rational_classes())
                         : static_cast<std::size_t>(m.total_pairs());
  if (coeffs.size() != want)
    throw std::invalid_argument("make_fn: coefficient count does not match");
  return ClassFn{&m, basis, std::move(coeffs)};
}

inline ClassFn zero_fn(const BlockModel& m, FnBasis basis) {
  std::size_t n = basis == FnBasis::Values
                      ? static_cast<std::size_t>(m.total_rational_classes())
                      : static_cast<std::size_t>(m.total_pairs());
  return ClassFn{&m, basis, std::vector<LaurentPoly>(n)};
}

// ---------------------------------------------------------------------------
// Invariant checks
// ---------------------------------------------------------------------------

namespace detail {

inline Cyclotomic cyclotomic_pow(const Cyclotomic& base, int n) {
  Cyclotomic out(1);
  for (int i = 0; i < n; ++i) out = out * base;
  return out;
}

}  // namespace detail

// Checks every structural invariant of the model; throws std::logic_error
// naming the first violation found.
inline void validate_model(const BlockModel& m) {
  auto fail = [](const std::string& what) {
    throw std::logic_error("invalid block model: " + what);
  };
  if (m.supports.empty()) fail("no supports");
  for (int s = 0; s < static_cast<int>(m.supports.size()); ++s) {
    const SupportClass& sc = m.supports[s];
    if (sc.id != s) fail("support id out of order");
    if (sc.dim < 0) fail("negative support dimension");
    if (sc.z <= 0) fail("non-positive z");
    if (!sc.component_group) fail("missing component group");
    if (sc.irr.group->size() != sc.component_group->size())
      fail("character table does not match the component group");
  }
  // Pairs on a fixed support exhaust Irr(A) exactly once across all blocks.
  std::vector<std::vector<int>> seen(m.supports.size());
  int gid = 0;
  for (const auto& b : m.blocks) {
    int n = static_cast<int>(b.pairs.size());
    if (n == 0) fail("empty block");
    if (static_cast<int>(b.hat.size()) != n || static_cast<int>(b.eps.size()) != n)
      fail("hat/eps size mismatch");
    if (b.ptilde.rows() != static_cast<std::size_t>(n) ||
        b.ptilde.cols() != static_cast<std::size_t>(n))
      fail("Ptilde size mismatch");
    if (b.eta != 1 && b.eta != -1) fail("eta is not a sign");
    if (!detail::cyclotomic_pow(b.zeta, 4).is_one()) fail("zeta^4 != 1");
    std::map<int, int> c_of_support;
    for (int i = 0; i < n; ++i) {
      const PairDatum& p = b.pairs[i];
      if (p.id != gid + i) fail("pair id out of order");
      if (p.support < 0 || p.support >= static_cast<int>(m.supports.size()))
        fail("pair support out of range");
      const SupportClass& sc = m.supports[p.support];
      if (p.chi < 0 || p.chi >= sc.irr.num_irreducibles())
        fail("pair chi out of range");
      if (p.a != sc.a()) fail("pair a does not equal |A|");
      seen[p.support].push_back(p.chi);
      auto [it, inserted] = c_of_support.emplace(p.support, p.c2);
      if (!inserted && it->second != p.c2)
        fail("pairs with one support in one block have different c");
      if (b.hat[i] < 0 || b.hat[i] >= n || b.hat[b.hat[i]] != i)
        fail("hat is not an involution");
      if (b.pairs[b.hat[i]].support != p.support)
        fail("hat does not preserve supports");
      if (b.eps[i] != 1 && b.eps[i] != -1) fail("eps is not a sign");
      if (b.eps[b.hat[i]] != b.eps[i]) fail("eps not constant on hat orbits");
      if (i > 0) {
        const PairDatum& q = b.pairs[i - 1];
        const SupportClass& prev = m.supports[q.support];
        if (std::tuple(prev.dim, q.support, q.chi) >=
            std::tuple(sc.dim, p.support, p.chi))
          fail("pairs not sorted by (dim, support, chi)");
      }
    }
    try {
      require_unitriangular(b.ptilde);
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const LaurentPoly& entry = b.ptilde.at(i, j);
        if (!(entry.conj_coefficients() == entry))
          fail("Ptilde coefficient is not fixed by conjugation");
        if (i == j || entry.is_zero()) continue;
        int di = m.supports[b.pairs[i].support].dim;
        int dj = m.supports[b.pairs[j].support].dim;
        if (di >= dj)
          fail(di == dj && b.pairs[i].support == b.pairs[j].support
                   ? "same-support diagonal block is not the identity"
                   : "Ptilde entry between incomparable supports");
      }
    gid += n;
  }
  for (int s = 0; s < static_cast<int>(m.supports.size()); ++s) {
    std::vector<int> chis = seen[s];
    std::sort(chis.begin(), chis.end());
    int want = m.supports[s].irr.num_irreducibles();
    if (static_cast<int>(chis.size()) != want)
      fail("support does not carry exactly Irr(A)");
    for (int i = 0; i < want; ++i)
      if (chis[i] != i) fail("support does not carry exactly Irr(A)");
  }
}

// ---------------------------------------------------------------------------
// Random model generator
// ---------------------------------------------------------------------------

struct BlockModelShape {
  int num_supports = 3;
  int num_blocks = 2;
  int max_poly_degree = 3;  // term count bound for random Ptilde entries
  bool chain = false;       // dimensions 0..num_supports-1, all distinct
  bool layered = false;     // unique top support; palette rows one layer down
  std::vector<std::string> groups;  // optional per-support catalog names
};

namespace detail {

// Deterministic xorshift generator; avoids std distributions so sequences
// are identical on every platform.
class ModelRng {
 public:
  explicit ModelRng(std::uint64_t seed)
      : state_(seed * 2862933555777941757ULL + 3037000493ULL) {}
  std::uint64_t next() {
    state_ ^= state_ << 13;
    state_ ^= state_ >> 7;
    state_ ^= state_ << 17;
    return state_;
  }
  long below(long n) {
    return static_cast<long>(next() % static_cast<std::uint64_t>(n));
  }
  bool flip() { return (next() & 1) != 0; }

 private:
  std::uint64_t state_;
};

inline const std::vector<std::string>& group_catalog() {
  static const std::vector<std::string> names = {"1",     "Z2", "Z3", "Z4",
                                                 "Z2xZ2", "Z6", "S3", "D8"};
  return names;
}

inline bool catalog_group_abelian(const std::string& name) {
  return name != "S3" && name != "D8";
}

inline FiniteGroupTable catalog_group(const std::string& name) {
  if (name == "1") return FiniteGroupTable::cyclic(1);
  if (name == "Z2") return FiniteGroupTable::cyclic(2);
  if (name == "Z3") return FiniteGroupTable::cyclic(3);
  if (name == "Z4") return FiniteGroupTable::cyclic(4);
  if (name == "Z2xZ2") return FiniteGroupTable::elementary_abelian_2(2);
  if (name == "Z6") return FiniteGroupTable::cyclic(6);
  if (name == "S3") return FiniteGroupTable::symmetric(3);
  if (name == "D8") return FiniteGroupTable::dihedral8();
  throw std::invalid_argument("unknown component group name: " + name);
}

inline LaurentPoly random_laurent(ModelRng& rng, int max_terms) {
  LaurentPoly out;
  int start2 = static_cast<int>(rng.below(7)) - 3;
  int terms = 1 + static_cast<int>(rng.below(max_terms + 1));
  for (int j = 0; j < terms; ++j) {
    long coeff = rng.below(7) - 3;
    if (coeff == 0) coeff = 1;
    out = out + LaurentPoly::monomial(Cyclotomic(coeff), start2 + 2 * j);
  }
  return out;
}

}  // namespace detail

// Builds a structurally valid model, deterministically per seed. Dimensions,
// component groups, z values, the block partition of each support's Irr(A),
// the hat involutions, the signs and the Ptilde entries are all drawn from
// the seed; Ptilde is filled equivariantly for the hat involution
// (P[hat i][hat j] = eps_i eps_j P[i][j]) so that duality comes out
// self-adjoint, and its coefficients are integers so that the expansions
// over rational classes hold on the nose. With shape.layered the top support
// is unique and abelian, each block holds at most one top pair, and the
// Ptilde rows of pairs one layer down are either exactly q^{-1} into the
// block's top pair ("standard") or zero, matching the shapes the regular and
// subregular expansions require.
inline BlockModel random_block_model(unsigned long seed,
                                     const BlockModelShape& shape = {}) {
  if (shape.num_supports < 1 || shape.num_supports > 8)
    throw std::invalid_argument("random_block_model: supports must be 1..8");
  if (shape.num_blocks < 1)
    throw std::invalid_argument("random_block_model: need at least one block");
  if (shape.max_poly_degree < 0 || shape.max_poly_degree > 3)
    throw std::invalid_argument("random_block_model: degree must be 0..3");
  if (!shape.groups.empty() &&
      static_cast<int>(shape.groups.size()) != shape.num_supports)
    throw std::invalid_argument("random_block_model: one group name per support");
  if (shape.layered && shape.num_supports < 2)
    throw std::invalid_argument("random_block_model: layered needs two supports");

  detail::ModelRng rng(seed + 0x9e3779b97f4a7c15ULL);
  BlockModel m;

  // Supports: dimensions, component groups, evaluation points.
  std::vector<int> dims(shape.num_supports);
  if (shape.chain || shape.layered) {
    for (int s = 0; s < shape.num_supports; ++s) dims[s] = s;
  } else {
    for (int s = 0; s < shape.num_supports; ++s)
      dims[s] = static_cast<int>(rng.below(6));
  }
  int top_dim = *std::max_element(dims.begin(), dims.end());
  int top_support = 0;
  for (int s = 0; s < shape.num_supports; ++s)
    if (dims[s] == top_dim) top_support = s;

  const auto& catalog = detail::group_catalog();
  std::vector<std::string> names(shape.num_supports);
  if (!shape.groups.empty()) {
    names = shape.groups;
    int total = 0;
    for (const auto& name : names)
      total += detail::catalog_group(name).num_classes();
    if (total < shape.num_blocks)
      throw std::invalid_argument(
          "random_block_model: more blocks than local systems");
    if (shape.layered) {
      if (!detail::catalog_group_abelian(names[top_support]))
        throw std::invalid_argument(
            "random_block_model: layered top support must be abelian");
      if (detail::catalog_group(names[top_support]).num_classes() >
          shape.num_blocks)
        throw std::invalid_argument(
            "random_block_model: layered top support has more local systems "
            "than blocks");
    }
  } else {
    // Redraw until the shape is satisfiable: enough local systems in total,
    // and in layered mode an abelian top group small enough that each of its
    // characters can sit in a block of its own. The subregular argument
    // divides by a top character value, which must be a root of unity.
    static const std::vector<std::string> abelian = {"1", "Z2", "Z3", "Z4"};
    for (;;) {
      int total = 0;
      for (int s = 0; s < shape.num_supports; ++s) {
        if (shape.layered && s == top_support) {
          do {
            names[s] = abelian[static_cast<std::size_t>(
                rng.below(static_cast<long>(abelian.size())))];
          } while (detail::catalog_group(names[s]).num_classes() >
                   shape.num_blocks);
        } else {
          names[s] = catalog[static_cast<std::size_t>(
              rng.below(static_cast<long>(catalog.size())))];
        }
        total += detail::catalog_group(names[s]).num_classes();
      }
      if (total >= shape.num_blocks) break;
    }
  }
  for (int s = 0; s < shape.num_supports; ++s) {
    SupportClass sc;
    sc.id = s;
    sc.dim = dims[s];
    sc.z = 2 + rng.below(39);
    sc.component_group = std::make_shared<const FiniteGroupTable>(
        detail::catalog_group(names[s]));
    sc.irr = character_table(*sc.component_group);
    m.supports.push_back(std::move(sc));
  }

  // Deal every (support, chi) pair into a block; each block must end up
  // nonempty, and in layered mode the top support's characters go to
  // distinct blocks.
  std::vector<std::vector<std::pair<int, int>>> dealt;
  for (int attempt = 0;; ++attempt) {
    dealt.assign(shape.num_blocks, {});
    for (int s = 0; s < shape.num_supports; ++s) {
      int nchi = m.supports[s].irr.num_irreducibles();
      if (shape.layered && s == top_support) {
        std::vector<int> slots(shape.num_blocks);
        for (int b = 0; b < shape.num_blocks; ++b) slots[b] = b;
        for (int i = shape.num_blocks - 1; i > 0; --i) {
          int j = static_cast<int>(rng.below(i + 1));
          std::swap(slots[i], slots[j]);
        }
        for (int chi = 0; chi < nchi; ++chi)
          dealt[slots[chi]].emplace_back(s, chi);
      } else {
        for (int chi = 0; chi < nchi; ++chi)
          dealt[static_cast<std::size_t>(rng.below(shape.num_blocks))]
              .emplace_back(s, chi);
      }
    }
    bool ok = true;
    for (const auto& d : dealt) ok = ok && !d.empty();
    if (ok) break;
    if (attempt > 200) {
      // Round-robin fallback; still sends top characters to distinct blocks.
      dealt.assign(shape.num_blocks, {});
      int at = 0;
      for (int s = 0; s < shape.num_supports; ++s)
        for (int chi = 0; chi < m.supports[s].irr.num_irreducibles(); ++chi)
          dealt[at++ % shape.num_blocks].emplace_back(s, chi);
      break;
    }
  }

  int nu = static_cast<int>(rng.below(7)) - 2;  // per-model integer in c
  int gid = 0;
  for (int bi = 0; bi < shape.num_blocks; ++bi) {
    BlockDatum block;
    block.eta = rng.flip() ? 1 : -1;
    block.zeta = Cyclotomic::root_of_unity(4, static_cast<int>(rng.below(4)));
    int zeta_dim = static_cast<int>(rng.below(4));

    auto& members = dealt[bi];
    std::sort(members.begin(), members.end(),
              [&](const std::pair<int, int>& x, const std::pair<int, int>& y) {
                return std::tuple(m.supports[x.first].dim, x.first, x.second) <
                       std::tuple(m.supports[y.first].dim, y.first, y.second);
              });
    for (auto [s, chi] : members) {
      PairDatum p;
      p.id = gid++;
      p.support = s;
      p.chi = chi;
      p.a = m.supports[s].a();
      p.c2 = nu - m.supports[s].dim - zeta_dim;
      block.pairs.push_back(p);
    }
    int n = static_cast<int>(block.pairs.size());

    // Hat: an involution inside each support cell, so dimensions, z, |A| and
    // c are preserved automatically. Layered mode keeps the top two layers
    // pointwise fixed so the palette rows survive the equivariant fill.
    block.hat.assign(n, -1);
    std::map<int, std::vector<int>> cells;
    for (int i = 0; i < n; ++i) cells[block.pairs[i].support].push_back(i);
    for (auto& [s, cell] : cells) {
      bool keep_fixed = shape.layered && m.supports[s].dim >= top_dim - 1;
      std::vector<int> open = cell;
      while (!open.empty()) {
        int i = open.back();
        open.pop_back();
        if (!keep_fixed && !open.empty() && rng.flip()) {
          std::size_t j = static_cast<std::size_t>(
              rng.below(static_cast<long>(open.size())));
          block.hat[i] = open[j];
          block.hat[open[j]] = i;
          open.erase(open.begin() + static_cast<long>(j));
        } else {
          block.hat[i] = i;
        }
      }
    }
    block.eps.assign(n, 1);
    for (int i = 0; i < n; ++i) {
      if (block.hat[i] < i) {
        block.eps[i] = block.eps[block.hat[i]];
        continue;
      }
      bool force_plus =
          shape.layered && m.supports[block.pairs[i].support].dim >= top_dim - 1;
      block.eps[i] = force_plus || rng.flip() ? 1 : -1;
      if (block.hat[i] > i) block.eps[block.hat[i]] = block.eps[i];
    }

    // Ptilde: unitriangular, zero between incomparable supports, filled over
    // hat orbits: P[hat i][hat j] = eps_i eps_j P[i][j], with hat-fixed
    // sign-incompatible entries forced to zero.
    block.ptilde = Matrix<LaurentPoly>::identity(n);
    int top_local = -1;
    for (int i = 0; i < n; ++i)
      if (block.pairs[i].support == top_support) top_local = i;
    for (int i = 0; i < n; ++i) {
      int di = m.supports[block.pairs[i].support].dim;
      for (int j = i + 1; j < n; ++j) {
        int dj = m.supports[block.pairs[j].support].dim;
        if (di >= dj) continue;
        int hi = block.hat[i], hj = block.hat[j];
        if (std::pair(i, j) > std::pair(hi, hj)) continue;
        LaurentPoly entry;
        if (shape.layered && di == top_dim - 1) {
          if (dj == top_dim && j == top_local && rng.flip())
            entry = LaurentPoly::q_power(-2);
        } else if (rng.flip()) {
          entry = detail::random_laurent(rng, shape.max_poly_degree);
        }
        int sign = block.eps[i] * block.eps[j];
        if (hi == i && hj == j && sign < 0) entry = LaurentPoly();
        block.ptilde.at(i, j) = entry;
        block.ptilde.at(hi, hj) = sign < 0 ? LaurentPoly() - entry : entry;
      }
    }
    m.blocks.push_back(std::move(block));
  }

  validate_model(m);
  return m;
}

// Same structure, fresh evaluation points. An identity that is rational in
// the z's is certified by checking several instantiations.
inline BlockModel reinstantiate_z(const BlockModel& m, unsigned long seed) {
  BlockModel out = m;
  detail::ModelRng rng(seed * 7919ULL + 0x51ed2701ULL);
  for (auto& s : out.supports) s.z = 2 + rng.below(39);
  return out;
}

// ---------------------------------------------------------------------------
// Solved linear algebra per block
// ---------------------------------------------------------------------------

namespace detail {

inline LaurentPoly scale(const LaurentPoly& f, const Cyclotomic& c) {
  return f * LaurentPoly(c);
}

inline Matrix<LaurentPoly> conj_entries(const Matrix<LaurentPoly>& m) {
  Matrix<LaurentPoly> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out.at(i, j) = m.at(i, j).conj_coefficients();
  return out;
}

inline Matrix<LaurentPoly> star_entries(const Matrix<LaurentPoly>& m) {
  Matrix<LaurentPoly> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(i, j).star();
  return out;
}

// Everything the conversions need, computed once per block. Star and
// coefficient conjugation are entrywise ring maps, so they commute with
// inversion and a single unitriangular inverse suffices.
struct SolvedBlock {
  Matrix<LaurentPoly> pinv;       // Ptilde^{-1}
  Matrix<LaurentPoly> star_pinv;  // (Ptilde*)^{-1}
  Matrix<LaurentPoly> mpp;        // Ptilde (Ptilde*)^{-1}
  Matrix<LaurentPoly> gamma;      // row iota: Gtilde_iota in Y coordinates
  Matrix<LaurentPoly> gamma_inv;
};

// Solves the Gram condition <Gtilde_iota, Xtilde_{hat kappa}> = eps_kappa
// Ptilde*_{iota kappa} inside Laurent polynomials:
//   G = R conj(Ptilde)^{-1} diag(z_mu q^{-c_mu}), R_{ik} = eps_k (P_{i,hat k})*
//   G^{-1} = diag(q^{c_mu} / z_mu) conj(Ptilde) H (Ptilde*)^{-1}
// with H the signed hat permutation H_{hat k, k} = eps_k, which squares to
// the identity because eps is hat-invariant.
inline SolvedBlock solve_block(const BlockModel& m, int bi) {
  const BlockDatum& b = m.blocks[bi];
  int n = static_cast<int>(b.pairs.size());
  SolvedBlock s;
  s.pinv = unitriangular_inverse(b.ptilde);
  s.star_pinv = star_entries(s.pinv);
  s.mpp = b.ptilde * s.star_pinv;

  Matrix<LaurentPoly> r(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      r.at(i, k) = scale(b.ptilde.at(i, b.hat[k]).star(), Cyclotomic(b.eps[k]));
  s.gamma = r * conj_entries(s.pinv);
  for (int i = 0; i < n; ++i)
    for (int mu = 0; mu < n; ++mu) {
      const PairDatum& p = b.pairs[mu];
      s.gamma.at(i, mu) =
          scale(s.gamma.at(i, mu), Cyclotomic(m.supports[p.support].z)) *
          LaurentPoly::q_power(-p.c2);
    }

  Matrix<LaurentPoly> h(n, n);
  for (int k = 0; k < n; ++k)
    h.at(b.hat[k], k) = LaurentPoly(Cyclotomic(b.eps[k]));
  s.gamma_inv = conj_entries(b.ptilde) * h * s.star_pinv;
  for (int mu = 0; mu < n; ++mu) {
    const PairDatum& p = b.pairs[mu];
    Cyclotomic inv_z = Cyclotomic(make_rational(1, m.supports[p.support].z));
    for (int j = 0; j < n; ++j)
      s.gamma_inv.at(mu, j) =
          scale(s.gamma_inv.at(mu, j), inv_z) * LaurentPoly::q_power(p.c2);
  }
  return s;
}

inline std::vector<SolvedBlock> solve_blocks(const BlockModel& m) {
  std::vector<SolvedBlock> out;
  out.reserve(m.blocks.size());
  for (int bi = 0; bi < static_cast<int>(m.blocks.size()); ++bi)
    out.push_back(solve_block(m, bi));
  return out;
}

// Y coefficients -> values on rational classes.
inline std::vector<LaurentPoly> values_from_y(const BlockModel& m,
                                              const std::vector<LaurentPoly>& y) {
  std::vector<LaurentPoly> vals(m.total_rational_classes());
  int gid = 0;
  for (const auto& b : m.blocks)
    for (const auto& p : b.pairs) {
      if (!y[gid].is_zero()) {
        const SupportClass& sc = m.supports[p.support];
        int off = m.rational_class_offset(p.support);
        for (int c = 0; c < sc.num_rational_classes(); ++c)
          vals[off + c] = vals[off + c] + scale(y[gid], sc.irr.rows[p.chi][c]);
      }
      ++gid;
    }
  return vals;
}

// Values -> Y coefficients, by character orthogonality support by support.
inline std::vector<LaurentPoly> y_from_values(
    const BlockModel& m, const std::vector<LaurentPoly>& vals) {
  std::vector<LaurentPoly> y(m.total_pairs());
  int gid = 0;
  for (const auto& b : m.blocks)
    for (const auto& p : b.pairs) {
      const SupportClass& sc = m.supports[p.support];
      int off = m.rational_class_offset(p.support);
      LaurentPoly acc;
      for (int c = 0; c < sc.num_rational_classes(); ++c) {
        if (vals[off + c].is_zero()) continue;
        long cls_size =
            static_cast<long>(sc.component_group->classes()[c].members.size());
        Cyclotomic w = Cyclotomic(make_rational(cls_size, sc.a())) *
                       sc.irr.rows[p.chi][c].conj();
        acc = acc + scale(vals[off + c], w);
      }
      y[gid++] = acc;
    }
  return y;
}

// Applies duality to Y coordinates: convert to each block's Xtilde
// coordinates, apply eta eps_k and the hat permutation, convert back.
inline std::vector<LaurentPoly> dual_y(const BlockModel& m,
                                       const std::vector<SolvedBlock>& solved,
                                       const std::vector<LaurentPoly>& y) {
  std::vector<LaurentPoly> out(m.total_pairs());
  int off = 0;
  for (int bi = 0; bi < static_cast<int>(m.blocks.size()); ++bi) {
    const BlockDatum& b = m.blocks[bi];
    int n = static_cast<int>(b.pairs.size());
    std::vector<LaurentPoly> x(n);
    for (int k = 0; k < n; ++k) {
      LaurentPoly acc;
      for (int mu = 0; mu < n; ++mu)
        if (!y[off + mu].is_zero())
          acc = acc + solved[bi].pinv.at(k, mu) * y[off + mu] *
                          LaurentPoly::q_power(-b.pairs[mu].c2);
      x[k] = acc;
    }
    for (int mu = 0; mu < n; ++mu) {
      LaurentPoly acc;
      for (int k = 0; k < n; ++k) {
        const LaurentPoly& jx = x[b.hat[k]];
        if (!jx.is_zero())
          acc = acc + b.ptilde.at(mu, k) * scale(jx, Cyclotomic(b.eta * b.eps[k]));
      }
      out[off + mu] = acc * LaurentPoly::q_power(b.pairs[mu].c2);
    }
    off += n;
  }
  return out;
}

inline std::vector<LaurentPoly> y_from_fn(const BlockModel& m,
                                          const std::vector<SolvedBlock>& solved,
                                          const ClassFn& f) {
  switch (f.basis) {
    case FnBasis::Y:
      return f.coeffs;
    case FnBasis::Values:
      return y_from_values(m, f.coeffs);
    case FnBasis::X: {
      std::vector<LaurentPoly> y(m.total_pairs());
      int off = 0;
      for (const auto& b : m.blocks) {
        int n = static_cast<int>(b.pairs.size());
        for (int mu = 0; mu < n; ++mu) {
          LaurentPoly acc;
          for (int k = 0; k < n; ++k)
            if (!f.coeffs[off + k].is_zero())
              acc = acc + b.ptilde.at(mu, k) * f.coeffs[off + k];
          y[off + mu] = acc * LaurentPoly::q_power(b.pairs[mu].c2);
        }
        off += n;
      }
      return y;
    }
    case FnBasis::GammaTilde: {
      std::vector<LaurentPoly> y(m.total_pairs());
      int off = 0;
      for (int bi = 0; bi < static_cast<int>(m.blocks.size()); ++bi) {
        int n = static_cast<int>(m.blocks[bi].pairs.size());
        for (int mu = 0; mu < n; ++mu) {
          LaurentPoly acc;
          for (int i = 0; i < n; ++i)
            if (!f.coeffs[off + i].is_zero())
              acc = acc + f.coeffs[off + i] * solved[bi].gamma.at(i, mu);
          y[off + mu] = acc;
        }
        off += n;
      }
      return y;
    }
    case FnBasis::Gamma: {
      // Gamma_iota = a_iota zeta^{-1} Gtilde_iota.
      ClassFn tilde = zero_fn(m, FnBasis::GammaTilde);
      int off = 0;
      for (const auto& b : m.blocks) {
        Cyclotomic zeta_inv = b.zeta.conj();
        for (int i = 0; i < static_cast<int>(b.pairs.size()); ++i, ++off)
          if (!f.coeffs[off].is_zero())
            tilde.coeffs[off] =
                scale(f.coeffs[off], Cyclotomic(b.pairs[i].a) * zeta_inv);
      }
      return y_from_fn(m, solved, tilde);
    }
    case FnBasis::DGamma:
      break;
  }
  // sum d_kappa D Gamma_kappa = D(sum d_kappa Gamma_kappa), D being linear.
  ClassFn as_gamma{f.model, FnBasis::Gamma, f.coeffs};
  return dual_y(m, solved, y_from_fn(m, solved, as_gamma));
}

inline std::vector<LaurentPoly> fn_from_y(const BlockModel& m,
                                          const std::vector<SolvedBlock>& solved,
                                          const std::vector<LaurentPoly>& y,
                                          FnBasis target) {
  switch (target) {
    case FnBasis::Y:
      return y;
    case FnBasis::Values:
      return values_from_y(m, y);
    case FnBasis::X: {
      std::vector<LaurentPoly> x(m.total_pairs());
      int off = 0;
      for (int bi = 0; bi < static_cast<int>(m.blocks.size()); ++bi) {
        const BlockDatum& b = m.blocks[bi];
        int n = static_cast<int>(b.pairs.size());
        for (int k = 0; k < n; ++k) {
          LaurentPoly acc;
          for (int mu = 0; mu < n; ++mu)
            if (!y[off + mu].is_zero())
              acc = acc + solved[bi].pinv.at(k, mu) * y[off + mu] *
                              LaurentPoly::q_power(-b.pairs[mu].c2);
          x[off + k] = acc;
        }
        off += n;
      }
      return x;
    }
    case FnBasis::GammaTilde: {
      std::vector<LaurentPoly> t(m.total_pairs());
      int off = 0;
      for (int bi = 0; bi < static_cast<int>(m.blocks.size()); ++bi) {
        int n = static_cast<int>(m.blocks[bi].pairs.size());
        for (int i = 0; i < n; ++i) {
          LaurentPoly acc;
          for (int mu = 0; mu < n; ++mu)
            if (!y[off + mu].is_zero())
              acc = acc + y[off + mu] * solved[bi].gamma_inv.at(mu, i);
          t[off + i] = acc;
        }
        off += n;
      }
      return t;
    }
    case FnBasis::Gamma: {
      std::vector<LaurentPoly> t = fn_from_y(m, solved, y, FnBasis::GammaTilde);
      int off = 0;
      for (const auto& b : m.blocks)
        for (int i = 0; i < static_cast<int>(b.pairs.size()); ++i, ++off)
          if (!t[off].is_zero())
            t[off] = scale(t[off],
                           Cyclotomic(make_rational(1, b.pairs[i].a)) * b.zeta);
      return t;
    }
    case FnBasis::DGamma:
      break;
  }
  // f = sum d_kappa D Gamma_kappa iff D f = sum d_kappa Gamma_kappa.
  return fn_from_y(m, solved, dual_y(m, solved, y), FnBasis::Gamma);
}

// The sesquilinear form evaluated on value vectors, with weights
// |class| / (z |A|) per rational class; conjugation acts on the Cyclotomic
// coefficients of the second argument and fixes q.
inline LaurentPoly inner_product_values(const BlockModel& m,
                                        const std::vector<LaurentPoly>& fv,
                                        const std::vector<LaurentPoly>& gv) {
  LaurentPoly acc;
  int rc = 0;
  for (const auto& sc : m.supports) {
    const auto& classes = sc.component_group->classes();
    for (int c = 0; c < sc.num_rational_classes(); ++c, ++rc) {
      if (fv[rc].is_zero() || gv[rc].is_zero()) continue;
      long cls_size = static_cast<long>(classes[c].members.size());
      Cyclotomic w = Cyclotomic(make_rational(cls_size, sc.z * sc.a()));
      acc = acc + scale(fv[rc] * gv[rc].conj_coefficients(), w);
    }
  }
  return acc;
}

inline void require_same_model(const ClassFn& f, const ClassFn& g) {
  if (f.model == nullptr || f.model != g.model)
    throw std::invalid_argument("class functions belong to different models");
}

// Values of D Gamma_iota for every pair, through the solved blocks.
inline std::vector<std::vector<LaurentPoly>> dgamma_pair_values(
    const BlockModel& m, const std::vector<SolvedBlock>& solved) {
  std::vector<std::vector<LaurentPoly>> out(m.total_pairs());
  int off = 0;
  for (int bi = 0; bi < static_cast<int>(m.blocks.size()); ++bi) {
    const BlockDatum& b = m.blocks[bi];
    int n = static_cast<int>(b.pairs.size());
    Cyclotomic zeta_inv = b.zeta.conj();
    for (int i = 0; i < n; ++i) {
      std::vector<LaurentPoly> y(m.total_pairs());
      Cyclotomic front = Cyclotomic(b.pairs[i].a) * zeta_inv;
      for (int mu = 0; mu < n; ++mu)
        y[off + mu] = scale(solved[bi].gamma.at(i, mu), front);
      out[off + i] = values_from_y(m, dual_y(m, solved, y));
    }
    off += n;
  }
  return out;
}

// Values of D Gamma_v for the rational class (support, cls): the
// |A|^{-1}-weighted conjugate character combination of the pair transforms.
inline std::vector<LaurentPoly> dgamma_class_values(
    const BlockModel& m, const std::vector<std::vector<LaurentPoly>>& dg,
    int support, int cls) {
  const SupportClass& sc = m.supports[support];
  Cyclotomic inv_a = Cyclotomic(make_rational(1, sc.a()));
  std::vector<LaurentPoly> out(m.total_rational_classes());
  int gid = 0;
  for (const auto& b : m.blocks)
    for (const auto& p : b.pairs) {
      if (p.support == support) {
        Cyclotomic w = sc.irr.rows[p.chi][cls].conj() * inv_a;
        for (std::size_t i = 0; i < out.size(); ++i)
          out[i] = out[i] + scale(dg[gid][i], w);
      }
      ++gid;
    }
  return out;
}

// The same restricted to one block (the block component of D Gamma_v).
inline std::vector<LaurentPoly> dgamma_class_block_values(
    const BlockModel& m, const std::vector<std::vector<LaurentPoly>>& dg,
    int support, int cls, int bi) {
  const SupportClass& sc = m.supports[support];
  Cyclotomic inv_a = Cyclotomic(make_rational(1, sc.a()));
  std::vector<LaurentPoly> out(m.total_rational_classes());
  int gid = m.pair_offset(bi);
  for (const auto& p : m.blocks[bi].pairs) {
    if (p.support == support) {
      Cyclotomic w = sc.irr.rows[p.chi][cls].conj() * inv_a;
      for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = out[i] + scale(dg[gid][i], w);
    }
    ++gid;
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Bases, duality, inner product
// ---------------------------------------------------------------------------

// Coefficients of each Gtilde_iota of the block in the Y basis (row iota,
// column mu), from the Gram condition against the Xtilde basis.
inline Matrix<LaurentPoly> gamma_basis(const BlockModel& m, int block) {
  if (block < 0 || block >= static_cast<int>(m.blocks.size()))
    throw std::invalid_argument("gamma_basis: block index out of range");
  return detail::solve_block(m, block).gamma;
}

inline ClassFn to_basis(const ClassFn& f, FnBasis target) {
  if (f.model == nullptr)
    throw std::invalid_argument("to_basis: unbound class function");
  if (f.basis == target) return f;
  const BlockModel& m = *f.model;
  auto solved = detail::solve_blocks(m);
  std::vector<LaurentPoly> y = detail::y_from_fn(m, solved, f);
  return ClassFn{f.model, target, detail::fn_from_y(m, solved, y, target)};
}

// The duality operation D, defined blockwise on the Xtilde basis by
// D Xtilde_kappa = eta eps_kappa Xtilde_{hat kappa}; a linear involution,
// self-adjoint for the inner product thanks to the equivariant Ptilde.
// The result is returned in Y coordinates.
inline ClassFn duality(const ClassFn& f) {
  if (f.model == nullptr)
    throw std::invalid_argument("duality: unbound class function");
  const BlockModel& m = *f.model;
  auto solved = detail::solve_blocks(m);
  std::vector<LaurentPoly> y = detail::y_from_fn(m, solved, f);
  return ClassFn{f.model, FnBasis::Y, detail::dual_y(m, solved, y)};
}

// The sesquilinear form determined by <Y_iota, Y_kappa> = delta / z,
// evaluated value-wise with weights |class| / (z |A|).
inline LaurentPoly inner_product(const ClassFn& f, const ClassFn& g) {
  detail::require_same_model(f, g);
  const BlockModel& m = *f.model;
  auto solved = detail::solve_blocks(m);
  std::vector<LaurentPoly> fv =
      detail::values_from_y(m, detail::y_from_fn(m, solved, f));
  std::vector<LaurentPoly> gv =
      detail::values_from_y(m, detail::y_from_fn(m, solved, g));
  return detail::inner_product_values(m, fv, gv);
}

// Orthogonal projection onto the span of one block: the blocks' spans are
// orthogonal for the inner product, so the projection keeps the block's Y
// components (each Y coefficient is z times the pairing against that Y).
inline ClassFn project_block(const ClassFn& f, int block) {
  if (f.model == nullptr)
    throw std::invalid_argument("project_block: unbound class function");
  const BlockModel& m = *f.model;
  if (block < 0 || block >= static_cast<int>(m.blocks.size()))
    throw std::invalid_argument("project_block: block index out of range");
  auto solved = detail::solve_blocks(m);
  std::vector<LaurentPoly> y = detail::y_from_fn(m, solved, f);
  std::vector<LaurentPoly> out(m.total_pairs());
  int off = m.pair_offset(block);
  for (int i = 0; i < static_cast<int>(m.blocks[block].pairs.size()); ++i)
    out[off + i] = y[off + i];
  return ClassFn{f.model, FnBasis::Y, std::move(out)};
}

// ---------------------------------------------------------------------------
// Distinguished functions
// ---------------------------------------------------------------------------

// The normalised characteristic function of the rational class (support,
// cls): value z |C_A(a)| there, zero elsewhere.
inline ClassFn characteristic_fn(const BlockModel& m, int support, int cls) {
  const SupportClass& sc = m.supports[support];
  long cls_size =
      static_cast<long>(sc.component_group->classes()[cls].members.size());
  ClassFn f = zero_fn(m, FnBasis::Values);
  f.coeffs[m.rational_class_offset(support) + cls] =
      LaurentPoly(Cyclotomic(sc.z * (sc.a() / cls_size)));
  return f;
}

// The transform attached to one rational class, recovered from the pair
// transforms by character orthogonality: Gamma_u = |A|^{-1} sum_iota
// conj(Y_iota(u)) Gamma_iota over the pairs whose support is the class of u
// (these exhaust Irr(A) across the blocks).
inline ClassFn gamma_u(const BlockModel& m, int support, int cls) {
  const SupportClass& sc = m.supports[support];
  Cyclotomic inv_a = Cyclotomic(make_rational(1, sc.a()));
  ClassFn f = zero_fn(m, FnBasis::Gamma);
  int gid = 0;
  for (const auto& b : m.blocks)
    for (const auto& p : b.pairs) {
      if (p.support == support)
        f.coeffs[gid] = LaurentPoly(sc.irr.rows[p.chi][cls].conj() * inv_a);
      ++gid;
    }
  return f;
}

namespace detail {

// DGamma coefficients of the characteristic-function expansion: over each
// block, eta zeta sum_iota conj(Ytilde_iota(u)) a_kappa^{-1}
// (Ptilde (Ptilde*)^{-1})_{iota kappa} on D Gamma_kappa.
inline std::vector<LaurentPoly> chi_u_dgamma_coeffs(
    const BlockModel& m, const std::vector<SolvedBlock>& solved, int support,
    int cls) {
  const SupportClass& sc = m.supports[support];
  std::vector<LaurentPoly> out(m.total_pairs());
  int off = 0;
  for (int bi = 0; bi < static_cast<int>(m.blocks.size()); ++bi) {
    const BlockDatum& b = m.blocks[bi];
    int n = static_cast<int>(b.pairs.size());
    std::vector<LaurentPoly> w(n);
    bool any = false;
    for (int i = 0; i < n; ++i) {
      if (b.pairs[i].support != support) continue;
      w[i] = LaurentPoly(sc.irr.rows[b.pairs[i].chi][cls].conj()) *
             LaurentPoly::q_power(b.pairs[i].c2);
      any = any || !w[i].is_zero();
    }
    if (any) {
      Cyclotomic front = Cyclotomic(b.eta) * b.zeta;
      for (int k = 0; k < n; ++k) {
        LaurentPoly acc;
        for (int i = 0; i < n; ++i)
          if (!w[i].is_zero()) acc = acc + w[i] * solved[bi].mpp.at(i, k);
        if (!acc.is_zero())
          out[off + k] =
              scale(acc, front * Cyclotomic(make_rational(1, b.pairs[k].a)));
      }
    }
    off += n;
  }
  return out;
}

// The same expansion regrouped over rational classes: returns c(u, v_a)
// indexed by flattened rational classes, so that the characteristic function
// is the sum over classes of |C_A(a)|^{-1} c(u, v_a) D Gamma_{v_a}.
inline std::vector<LaurentPoly> chi_u_class_coeffs(
    const BlockModel& m, const std::vector<SolvedBlock>& solved, int support,
    int cls) {
  const SupportClass& sc = m.supports[support];
  std::vector<LaurentPoly> out(m.total_rational_classes());
  for (int bi = 0; bi < static_cast<int>(m.blocks.size()); ++bi) {
    const BlockDatum& b = m.blocks[bi];
    int n = static_cast<int>(b.pairs.size());
    std::vector<LaurentPoly> w(n);
    bool any = false;
    for (int i = 0; i < n; ++i) {
      if (b.pairs[i].support != support) continue;
      w[i] = LaurentPoly(sc.irr.rows[b.pairs[i].chi][cls].conj()) *
             LaurentPoly::q_power(b.pairs[i].c2);
      any = any || !w[i].is_zero();
    }
    if (!any) continue;
    Cyclotomic front = Cyclotomic(b.eta) * b.zeta;
    for (int k = 0; k < n; ++k) {
      LaurentPoly acc;
      for (int i = 0; i < n; ++i)
        if (!w[i].is_zero()) acc = acc + w[i] * solved[bi].mpp.at(i, k);
      if (acc.is_zero()) continue;
      const PairDatum& pk = b.pairs[k];
      const SupportClass& sk = m.supports[pk.support];
      int rc_off = m.rational_class_offset(pk.support);
      for (int c = 0; c < sk.num_rational_classes(); ++c)
        out[rc_off + c] =
            out[rc_off + c] + scale(acc, front * sk.irr.rows[pk.chi][c]);
    }
  }
  return out;
}

}  // namespace detail

// Expansion of the characteristic function of (support, cls) in the D Gamma
// coordinates; evaluating the result on rational classes reproduces the
// characteristic function exactly.
inline ClassFn chi_u_expansion(const BlockModel& m, int support, int cls) {
  auto solved = detail::solve_blocks(m);
  return ClassFn{&m, FnBasis::DGamma,
                 detail::chi_u_dgamma_coeffs(m, solved, support, cls)};
}

// The expansion regrouped by rational classes: coefficients c(u, v_a) with
// chi_(u) = sum over classes (C, a) of |C_A(a)|^{-1} c(u, v_a) D Gamma_{v_a}.
inline std::vector<LaurentPoly> chi_u_class_coefficients(const BlockModel& m,
                                                         int support, int cls) {
  auto solved = detail::solve_blocks(m);
  return detail::chi_u_class_coeffs(m, solved, support, cls);
}

// ---------------------------------------------------------------------------
// Identity checks
// ---------------------------------------------------------------------------

namespace detail {

inline bool scholium_impl(const BlockModel& m,
                          const std::vector<std::vector<LaurentPoly>>& dg) {
  for (int s = 0; s < static_cast<int>(m.supports.size()); ++s) {
    for (int a = 0; a < m.supports[s].num_rational_classes(); ++a) {
      std::vector<LaurentPoly> vals = dgamma_class_values(m, dg, s, a);
      int rc = 0;
      for (int t = 0; t < static_cast<int>(m.supports.size()); ++t) {
        bool above = m.supports[t].dim > m.supports[s].dim || t == s;
        for (int c = 0; c < m.supports[t].num_rational_classes(); ++c, ++rc)
          if (!above && !vals[rc].is_zero()) return false;
      }
    }
  }
  return true;
}

}  // namespace detail

// D Gamma_u vanishes on every rational class whose support is neither above
// nor equal to the class of u (supports of equal dimension are incomparable).
inline bool verify_scholium(const BlockModel& m) {
  auto solved = detail::solve_blocks(m);
  return detail::scholium_impl(m, detail::dgamma_pair_values(m, solved));
}

// Direct evaluation of D Gamma_iota at a rational class of its own support;
// the closed form is |A| z eta zeta^{-1} q^{-c_iota} Y_iota(v_a).
inline LaurentPoly dgamma_value(const BlockModel& m, int pair, int support,
                                int cls) {
  const PairDatum& p = m.pair(pair);
  if (p.support != support)
    throw std::invalid_argument(
        "dgamma_value: the class is not in the pair's support");
  auto solved = detail::solve_blocks(m);
  ClassFn g = zero_fn(m, FnBasis::Gamma);
  g.coeffs[pair] = LaurentPoly(1);
  std::vector<LaurentPoly> vals = detail::values_from_y(
      m, detail::dual_y(m, solved, detail::y_from_fn(m, solved, g)));
  return vals[m.rational_class_offset(support) + cls];
}

struct RegularSubregularReport {
  bool regular_ok = false;
  bool subregular_checked = false;
  bool subregular_ok = false;
  int standard_pairs = 0;
  int nonstandard_pairs = 0;
};

namespace detail {

// The unique support of maximal dimension, or -1 when the maximum is shared.
inline int unique_top_support(const BlockModel& m) {
  int top = 0;
  for (int s = 1; s < static_cast<int>(m.supports.size()); ++s)
    if (m.supports[s].dim > m.supports[top].dim) top = s;
  for (int s = 0; s < static_cast<int>(m.supports.size()); ++s)
    if (s != top && m.supports[s].dim == m.supports[top].dim) return -1;
  return top;
}

inline std::optional<int> block_c2_on_support(const BlockDatum& b, int support) {
  for (const auto& p : b.pairs)
    if (p.support == support) return p.c2;
  return std::nullopt;
}

inline RegularSubregularReport regular_subregular_impl(
    const BlockModel& m, const std::vector<SolvedBlock>& solved) {
  int top = unique_top_support(m);
  if (top < 0)
    throw std::invalid_argument(
        "regular_and_subregular: the top-dimensional support is not unique");
  int top_dim = m.supports[top].dim;

  std::vector<int> top_local(m.blocks.size(), -1);
  for (int bi = 0; bi < static_cast<int>(m.blocks.size()); ++bi) {
    const BlockDatum& b = m.blocks[bi];
    for (int i = 0; i < static_cast<int>(b.pairs.size()); ++i) {
      if (b.pairs[i].support != top) continue;
      if (top_local[bi] >= 0)
        throw std::invalid_argument(
            "regular_and_subregular: a block has two regularly supported pairs");
      top_local[bi] = i;
    }
  }

  auto dg = dgamma_pair_values(m, solved);
  RegularSubregularReport report;

  // Regular classes: chi_(v) = sum over blocks of eta zeta q^{c_Lambda(v)}
  // D Gamma_v^Lambda.
  report.regular_ok = true;
  for (int a = 0; a < m.supports[top].num_rational_classes(); ++a) {
    std::vector<LaurentPoly> rhs(m.total_rational_classes());
    for (int bi = 0; bi < static_cast<int>(m.blocks.size()); ++bi) {
      if (top_local[bi] < 0) continue;
      const BlockDatum& b = m.blocks[bi];
      std::vector<LaurentPoly> part =
          dgamma_class_block_values(m, dg, top, a, bi);
      Cyclotomic front = Cyclotomic(b.eta) * b.zeta;
      LaurentPoly qc = LaurentPoly::q_power(b.pairs[top_local[bi]].c2);
      for (std::size_t i = 0; i < rhs.size(); ++i)
        rhs[i] = rhs[i] + scale(part[i], front) * qc;
    }
    if (!(rhs == characteristic_fn(m, top, a).coeffs)) report.regular_ok = false;
  }

  // Subregular classes, if the model has a second layer.
  int sub_dim = -1;
  for (const auto& sc : m.supports)
    if (sc.dim < top_dim && sc.dim > sub_dim) sub_dim = sc.dim;
  if (sub_dim < 0) return report;
  report.subregular_checked = true;
  report.subregular_ok = true;

  if (!m.supports[top].component_group->is_abelian())
    throw std::invalid_argument(
        "regular_and_subregular: the top component group must be abelian");

  // Classify the subregular pairs by their Ptilde rows, and pin the
  // correction entry of Ptilde (Ptilde*)^{-1} for the standard ones.
  LaurentPoly correction = LaurentPoly::q_power(-2) - LaurentPoly::q_power(2);
  std::vector<std::vector<char>> standard(m.blocks.size());
  for (int bi = 0; bi < static_cast<int>(m.blocks.size()); ++bi) {
    const BlockDatum& b = m.blocks[bi];
    int n = static_cast<int>(b.pairs.size());
    standard[bi].assign(n, 0);
    for (int i = 0; i < n; ++i) {
      if (m.supports[b.pairs[i].support].dim != sub_dim) continue;
      for (int j = i + 1; j < n; ++j) {
        if (b.ptilde.at(i, j).is_zero()) continue;
        if (j == top_local[bi] && !standard[bi][i] &&
            b.ptilde.at(i, j) == LaurentPoly::q_power(-2)) {
          standard[bi][i] = 1;
          continue;
        }
        throw std::invalid_argument(
            "regular_and_subregular: a subregular row is neither standard "
            "nor zero");
      }
      for (int k = 0; k < n; ++k) {
        LaurentPoly want;
        if (k == i)
          want = LaurentPoly(1);
        else if (standard[bi][i] && k == top_local[bi])
          want = correction;
        if (!(solved[bi].mpp.at(i, k) == want)) report.subregular_ok = false;
      }
      if (standard[bi][i])
        ++report.standard_pairs;
      else
        ++report.nonstandard_pairs;
    }
  }

  for (int s = 0; s < static_cast<int>(m.supports.size()); ++s) {
    if (m.supports[s].dim != sub_dim) continue;
    const SupportClass& sc = m.supports[s];
    for (int a = 0; a < sc.num_rational_classes(); ++a) {
      // The corrected expansion must hold for every regular rational v.
      for (int v = 0; v < m.supports[top].num_rational_classes(); ++v) {
        std::vector<LaurentPoly> rhs(m.total_rational_classes());
        for (int bi = 0; bi < static_cast<int>(m.blocks.size()); ++bi) {
          const BlockDatum& b = m.blocks[bi];
          auto c2 = block_c2_on_support(b, s);
          if (!c2) continue;
          std::vector<LaurentPoly> part =
              dgamma_class_block_values(m, dg, s, a, bi);
          // Correction: (q^{-1} - q) (sum over the block's standard pairs
          // of conj(Y_iota(u))) Y_{iota_1}(v) D Gamma_v^Lambda.
          Cyclotomic std_sum(0);
          for (int i = 0; i < static_cast<int>(b.pairs.size()); ++i)
            if (standard[bi][i] && b.pairs[i].support == s)
              std_sum = std_sum + sc.irr.rows[b.pairs[i].chi][a].conj();
          if (!std_sum.is_zero()) {
            std::vector<LaurentPoly> dv =
                dgamma_class_block_values(m, dg, top, v, bi);
            Cyclotomic y1v =
                m.supports[top].irr.rows[b.pairs[top_local[bi]].chi][v];
            for (std::size_t i = 0; i < part.size(); ++i)
              part[i] = part[i] + scale(dv[i] * correction, std_sum * y1v);
          }
          Cyclotomic front = Cyclotomic(b.eta) * b.zeta;
          LaurentPoly qc = LaurentPoly::q_power(*c2);
          for (std::size_t i = 0; i < rhs.size(); ++i)
            rhs[i] = rhs[i] + scale(part[i], front) * qc;
        }
        if (!(rhs == characteristic_fn(m, s, a).coeffs))
          report.subregular_ok = false;
      }
    }
  }
  return report;
}

}  // namespace detail

// Verifies the closed expansions of the characteristic functions of the top
// ("regular") classes, and of the classes one dimension layer down
// ("subregular") with the (q^{-1} - q) correction term, including the exact
// correction entry of Ptilde (Ptilde*)^{-1}. The model must have a unique
// top support with abelian component group, at most one top pair per block,
// and subregular Ptilde rows that are either exactly q^{-1} into the block's
// top pair (standard) or zero; anything else is rejected with a diagnostic.
inline RegularSubregularReport regular_and_subregular(const BlockModel& m) {
  auto solved = detail::solve_blocks(m);
  return detail::regular_subregular_impl(m, solved);
}

namespace detail {

inline bool val_us_impl(const BlockModel& m,
                        const std::vector<SolvedBlock>& solved,
                        const std::vector<std::vector<LaurentPoly>>& dg,
                        const ClassFn& f, int support, int cls) {
  std::vector<LaurentPoly> vals = values_from_y(m, y_from_fn(m, solved, f));
  int dim_v = m.supports[support].dim;
  int rc = 0;
  for (const auto& sc : m.supports)
    for (int c = 0; c < sc.num_rational_classes(); ++c, ++rc)
      if (sc.dim > dim_v) vals[rc] = LaurentPoly();
  LaurentPoly lhs = vals[m.rational_class_offset(support) + cls];
  LaurentPoly rhs;
  for (int bi = 0; bi < static_cast<int>(m.blocks.size()); ++bi) {
    const BlockDatum& b = m.blocks[bi];
    auto c2 = block_c2_on_support(b, support);
    if (!c2) continue;
    std::vector<LaurentPoly> dgv =
        dgamma_class_block_values(m, dg, support, cls, bi);
    LaurentPoly ip = inner_product_values(m, vals, dgv);
    Cyclotomic front = Cyclotomic(b.eta) * b.zeta.conj();
    rhs = rhs + scale(ip, front) * LaurentPoly::q_power(*c2);
  }
  return lhs == rhs;
}

}  // namespace detail

// Checks f(v) = sum over blocks of eta zeta^{-1} q^{c(v)} <f, D Gamma_v^block>
// after projecting f away from every support strictly above the class of v
// (zeroing the values there is enough, by the support property of the
// D Gamma transforms).
inline bool val_us_check(const BlockModel& m, const ClassFn& f, int support,
                         int cls) {
  if (f.model != &m)
    throw std::invalid_argument("val_us_check: function over a different model");
  auto solved = detail::solve_blocks(m);
  return detail::val_us_impl(m, solved, detail::dgamma_pair_values(m, solved),
                             f, support, cls);
}

namespace detail {

inline std::pair<LaurentPoly, LaurentPoly> gamma_cs_impl(
    const BlockModel& m, const std::vector<SolvedBlock>& solved, int pair,
    const std::vector<long>& nvec, int wf_support, int supp_support) {
  int bi = m.block_of_pair(pair);
  const BlockDatum& b = m.blocks[bi];
  int n = static_cast<int>(b.pairs.size());
  int off = m.pair_offset(bi);
  int local = pair - off;
  if (static_cast<int>(nvec.size()) != n)
    throw std::invalid_argument("gamma_cs_inner: nvec size mismatch");
  int wf_dim = m.supports[wf_support].dim;
  int supp_dim = m.supports[supp_support].dim;
  for (int k = 0; k < n; ++k) {
    if (nvec[k] == 0) continue;
    int sk = b.pairs[k].support;
    int shk = b.pairs[b.hat[k]].support;
    bool wf_ok = m.supports[shk].dim < wf_dim || shk == wf_support;
    bool supp_ok = m.supports[sk].dim < supp_dim || sk == supp_support;
    if (!wf_ok || !supp_ok)
      throw std::invalid_argument(
          "gamma_cs_inner: nvec violates the support constraints");
  }

  // The model Lusztig function sum_kappa n_kappa Xtilde_kappa, as values.
  ClassFn chi_e = zero_fn(m, FnBasis::X);
  for (int k = 0; k < n; ++k) chi_e.coeffs[off + k] = LaurentPoly(nvec[k]);
  std::vector<LaurentPoly> chi_vals =
      values_from_y(m, y_from_fn(m, solved, chi_e));

  // Values of Gtilde_iota and of its dual.
  std::vector<LaurentPoly> y_gt(m.total_pairs());
  for (int mu = 0; mu < n; ++mu) y_gt[off + mu] = solved[bi].gamma.at(local, mu);
  LaurentPoly direct1 =
      inner_product_values(m, values_from_y(m, y_gt), chi_vals);
  LaurentPoly direct2 = inner_product_values(
      m, values_from_y(m, dual_y(m, solved, y_gt)), chi_vals);

  LaurentPoly closed1, closed2;
  for (int k = 0; k < n; ++k) {
    int sk = b.pairs[k].support;
    if (m.supports[sk].dim < wf_dim || sk == wf_support)
      closed1 = closed1 + scale(b.ptilde.at(local, k).star(),
                                Cyclotomic(nvec[b.hat[k]] * b.eps[k]));
    if (m.supports[sk].dim < supp_dim || sk == supp_support)
      closed2 = closed2 + scale(b.ptilde.at(local, k).star(),
                                Cyclotomic(nvec[k] * b.eta));
  }
  if (!(direct1 == closed1) || !(direct2 == closed2))
    throw std::logic_error("gamma_cs_inner: closed form mismatch");

  // Collapsed one-term forms when the pair sits at wavefront or support level.
  int s_iota = b.pairs[local].support;
  if (m.supports[s_iota].dim >= wf_dim) {
    LaurentPoly expect =
        s_iota == wf_support
            ? LaurentPoly(Cyclotomic(nvec[b.hat[local]] * b.eps[local]))
            : LaurentPoly();
    if (!(direct1 == expect))
      throw std::logic_error("gamma_cs_inner: wavefront collapse mismatch");
  }
  if (m.supports[s_iota].dim >= supp_dim) {
    LaurentPoly expect = s_iota == supp_support
                             ? LaurentPoly(Cyclotomic(nvec[local] * b.eta))
                             : LaurentPoly();
    if (!(direct2 == expect))
      throw std::logic_error("gamma_cs_inner: support collapse mismatch");
  }

  // Mellin regrouping: for every rational class u, <Gamma_u, chi_E> =
  // zeta^{-1} sum over the block's pairs supported on the class of u of
  // conj(Y_iota'(u)) times the closed form for iota', collapsing to single
  // terms on the wavefront itself.
  std::vector<std::vector<LaurentPoly>> gt_vals_block(n);
  for (int i = 0; i < n; ++i) {
    std::vector<LaurentPoly> y(m.total_pairs());
    for (int mu = 0; mu < n; ++mu) y[off + mu] = solved[bi].gamma.at(i, mu);
    gt_vals_block[i] = values_from_y(m, y);
  }
  for (int s = 0; s < static_cast<int>(m.supports.size()); ++s) {
    const SupportClass& sc = m.supports[s];
    Cyclotomic inv_a = Cyclotomic(make_rational(1, sc.a()));
    for (int a = 0; a < sc.num_rational_classes(); ++a) {
      // Gamma_u restricted to this block: only this block's pairs pair
      // against chi_E, the rest of Gamma_u is orthogonal to its span.
      std::vector<LaurentPoly> gu_vals(m.total_rational_classes());
      for (int i = 0; i < n; ++i) {
        if (b.pairs[i].support != s) continue;
        Cyclotomic w = sc.irr.rows[b.pairs[i].chi][a].conj() * inv_a *
                       Cyclotomic(b.pairs[i].a) * b.zeta.conj();
        for (std::size_t j = 0; j < gu_vals.size(); ++j)
          gu_vals[j] = gu_vals[j] + scale(gt_vals_block[i][j], w);
      }
      LaurentPoly direct_u = inner_product_values(m, gu_vals, chi_vals);
      LaurentPoly closed_u;
      for (int i = 0; i < n; ++i) {
        if (b.pairs[i].support != s) continue;
        LaurentPoly inner;
        for (int k = 0; k < n; ++k) {
          int sk = b.pairs[k].support;
          if (m.supports[sk].dim < wf_dim || sk == wf_support)
            inner = inner + scale(b.ptilde.at(i, k).star(),
                                  Cyclotomic(nvec[b.hat[k]] * b.eps[k]));
        }
        closed_u =
            closed_u + scale(inner, sc.irr.rows[b.pairs[i].chi][a].conj());
      }
      closed_u = scale(closed_u, b.zeta.conj());
      if (!(direct_u == closed_u))
        throw std::logic_error("gamma_cs_inner: Mellin regrouping mismatch");
      if (s == wf_support) {
        LaurentPoly collapsed;
        for (int i = 0; i < n; ++i) {
          if (b.pairs[i].support != s) continue;
          collapsed = collapsed +
                      LaurentPoly(sc.irr.rows[b.pairs[i].chi][a].conj() *
                                  Cyclotomic(nvec[b.hat[i]] * b.eps[i]));
        }
        collapsed = scale(collapsed, b.zeta.conj());
        if (!(direct_u == collapsed))
          throw std::logic_error(
              "gamma_cs_inner: wavefront Mellin collapse mismatch");
      }
    }
  }
  return {direct1, direct2};
}

}  // namespace detail

// Inner products of Gtilde_iota and D(Gtilde_iota) with the model Lusztig
// function sum_kappa n_kappa Xtilde_kappa over iota's block. The vector n
// must obey the support constraints relative to the declared wavefront and
// support classes (rejected otherwise); the direct computations are checked
// against the closed-form sums of n_{hat kappa} eps_kappa Ptilde*_{iota
// kappa} and eta n_kappa Ptilde*_{iota kappa} over the admissible ranges,
// against their collapsed one-term forms when the dimension conditions hold,
// and against the Mellin regrouping over every rational class; any mismatch
// throws. Returns the two inner products.
inline std::pair<LaurentPoly, LaurentPoly> gamma_cs_inner(
    const BlockModel& m, int pair, const std::vector<long>& nvec,
    int wf_support, int supp_support) {
  if (wf_support < 0 || wf_support >= static_cast<int>(m.supports.size()) ||
      supp_support < 0 || supp_support >= static_cast<int>(m.supports.size()))
    throw std::invalid_argument("gamma_cs_inner: support index out of range");
  auto solved = detail::solve_blocks(m);
  return detail::gamma_cs_impl(m, solved, pair, nvec, wf_support, supp_support);
}

// ---------------------------------------------------------------------------
// Randomized suite
// ---------------------------------------------------------------------------

struct BlockSuiteReport {
  long models = 0;
  long instantiations = 0;
  // identity name -> {passed, run}
  std::map<std::string, std::array<long, 2>> identities;

  void record(const std::string& name, bool ok) {
    auto& slot = identities[name];
    slot[0] += ok ? 1 : 0;
    slot[1] += 1;
  }
  bool all_passed() const {
    for (const auto& [name, slot] : identities)
      if (slot[0] != slot[1]) return false;
    return true;
  }
};

namespace detail {

inline ClassFn random_fn(const BlockModel& m, ModelRng& rng, FnBasis basis) {
  std::size_t n = basis == FnBasis::Values
                      ? static_cast<std::size_t>(m.total_rational_classes())
                      : static_cast<std::size_t>(m.total_pairs());
  std::vector<LaurentPoly> coeffs(n);
  for (auto& c : coeffs)
    if (rng.flip()) c = random_laurent(rng, 2);
  return ClassFn{&m, basis, std::move(coeffs)};
}

// Values of the unit Y function of one pair.
inline std::vector<LaurentPoly> y_unit_values(const BlockModel& m, int gid) {
  std::vector<LaurentPoly> y(m.total_pairs());
  y[gid] = LaurentPoly(1);
  return values_from_y(m, y);
}

inline void run_block_checks(const BlockModel& m, ModelRng& rng, bool layered,
                             BlockSuiteReport& report) {
  bool ok = true;
  try {
    validate_model(m);
  } catch (const std::logic_error&) {
    ok = false;
  }
  report.record("invariants", ok);

  auto solved = solve_blocks(m);
  auto dg = dgamma_pair_values(m, solved);
  int np = m.total_pairs();

  // Values of Gtilde_iota and Xtilde_kappa for the Gram checks.
  std::vector<std::vector<LaurentPoly>> gt_vals(np), x_vals(np);
  int off = 0;
  for (int bi = 0; bi < static_cast<int>(m.blocks.size()); ++bi) {
    const BlockDatum& b = m.blocks[bi];
    int n = static_cast<int>(b.pairs.size());
    for (int i = 0; i < n; ++i) {
      std::vector<LaurentPoly> y(np);
      for (int mu = 0; mu < n; ++mu) y[off + mu] = solved[bi].gamma.at(i, mu);
      gt_vals[off + i] = values_from_y(m, y);
      for (int mu = 0; mu < n; ++mu)
        y[off + mu] = b.ptilde.at(mu, i) * LaurentPoly::q_power(b.pairs[mu].c2);
      x_vals[off + i] = values_from_y(m, y);
    }
    off += n;
  }

  // Round trips through every coordinate system.
  ClassFn f = random_fn(m, rng, FnBasis::Y);
  ok = true;
  for (FnBasis basis : {FnBasis::X, FnBasis::GammaTilde, FnBasis::Gamma,
                        FnBasis::DGamma, FnBasis::Values}) {
    ClassFn there{&m, basis, fn_from_y(m, solved, f.coeffs, basis)};
    ok = ok && y_from_fn(m, solved, there) == f.coeffs;
  }
  report.record("basis_roundtrip", ok);

  // Defining orthogonality of the Y basis.
  ok = true;
  for (int trial = 0; trial < 6; ++trial) {
    int i = static_cast<int>(rng.below(np));
    int j = static_cast<int>(rng.below(np));
    LaurentPoly ip =
        inner_product_values(m, y_unit_values(m, i), y_unit_values(m, j));
    LaurentPoly want;
    if (i == j)
      want = LaurentPoly(
          Cyclotomic(make_rational(1, m.supports[m.pair(i).support].z)));
    ok = ok && ip == want;
  }
  report.record("y_orthogonality", ok);

  // Gram condition re-verified from the solved basis, and its dual variant
  // <D Gamma_iota, Xtilde_lambda> = eta a zeta^{-1} Ptilde*_{iota lambda}.
  ok = true;
  bool dual_ok = true;
  off = 0;
  for (int bi = 0; bi < static_cast<int>(m.blocks.size()); ++bi) {
    const BlockDatum& b = m.blocks[bi];
    int n = static_cast<int>(b.pairs.size());
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        LaurentPoly got =
            inner_product_values(m, gt_vals[off + i], x_vals[off + b.hat[k]]);
        LaurentPoly want = scale(b.ptilde.at(i, k).star(), Cyclotomic(b.eps[k]));
        if (!(got == want)) ok = false;
        LaurentPoly got2 = inner_product_values(m, dg[off + i], x_vals[off + k]);
        LaurentPoly want2 =
            scale(b.ptilde.at(i, k).star(),
                  Cyclotomic(b.eta * b.pairs[i].a) * b.zeta.conj());
        if (!(got2 == want2)) dual_ok = false;
      }
    }
    off += n;
  }
  report.record("gram", ok);
  report.record("dgamma_gram", dual_ok);

  // Duality: the defining relation through the conversion pipeline.
  ok = true;
  off = 0;
  for (int bi = 0; bi < static_cast<int>(m.blocks.size()); ++bi) {
    const BlockDatum& b = m.blocks[bi];
    int n = static_cast<int>(b.pairs.size());
    for (int k = 0; k < n; ++k) {
      ClassFn x = zero_fn(m, FnBasis::X);
      x.coeffs[off + k] = LaurentPoly(1);
      std::vector<LaurentPoly> dx =
          values_from_y(m, dual_y(m, solved, y_from_fn(m, solved, x)));
      Cyclotomic front(b.eta * b.eps[k]);
      std::vector<LaurentPoly> want = x_vals[off + b.hat[k]];
      for (auto& w : want) w = scale(w, front);
      if (!(dx == want)) ok = false;
    }
    off += n;
  }
  report.record("duality_defining", ok);

  ok = true;
  bool adj = true;
  for (int trial = 0; trial < 4; ++trial) {
    ClassFn g1 = random_fn(m, rng, FnBasis::Y);
    ClassFn g2 = random_fn(m, rng, FnBasis::Y);
    std::vector<LaurentPoly> d1 = dual_y(m, solved, g1.coeffs);
    if (!(dual_y(m, solved, d1) == g1.coeffs)) ok = false;
    std::vector<LaurentPoly> v1 = values_from_y(m, g1.coeffs);
    std::vector<LaurentPoly> v2 = values_from_y(m, g2.coeffs);
    std::vector<LaurentPoly> dv1 = values_from_y(m, d1);
    std::vector<LaurentPoly> dv2 =
        values_from_y(m, dual_y(m, solved, g2.coeffs));
    if (!(inner_product_values(m, dv1, v2) == inner_product_values(m, v1, dv2)))
      adj = false;
  }
  report.record("duality_involution", ok);
  report.record("duality_self_adjoint", adj);

  // Characteristic-function expansion, in both groupings, plus the support
  // triangularity of the class transforms.
  std::vector<std::vector<LaurentPoly>> dgu(m.total_rational_classes());
  {
    int rc = 0;
    for (int t = 0; t < static_cast<int>(m.supports.size()); ++t)
      for (int v = 0; v < m.supports[t].num_rational_classes(); ++v, ++rc)
        dgu[rc] = dgamma_class_values(m, dg, t, v);
  }
  ok = true;
  bool regroup_ok = true;
  for (int s = 0; s < static_cast<int>(m.supports.size()); ++s) {
    for (int a = 0; a < m.supports[s].num_rational_classes(); ++a) {
      std::vector<LaurentPoly> want = characteristic_fn(m, s, a).coeffs;
      std::vector<LaurentPoly> d = chi_u_dgamma_coeffs(m, solved, s, a);
      std::vector<LaurentPoly> got(want.size());
      for (int k = 0; k < np; ++k) {
        if (d[k].is_zero()) continue;
        for (std::size_t i = 0; i < got.size(); ++i)
          got[i] = got[i] + d[k] * dg[k][i];
      }
      if (!(got == want)) ok = false;

      std::vector<LaurentPoly> c = chi_u_class_coeffs(m, solved, s, a);
      std::vector<LaurentPoly> total(want.size());
      int rc = 0;
      for (int t = 0; t < static_cast<int>(m.supports.size()); ++t) {
        const SupportClass& st = m.supports[t];
        const auto& classes = st.component_group->classes();
        for (int v = 0; v < st.num_rational_classes(); ++v, ++rc) {
          if (c[rc].is_zero()) continue;
          long centralizer =
              st.a() / static_cast<long>(classes[v].members.size());
          Cyclotomic w(make_rational(1, centralizer));
          for (std::size_t i = 0; i < total.size(); ++i)
            total[i] = total[i] + scale(c[rc] * dgu[rc][i], w);
        }
      }
      if (!(total == want)) regroup_ok = false;
    }
  }
  report.record("chi_u", ok);
  report.record("chi_u_regrouped", regroup_ok);

  report.record("scholium", scholium_impl(m, dg));

  // Values of D Gamma_iota on its own support against the closed form.
  ok = true;
  int gid = 0;
  for (const auto& b : m.blocks) {
    for (int i = 0; i < static_cast<int>(b.pairs.size()); ++i, ++gid) {
      const PairDatum& p = b.pairs[i];
      const SupportClass& sc = m.supports[p.support];
      int rc_off = m.rational_class_offset(p.support);
      for (int a = 0; a < sc.num_rational_classes(); ++a) {
        Cyclotomic scalar = Cyclotomic(p.a * sc.z * b.eta) * b.zeta.conj() *
                            sc.irr.rows[p.chi][a];
        LaurentPoly want = scale(LaurentPoly::q_power(-p.c2), scalar);
        if (!(dg[gid][rc_off + a] == want)) ok = false;
      }
    }
  }
  report.record("dgamma_value", ok);

  // Orthogonality corollary for pairs with a common support.
  ok = true;
  gid = 0;
  for (const auto& b : m.blocks) {
    for (int i = 0; i < static_cast<int>(b.pairs.size()); ++i, ++gid) {
      for (int kid = 0; kid < np; ++kid) {
        if (m.pair(kid).support != b.pairs[i].support) continue;
        LaurentPoly got = inner_product_values(m, dg[gid], y_unit_values(m, kid));
        LaurentPoly want;
        if (kid == gid)
          want = scale(LaurentPoly::q_power(-b.pairs[i].c2),
                       Cyclotomic(b.pairs[i].a * b.eta) * b.zeta.conj());
        if (!(got == want)) ok = false;
      }
    }
  }
  report.record("dgamma_y_orthogonality", ok);

  // Character values on the unipotent support, on sampled classes.
  ok = true;
  for (int trial = 0; trial < 4; ++trial) {
    int s = static_cast<int>(rng.below(static_cast<long>(m.supports.size())));
    int a = static_cast<int>(rng.below(m.supports[s].num_rational_classes()));
    if (!val_us_impl(m, solved, dg, characteristic_fn(m, s, a), s, a)) ok = false;
    if (!val_us_impl(m, solved, dg, random_fn(m, rng, FnBasis::Values), s, a))
      ok = false;
  }
  report.record("val_us", ok);

  // Lusztig-function inner products with admissible random n vectors: the
  // wavefront and support classes are taken to be the block's top support.
  ok = true;
  try {
    for (int bi = 0; bi < static_cast<int>(m.blocks.size()); ++bi) {
      const BlockDatum& b = m.blocks[bi];
      int n = static_cast<int>(b.pairs.size());
      int boff = m.pair_offset(bi);
      int wf = b.pairs[n - 1].support;
      std::vector<long> nvec(n);
      for (int k = 0; k < n; ++k) {
        int sk = b.pairs[k].support;
        int shk = b.pairs[b.hat[k]].support;
        bool wf_ok = m.supports[shk].dim < m.supports[wf].dim || shk == wf;
        bool supp_ok = m.supports[sk].dim < m.supports[wf].dim || sk == wf;
        if (wf_ok && supp_ok) nvec[k] = rng.below(7) - 3;
      }
      gamma_cs_impl(m, solved, boff + static_cast<int>(rng.below(n)), nvec, wf,
                    wf);
      gamma_cs_impl(m, solved, boff + n - 1, nvec, wf, wf);
    }
  } catch (const std::logic_error&) {
    ok = false;
  }
  report.record("gamma_cs", ok);

  if (layered) {
    try {
      RegularSubregularReport r = regular_subregular_impl(m, solved);
      report.record("regular", r.regular_ok);
      if (r.subregular_checked) report.record("subregular", r.subregular_ok);
    } catch (const std::invalid_argument&) {
      report.record("regular", false);
    }
  }
}

}  // namespace detail

// Runs the full randomized identity suite: `seeds` random models over cycling
// shape presets (including layered ones, so the regular and subregular
// expansions are exercised), three z instantiations each. The optional
// `first` shifts the seed window, so callers can explore disjoint batches.
inline BlockSuiteReport verify_block_suite(int seeds, int first = 0) {
  if (seeds < 1)
    throw std::invalid_argument("verify_block_suite: need at least one seed");
  if (first < 0)
    throw std::invalid_argument("verify_block_suite: first seed must be >= 0");
  BlockSuiteReport report;
  for (int seed = first; seed < first + seeds; ++seed) {
    BlockModelShape shape;
    shape.num_supports = 1 + seed % 4 + (seed % 7 == 0 ? 2 : 0);
    shape.num_blocks = 1 + (seed / 2) % 3;
    shape.layered = seed % 3 == 0 && shape.num_supports >= 2;
    shape.chain = shape.layered || seed % 5 == 0;
    BlockModel base = random_block_model(static_cast<unsigned long>(seed), shape);
    ++report.models;
    for (int zi = 0; zi < 3; ++zi) {
      BlockModel m =
          zi == 0 ? base
                  : reinstantiate_z(base,
                                    static_cast<unsigned long>(seed * 3 + zi));
      detail::ModelRng rng(static_cast<std::uint64_t>(seed) * 977ULL +
                           static_cast<std::uint64_t>(zi));
      ++report.instantiations;
      detail::run_block_checks(m, rng, shape.layered, report);
    }
  }
  return report;
}

}  // namespace charsheaf
