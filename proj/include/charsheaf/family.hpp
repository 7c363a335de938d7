#pragma once

// Pair sets attached to a finite group: M(G) of (class, centralizer
// character) pairs and M'(G) of commuting element pairs up to simultaneous
// conjugation, together with the Fourier transform matrix on M(G), Mellin
// transform vectors, and the change of basis between irreducible and almost
// characters. The sign obstruction test at the end rules out the negative
// root-of-unity alternative for the supported group shapes.

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "charsheaf/character.hpp"
#include "charsheaf/cyclotomic.hpp"
#include "charsheaf/group.hpp"
#include "charsheaf/matrix.hpp"

namespace charsheaf {

struct MPair {
  int x_class = 0;  // conjugacy class id in G
  int chi = 0;      // row id in the canonical character table of C(x)

  friend bool operator==(const MPair& a, const MPair& b) {
    return a.x_class == b.x_class && a.chi == b.chi;
  }
  friend bool operator<(const MPair& a, const MPair& b) {
    if (a.x_class != b.x_class) return a.x_class < b.x_class;
    return a.chi < b.chi;
  }
};

struct MPrimePair {
  int x = 0;
  int y = 0;

  friend bool operator==(const MPrimePair& a, const MPrimePair& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator<(const MPrimePair& a, const MPrimePair& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }
};

struct FamilyDatum {
  FiniteGroupTable group;
  bool exceptional = false;
  int delta = 1;

  FamilyDatum(FiniteGroupTable g, bool exceptional_family = false,
              int delta_sign = 1)
      : group(std::move(g)), exceptional(exceptional_family), delta(delta_sign) {
    if (delta != 1 && delta != -1)
      throw std::invalid_argument("FamilyDatum: delta must be +1 or -1");
    if (exceptional && group.size() != 2)
      throw std::invalid_argument(
          "FamilyDatum: the exceptional convention requires a group of order 2");
  }
};

struct TransformMatrix {
  std::vector<MPair> index;
  Matrix<Cyclotomic> entries;
};

namespace detail {

// Everything m-set shaped ops need about one group: the centralizer of each
// class representative, its character table, and the flat pair indexing.
// Memoized on the multiplication table, since centralizer tables are costly
// to rebuild inside elementwise loops.
struct MSetData {
  std::vector<MPair> pairs;
  std::vector<FiniteGroupTable> centralizers;  // one per class
  std::vector<CharacterTable> tables;          // one per class
  std::vector<int> offset;                     // pair index of (class c, 0)

  int pair_index(int x_class, int chi) const { return offset[x_class] + chi; }
};

inline const MSetData& m_set_data(const FiniteGroupTable& g) {
  static std::mutex mutex;
  static std::map<std::vector<int>, std::shared_ptr<const MSetData>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(g.mul_table());
  if (it == cache.end()) {
    auto data = std::make_shared<MSetData>();
    for (int c = 0; c < g.num_classes(); ++c) {
      data->centralizers.push_back(g.centralizer(g.class_rep(c)));
      data->tables.push_back(character_table(data->centralizers.back()));
      data->offset.push_back(static_cast<int>(data->pairs.size()));
      for (int t = 0; t < data->tables.back().num_irreducibles(); ++t)
        data->pairs.push_back(MPair{c, t});
    }
    it = cache.emplace(g.mul_table(), std::move(data)).first;
  }
  return *it->second;
}

// Conjugates the commuting pair (x, y) so that x becomes its canonical class
// representative, and reads off the centralizer-character values at the
// transported y.
inline std::vector<Cyclotomic> mellin_vector_impl(const FiniteGroupTable& g,
                                                  const MSetData& data, int x,
                                                  int y) {
  int cx = g.class_of(x);
  int x0 = g.class_rep(cx);
  int mover = -1;
  for (int h = 0; h < g.size(); ++h)
    if (g.conjugate(h, x) == x0) {
      mover = h;
      break;
    }
  int y0 = g.conjugate(mover, y);
  const FiniteGroupTable& cent = data.centralizers[cx];
  const CharacterTable& table = data.tables[cx];
  std::vector<Cyclotomic> out(data.pairs.size(), Cyclotomic(0));
  int ys = cent.from_parent(y0);
  for (int t = 0; t < table.num_irreducibles(); ++t)
    out[data.pair_index(cx, t)] = table.value_at(t, ys);
  return out;
}

// The nontrivial linear character of an order-2 group, as values on elements.
inline Cyclotomic order_two_sign(const CharacterTable& table, int element) {
  for (int i = 0; i < table.num_irreducibles(); ++i)
    if (!table.rows[i][1].is_one()) return table.value_at(i, element);
  throw std::logic_error("order_two_sign: no nontrivial character");
}

}  // namespace detail

inline std::vector<MPair> m_set(const FiniteGroupTable& g) {
  return detail::m_set_data(g).pairs;
}

inline std::vector<MPrimePair> m_prime_set(const FiniteGroupTable& g) {
  std::set<MPrimePair> reps;
  for (int x = 0; x < g.size(); ++x)
    for (int y = 0; y < g.size(); ++y) {
      if (g.mul(x, y) != g.mul(y, x)) continue;
      MPrimePair best{x, y};
      for (int h = 0; h < g.size(); ++h) {
        MPrimePair moved{g.conjugate(h, x), g.conjugate(h, y)};
        best = std::min(best, moved);
      }
      reps.insert(best);
    }
  return std::vector<MPrimePair>(reps.begin(), reps.end());
}

// Pairing {(x,sigma),(y,tau)} summed over group elements h for which x
// commutes with h y h^{-1}: sigma(h y h^{-1}) conj(tau(h^{-1} x h)),
// normalized by the two centralizer orders.
inline TransformMatrix fourier_matrix(const FamilyDatum& f) {
  const FiniteGroupTable& g = f.group;
  const detail::MSetData& data = detail::m_set_data(g);
  int m = static_cast<int>(data.pairs.size());
  Matrix<Cyclotomic> entries(m, m);

  for (int i = 0; i < m; ++i) {
    const MPair& p = data.pairs[i];
    int x0 = g.class_rep(p.x_class);
    const FiniteGroupTable& cx = data.centralizers[p.x_class];
    const CharacterTable& tx = data.tables[p.x_class];
    for (int j = 0; j < m; ++j) {
      const MPair& q = data.pairs[j];
      int y0 = g.class_rep(q.x_class);
      const FiniteGroupTable& cy = data.centralizers[q.x_class];
      const CharacterTable& ty = data.tables[q.x_class];

      Cyclotomic sum(0);
      for (int h = 0; h < g.size(); ++h) {
        int moved_y = g.conjugate(h, y0);
        if (g.mul(x0, moved_y) != g.mul(moved_y, x0)) continue;
        int moved_x = g.conjugate(g.inv(h), x0);
        sum = sum + tx.value_at(p.chi, cx.from_parent(moved_y)) *
                        conj(ty.value_at(q.chi, cy.from_parent(moved_x)));
      }
      Rational scale = make_rational(1, static_cast<long>(cx.size()) * cy.size());
      entries.at(i, j) = Cyclotomic(scale) * sum;
    }
  }
  return TransformMatrix{data.pairs, std::move(entries)};
}

// Coefficients of the Mellin transform of the commuting pair (x, y) in the
// irreducible basis, over the canonical M(G) order.
inline std::vector<Cyclotomic> mellin_vector(const FamilyDatum& f, int x,
                                             int y) {
  const FiniteGroupTable& g = f.group;
  if (x < 0 || x >= g.size() || y < 0 || y >= g.size())
    throw std::invalid_argument("mellin_vector: element out of range");
  if (g.mul(x, y) != g.mul(y, x))
    throw std::invalid_argument("mellin_vector: elements do not commute");
  return detail::mellin_vector_impl(g, detail::m_set_data(g), x, y);
}

namespace detail {

// Solves the defining relation of the almost characters against the Mellin
// vectors, one block per class of y. Rows of the result express each
// R_(y,tau) in the irreducible basis.
inline TransformMatrix solve_almost_to_rho(const FamilyDatum& f) {
  const FiniteGroupTable& g = f.group;
  const detail::MSetData& data = detail::m_set_data(g);
  int m = static_cast<int>(data.pairs.size());
  Matrix<Cyclotomic> result(m, m);

  for (int cy = 0; cy < g.num_classes(); ++cy) {
    int y0 = g.class_rep(cy);
    const FiniteGroupTable& cent = data.centralizers[cy];
    const CharacterTable& table = data.tables[cy];
    int b = table.num_irreducibles();

    Matrix<Cyclotomic> coeffs(b, b);
    Matrix<Cyclotomic> rhs(b, m);
    for (int e = 0; e < b; ++e) {
      int xs = cent.class_rep(e);
      int xp = cent.to_parent(xs);
      auto mu = detail::mellin_vector_impl(g, data, xp, y0);
      for (int j = 0; j < m; ++j) rhs.at(e, j) = mu[j];
      for (int t = 0; t < b; ++t) {
        if (f.exceptional)
          coeffs.at(e, t) = detail::order_two_sign(table, xs) *
                            conj(table.value_at(t, xs));
        else
          coeffs.at(e, t) = Cyclotomic(f.delta) * table.value_at(t, xs);
      }
    }
    Matrix<Cyclotomic> solved = field_solve(coeffs, rhs);
    for (int t = 0; t < b; ++t)
      for (int j = 0; j < m; ++j)
        result.at(data.pair_index(cy, t), j) = solved.at(t, j);
  }
  return TransformMatrix{data.pairs, std::move(result)};
}

// The solve is expensive enough that the elementwise consumers (and the
// obstruction sweep in particular) share one result per family.
inline const TransformMatrix& almost_to_rho_cached(const FamilyDatum& f) {
  static std::mutex mutex;
  static std::map<std::tuple<std::vector<int>, bool, int>,
                  std::shared_ptr<const TransformMatrix>>
      cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_tuple(f.group.mul_table(), f.exceptional, f.delta);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache
             .emplace(std::move(key), std::make_shared<TransformMatrix>(
                                          solve_almost_to_rho(f)))
             .first;
  return *it->second;
}

}  // namespace detail

inline TransformMatrix almost_to_rho(const FamilyDatum& f) {
  return detail::almost_to_rho_cached(f);
}

inline TransformMatrix rho_to_almost(const FamilyDatum& f) {
  const TransformMatrix& a = detail::almost_to_rho_cached(f);
  return TransformMatrix{a.index, field_inverse(a.entries)};
}

// True iff the candidate expansion with the negative unit, delta mu_(g,1)
// - 2 eta(g^{-1}) R_(1,eta), fails to have non-negative integral
// coefficients, which is what rules the negative unit out.
inline bool zeta_sign_obstruction(const FamilyDatum& f, int eta, int g_elt) {
  const FiniteGroupTable& g = f.group;
  const detail::MSetData& data = detail::m_set_data(g);
  const CharacterTable& whole = data.tables[0];
  if (eta < 0 || eta >= whole.num_irreducibles())
    throw std::invalid_argument("zeta_sign_obstruction: bad character index");
  if (g_elt < 0 || g_elt >= g.size())
    throw std::invalid_argument("zeta_sign_obstruction: element out of range");

  if (g.kind() == GroupKind::symmetric && g.param() >= 3 && g.param() <= 5) {
    for (int c = 0; c < g.num_classes(); ++c) {
      int parts = static_cast<int>(g.cycle_type(g.class_rep(c)).size());
      long sign = ((g.param() - parts) % 2 == 0) ? 1 : -1;
      if (whole.rows[eta][c] != Cyclotomic(sign))
        throw std::invalid_argument(
            "zeta_sign_obstruction: eta must be the sign character");
    }
  } else if (g.kind() == GroupKind::elementary_abelian_2 && g.param() >= 2) {
    if (eta == whole.trivial_index())
      throw std::invalid_argument(
          "zeta_sign_obstruction: eta must be nontrivial");
  } else {
    throw std::invalid_argument(
        "zeta_sign_obstruction: unsupported group for the obstruction");
  }

  const TransformMatrix& a2r = detail::almost_to_rho_cached(f);
  std::vector<Cyclotomic> mu = mellin_vector(f, g_elt, 0);
  int row = data.pair_index(0, eta);
  Cyclotomic eta_at_inverse = whole.value_at(eta, g.inv(g_elt));

  for (std::size_t j = 0; j < mu.size(); ++j) {
    Cyclotomic v = Cyclotomic(f.delta) * mu[j] -
                   Cyclotomic(2) * eta_at_inverse *
                       a2r.entries.at(row, static_cast<int>(j));
    if (!v.is_rational()) return true;  // non-integral in particular
    Rational r = v.as_rational();
    if (r < 0 || r.get_den() != 1) return true;
  }
  return false;
}

}  // namespace charsheaf
