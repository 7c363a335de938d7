#pragma once

// Small finite groups given by explicit multiplication tables: symmetric
// groups up to S_6, cyclic groups, elementary abelian 2-groups, the dihedral
// group of order 8, direct products, and subgroups cut out of any of these
// (centralizers in particular). Elements are integer indices; the identity
// always has index 0.
//
// Conjugacy classes are computed eagerly and stored in a canonical order
// (class size, then smallest member), so every consumer sees the same
// indexing. Subgroup tables remember the parent and the embedding.

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace charsheaf {

enum class GroupKind {
  symmetric,
  cyclic,
  elementary_abelian_2,
  dihedral8,
  product,
  subgroup,
};

struct ConjClass {
  int rep;                   // smallest member index
  std::vector<int> members;  // ascending
  int size() const { return static_cast<int>(members.size()); }
};

class FiniteGroupTable {
 public:
  // --- constructors -------------------------------------------------------

  // S_k acting on {0,...,k-1}; elements are the k! permutations in
  // lexicographic one-line order, so the identity is element 0.
  // mul(a,b) composes b first: (a*b)(i) = a(b(i)).
  static FiniteGroupTable symmetric(int k) {
    if (k < 1 || k > 6)
      throw std::invalid_argument("symmetric: supported range is 1 <= k <= 6");
    std::vector<int> base(k);
    std::iota(base.begin(), base.end(), 0);
    std::vector<std::vector<int>> perms;
    std::vector<int> p = base;
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    int n = static_cast<int>(perms.size());
    std::map<std::vector<int>, int> index;
    for (int i = 0; i < n; ++i) index[perms[i]] = i;

    FiniteGroupTable g;
    g.kind_ = GroupKind::symmetric;
    g.param_ = k;
    g.n_ = n;
    g.perms_ = perms;
    g.mul_.assign(static_cast<std::size_t>(n) * n, 0);
    std::vector<int> comp(k);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        for (int i = 0; i < k; ++i) comp[i] = perms[a][perms[b][i]];
        g.mul_[static_cast<std::size_t>(a) * n + b] = index.at(comp);
      }
    g.finish();
    return g;
  }

  // Z/m, element i standing for the i-th power of a fixed generator.
  static FiniteGroupTable cyclic(int m) {
    if (m < 1) throw std::invalid_argument("cyclic: order must be positive");
    FiniteGroupTable g;
    g.kind_ = GroupKind::cyclic;
    g.param_ = m;
    g.n_ = m;
    g.mul_.assign(static_cast<std::size_t>(m) * m, 0);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        g.mul_[static_cast<std::size_t>(a) * m + b] = (a + b) % m;
    g.finish();
    return g;
  }

  // (Z/2)^rank, elements are bit masks.
  static FiniteGroupTable elementary_abelian_2(int rank) {
    if (rank < 1 || rank > 7)
      throw std::invalid_argument("elementary_abelian_2: rank out of range");
    int n = 1 << rank;
    FiniteGroupTable g;
    g.kind_ = GroupKind::elementary_abelian_2;
    g.param_ = rank;
    g.n_ = n;
    g.mul_.assign(static_cast<std::size_t>(n) * n, 0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        g.mul_[static_cast<std::size_t>(a) * n + b] = a ^ b;
    g.finish();
    return g;
  }

  // Dihedral group of order 8: element r + 4s with r a rotation exponent
  // mod 4 and s a reflection bit; s r s = r^{-1}.
  static FiniteGroupTable dihedral8() {
    FiniteGroupTable g;
    g.kind_ = GroupKind::dihedral8;
    g.param_ = 8;
    g.n_ = 8;
    g.mul_.assign(64, 0);
    auto idx = [](int r, int s) { return ((r % 4 + 4) % 4) + 4 * s; };
    for (int r1 = 0; r1 < 4; ++r1)
      for (int s1 = 0; s1 < 2; ++s1)
        for (int r2 = 0; r2 < 4; ++r2)
          for (int s2 = 0; s2 < 2; ++s2)
            g.mul_[static_cast<std::size_t>(idx(r1, s1)) * 8 + idx(r2, s2)] =
                idx(s1 ? r1 - r2 : r1 + r2, s1 ^ s2);
    g.finish();
    return g;
  }

  // Direct product; element (a, b) has index a * |B| + b.
  static FiniteGroupTable product(const FiniteGroupTable& a,
                                  const FiniteGroupTable& b) {
    FiniteGroupTable g;
    g.kind_ = GroupKind::product;
    g.left_ = std::make_shared<FiniteGroupTable>(a);
    g.right_ = std::make_shared<FiniteGroupTable>(b);
    int na = a.size(), nb = b.size();
    g.n_ = na * nb;
    g.mul_.assign(static_cast<std::size_t>(g.n_) * g.n_, 0);
    for (int a1 = 0; a1 < na; ++a1)
      for (int b1 = 0; b1 < nb; ++b1)
        for (int a2 = 0; a2 < na; ++a2)
          for (int b2 = 0; b2 < nb; ++b2)
            g.mul_[static_cast<std::size_t>(a1 * nb + b1) * g.n_ +
                   (a2 * nb + b2)] = a.mul(a1, a2) * nb + b.mul(b1, b2);
    g.finish();
    return g;
  }

  // --- basic structure ----------------------------------------------------

  int size() const { return n_; }
  int id() const { return 0; }
  int mul(int a, int b) const {
    return mul_[static_cast<std::size_t>(a) * n_ + b];
  }
  int inv(int a) const { return inv_[a]; }
  int conjugate(int g, int x) const { return mul(mul(g, x), inv(g)); }

  GroupKind kind() const { return kind_; }
  int param() const { return param_; }
  const std::vector<int>& mul_table() const { return mul_; }
  const FiniteGroupTable& left_factor() const { return *left_; }
  const FiniteGroupTable& right_factor() const { return *right_; }

  // Product-coordinate helpers (product kind only).
  int product_index(int a, int b) const { return a * right_->size() + b; }
  std::pair<int, int> product_parts(int x) const {
    return {x / right_->size(), x % right_->size()};
  }

  // One-line permutation (symmetric kind only).
  const std::vector<int>& permutation(int x) const { return perms_[x]; }

  // Cycle type as a descending partition of k (symmetric kind only).
  std::vector<int> cycle_type(int x) const {
    if (kind_ != GroupKind::symmetric)
      throw std::invalid_argument("cycle_type: not a symmetric group");
    const auto& p = perms_[x];
    std::vector<bool> seen(p.size(), false);
    std::vector<int> parts;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (seen[i]) continue;
      int len = 0;
      std::size_t j = i;
      while (!seen[j]) {
        seen[j] = true;
        j = p[j];
        ++len;
      }
      parts.push_back(len);
    }
    std::sort(parts.rbegin(), parts.rend());
    return parts;
  }

  int element_order(int x) const {
    int ord = 1, y = x;
    while (y != 0) {
      y = mul(y, x);
      ++ord;
    }
    return ord;
  }

  bool is_abelian() const {
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  std::vector<int> center() const {
    std::vector<int> z;
    for (int a = 0; a < n_; ++a) {
      bool central = true;
      for (int b = 0; b < n_ && central; ++b)
        if (mul(a, b) != mul(b, a)) central = false;
      if (central) z.push_back(a);
    }
    return z;
  }

  // --- conjugacy classes --------------------------------------------------

  const std::vector<ConjClass>& classes() const { return classes_; }
  int class_of(int x) const { return class_of_[x]; }
  int class_rep(int c) const { return classes_[c].rep; }
  int num_classes() const { return static_cast<int>(classes_.size()); }

  // --- subgroups ----------------------------------------------------------

  // Subgroup on the given parent elements (must be closed); elements are
  // re-indexed in ascending parent order, so index 0 is the identity.
  FiniteGroupTable subgroup(std::vector<int> elements) const {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()),
                   elements.end());
    if (elements.empty() || elements[0] != 0)
      throw std::invalid_argument("subgroup: must contain the identity");
    int m = static_cast<int>(elements.size());
    std::vector<int> from_parent(n_, -1);
    for (int i = 0; i < m; ++i) from_parent[elements[i]] = i;

    FiniteGroupTable g;
    g.kind_ = GroupKind::subgroup;
    g.n_ = m;
    g.mul_.assign(static_cast<std::size_t>(m) * m, 0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        int prod = mul(elements[i], elements[j]);
        int sub = from_parent[prod];
        if (sub < 0)
          throw std::invalid_argument("subgroup: element set is not closed");
        g.mul_[static_cast<std::size_t>(i) * m + j] = sub;
      }
    g.embedding_ = std::move(elements);
    g.from_parent_ = std::move(from_parent);
    g.finish();
    return g;
  }

  // Closure of a generating set.
  std::vector<int> generated_subgroup(const std::vector<int>& gens) const {
    std::set<int> closure = {0};
    std::vector<int> frontier = {0};
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int x : frontier)
        for (int g : gens) {
          int y = mul(x, g);
          if (closure.insert(y).second) next.push_back(y);
        }
      frontier = std::move(next);
    }
    return std::vector<int>(closure.begin(), closure.end());
  }

  // Centralizer C(x) as a subgroup table. centralizer of the identity (or of
  // a central element) is the whole group: the original table is returned
  // with an identity embedding, preserving its constructor tag.
  FiniteGroupTable centralizer(int x) const {
    std::vector<int> elems;
    for (int gidx = 0; gidx < n_; ++gidx)
      if (mul(gidx, x) == mul(x, gidx)) elems.push_back(gidx);
    if (static_cast<int>(elems.size()) == n_) {
      FiniteGroupTable whole = *this;
      whole.embedding_.resize(n_);
      std::iota(whole.embedding_.begin(), whole.embedding_.end(), 0);
      whole.from_parent_ = whole.embedding_;
      return whole;
    }
    return subgroup(std::move(elems));
  }

  // Subgroup-to-parent element maps (identity maps for whole groups).
  const std::vector<int>& embedding() const { return embedding_; }
  int to_parent(int sub_idx) const { return embedding_[sub_idx]; }
  int from_parent(int parent_idx) const {
    int s = from_parent_[parent_idx];
    if (s < 0) throw std::invalid_argument("from_parent: element not in subgroup");
    return s;
  }
  bool has_embedding() const { return !embedding_.empty(); }

  std::string describe() const {
    std::ostringstream os;
    switch (kind_) {
      case GroupKind::symmetric: os << "S" << param_; break;
      case GroupKind::cyclic: os << "Z/" << param_; break;
      case GroupKind::elementary_abelian_2: os << "(Z/2)^" << param_; break;
      case GroupKind::dihedral8: os << "D8"; break;
      case GroupKind::product:
        os << left_->describe() << " x " << right_->describe();
        break;
      case GroupKind::subgroup: os << "subgroup of order " << n_; break;
    }
    return os.str();
  }

 private:
  FiniteGroupTable() = default;

  // Computes inverses, validates the axioms, and computes classes.
  void finish() {
    inv_.assign(n_, -1);
    for (int a = 0; a < n_; ++a) {
      for (int b = 0; b < n_; ++b)
        if (mul(a, b) == 0 && mul(b, a) == 0) {
          inv_[a] = b;
          break;
        }
      if (inv_[a] < 0) throw std::logic_error("group table: missing inverse");
      if (mul(a, 0) != a || mul(0, a) != a)
        throw std::logic_error("group table: 0 is not an identity");
    }
    // Full associativity check for small tables only; larger tables come
    // from constructions that are associative by design.
    if (n_ <= 120) {
      for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
          for (int c = 0; c < n_; ++c)
            if (mul(mul(a, b), c) != mul(a, mul(b, c)))
              throw std::logic_error("group table: not associative");
    }
    compute_classes();
  }

  void compute_classes() {
    class_of_.assign(n_, -1);
    std::vector<ConjClass> classes;
    for (int x = 0; x < n_; ++x) {
      if (class_of_[x] != -1) continue;
      std::set<int> orbit;
      for (int g = 0; g < n_; ++g) orbit.insert(conjugate(g, x));
      ConjClass c;
      c.members.assign(orbit.begin(), orbit.end());
      c.rep = c.members.front();
      for (int m : c.members) class_of_[m] = -2;  // mark, renumber below
      classes.push_back(std::move(c));
    }
    std::sort(classes.begin(), classes.end(),
              [](const ConjClass& a, const ConjClass& b) {
                if (a.members.size() != b.members.size())
                  return a.members.size() < b.members.size();
                return a.rep < b.rep;
              });
    classes_ = std::move(classes);
    for (int c = 0; c < static_cast<int>(classes_.size()); ++c)
      for (int m : classes_[c].members) class_of_[m] = c;
  }

  GroupKind kind_ = GroupKind::subgroup;
  int param_ = 0;
  int n_ = 0;
  std::vector<int> mul_;
  std::vector<int> inv_;
  std::vector<std::vector<int>> perms_;  // symmetric kind only
  std::shared_ptr<const FiniteGroupTable> left_, right_;  // product kind
  std::vector<ConjClass> classes_;
  std::vector<int> class_of_;
  std::vector<int> embedding_;    // subgroup element -> parent element
  std::vector<int> from_parent_;  // parent element -> subgroup element or -1
};

}  // namespace charsheaf
