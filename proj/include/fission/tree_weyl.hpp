#pragma once

// Interior Weyl groups of leaves, the tree Weyl group Aut(T) x| W', and its
// action on pointed types.  Inner tuples (d_i, eps_i) are enumerated
// explicitly over the product of interior groups and filtered by the exact
// root-of-unity constraints.

#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fission/tree.hpp"

namespace fission {

struct InteriorWeyl {
  int leaf = 0;
  long r = 1;           // cyclic part Z/r (1 when absent)
  bool hasSign = false; // extra Z^x factor
  long size() const { return hasSign ? 2 * r : r; }
};

// (Z/r_i) x Z^x for nonempty nonspecial data, Z/r_i for nonempty special,
// trivial for an empty BC datum; Z^x alone for the D empty flavours; the A
// case drops the sign throughout.
inline InteriorWeyl interior_weyl(const FissionTree& T, int leaf) {
  const LevelDatum& L = T.datum.data.at(leaf).second;
  InteriorWeyl w;
  w.leaf = leaf;
  if (T.kind == LKind::D && (L.empty_d() || L.empty_bc())) {
    w.hasSign = true;
    return w;
  }
  if (L.levels.empty()) return w;  // trivial
  w.r = L.ram();
  w.hasSign = T.kind != LKind::A && !L.special();
  return w;
}

struct TreeWeylElement {
  std::vector<int> perm;  // entry permutation (identity for inner elements)
  std::vector<long> d;    // per leaf, mod r_i
  std::vector<int> eps;   // per leaf, +-1

  friend bool operator==(const TreeWeylElement& a, const TreeWeylElement& b) {
    return a.perm == b.perm && a.d == b.d && a.eps == b.eps;
  }
};

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(long needed, long cap)
      : std::runtime_error("enumeration budget exceeded: needs " +
                           std::to_string(needed) + " > cap " +
                           std::to_string(cap)) {}
};

inline long default_budget() {
  if (const char* s = std::getenv("FISSION_LAB_BUDGET")) {
    long v = std::atol(s);
    if (v > 0) return v;
  }
  return 2'000'000;
}

struct TreeWeylGroup {
  LKind caseTag = LKind::BC;
  std::vector<InteriorWeyl> interior;
  std::vector<std::vector<int>> autGenerators;
  long autOrder = 1;
  std::vector<TreeWeylElement> inner;  // W' tuples, identity permutation
  long order = 1;                      // autOrder * |W'|
  std::vector<std::vector<long>> rij;  // constraint moduli (r~ in case D)
};

namespace detail {

// ramification of L_i above the meeting height of the branches of i and j
inline long common_ramification(const FissionTree& T, int i, int j,
                                const std::vector<Q>& Li,
                                const std::vector<Q>& Lj) {
  std::map<int, bool> anc;
  for (int v = T.leaves[i]; v >= 0; v = T.verts[v].parent) anc[v] = true;
  int v = T.leaves[j];
  while (!anc.count(v)) v = T.verts[v].parent;
  auto ram_above = [&](const std::vector<Q>& L) {
    long r = 1;
    for (const Q& l : L)
      if (T.verts[v].at_infinity ? false : l >= T.verts[v].height)
        r = lcm_long(r, q_den(l));
    return r;
  };
  long ri = ram_above(Li), rj = ram_above(Lj);
  if (ri != rj)
    throw std::logic_error("branches disagree on the common ramification");
  return ri;
}

// admissible heights shared by the branches of i and j: the heights of the
// glued vertices from their meeting vertex up to the root
inline std::vector<Q> shared_heights(const FissionTree& T, int i, int j) {
  std::set<int> anc;
  for (int v = T.leaves[i]; v >= 0; v = T.verts[v].parent) anc.insert(v);
  int v = T.leaves[j];
  while (!anc.count(v)) v = T.verts[v].parent;
  std::vector<Q> es;
  for (; v >= 0; v = T.verts[v].parent) {
    const TreeVertex& w = T.verts[v];
    if (w.kind == VKind::Mandatory || w.kind == VKind::Inconsequential)
      es.push_back(w.height);
  }
  return es;
}

}  // namespace detail

inline TreeWeylGroup tree_weyl_group(const FissionTree& T,
                                     std::optional<long> budget = std::nullopt) {
  TreeWeylGroup G;
  G.caseTag = T.kind;
  const int p = static_cast<int>(T.leaves.size());
  for (int i = 0; i < p; ++i) G.interior.push_back(interior_weyl(T, i));

  AutGroup aut = automorphisms(T);
  G.autOrder = aut.order;
  G.autGenerators = aut.generators;

  // constraint moduli
  G.rij.assign(p, std::vector<long>(p, 1));
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) {
      const LevelDatum& Li = T.datum.data[i].second;
      const LevelDatum& Lj = T.datum.data[j].second;
      long r = detail::common_ramification(T, i, j, Li.levels, Lj.levels);
      if (T.kind == LKind::D && (Li.empty_d() || Lj.empty_d())) r = 1;
      G.rij[i][j] = G.rij[j][i] = r;
    }

  long cap = budget ? *budget : default_budget();
  long total = 1;
  for (const auto& w : G.interior) {
    total *= w.size();
    if (total > cap) throw BudgetExceeded(total, cap);
  }

  std::vector<int> idperm(p);
  for (int i = 0; i < p; ++i) idperm[i] = i;
  std::vector<long> d(p, 0);
  std::vector<int> eps(p, 1);

  // the transformed branches i and j stay compatible iff the conjugated
  // images of their common prefix agree: at each shared height e the
  // multipliers eps_i e^{2 pi sqrt(-1) e d_i} must coincide
  std::vector<std::vector<std::vector<Q>>> shared(
      p, std::vector<std::vector<Q>>(p));
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j)
      shared[i][j] = detail::shared_heights(T, i, j);

  auto constraints_ok = [&]() {
    for (int i = 0; i < p; ++i)
      for (int j = i + 1; j < p; ++j)
        for (const Q& e : shared[i][j]) {
          Q t = e * Q(d[i] - d[j]);
          long den = q_den(t);
          int need = den == 1 ? 1 : den == 2 ? -1 : 0;
          if (need == 0 || eps[i] * eps[j] != need) return false;
        }
    if (T.kind == LKind::D) {
      int prod = 1;
      for (int i = 0; i < p; ++i) {
        const LevelDatum& L = T.datum.data[i].second;
        long m = T.verts[T.leaves[i]].mult;
        if (L.empty_d() || L.empty_bc())
          prod *= eps[i];
        else if (L.special())
          prod *= (d[i] * m) % 2 ? -1 : 1;
        else if ((G.interior[i].r * m) % 2)
          prod *= eps[i];
      }
      if (prod != 1) return false;
    }
    return true;
  };

  // mixed-radix enumeration over the interior product
  std::vector<long> idx(p, 0);
  for (;;) {
    for (int i = 0; i < p; ++i) {
      long x = idx[i];
      d[i] = x % G.interior[i].r;
      eps[i] = (x / G.interior[i].r) ? -1 : 1;
    }
    if (constraints_ok()) G.inner.push_back({idperm, d, eps});
    int i = 0;
    while (i < p && ++idx[i] == G.interior[i].size()) idx[i++] = 0;
    if (i == p) break;
  }
  G.order = G.autOrder * static_cast<long>(G.inner.size());
  return G;
}

// Full element list (Aut closure crossed with the inner tuples).
inline std::vector<TreeWeylElement> all_elements(const TreeWeylGroup& G) {
  size_t p = G.interior.size();
  std::vector<int> id(p);
  for (size_t i = 0; i < p; ++i) id[i] = static_cast<int>(i);
  std::vector<std::vector<int>> perms{id};
  for (size_t head = 0; head < perms.size(); ++head)
    for (const auto& g : G.autGenerators) {
      std::vector<int> q(p);
      for (size_t i = 0; i < p; ++i) q[i] = g[perms[head][i]];
      if (std::find(perms.begin(), perms.end(), q) == perms.end())
        perms.push_back(q);
    }
  std::vector<TreeWeylElement> out;
  for (const auto& perm : perms)
    for (const auto& w : G.inner) {
      TreeWeylElement e = w;
      e.perm = perm;
      out.push_back(e);
    }
  return out;
}

// Permutes entries by the Aut part and maps the representative factor q_i to
// eps_i * (d_i-th Galois conjugate of q_i).
inline PointedType act(const TreeWeylGroup& G, const TreeWeylElement& g,
                       const PointedType& pt) {
  size_t p = pt.entries.size();
  if (g.perm.size() != p || g.d.size() != p || g.eps.size() != p ||
      G.interior.size() != p)
    throw std::invalid_argument("act: element/type size mismatch");
  std::vector<std::pair<long, ExpFactor>> es(p);
  for (size_t src = 0; src < p; ++src) {
    size_t dst = static_cast<size_t>(g.perm[src]);
    ExpFactor q = conjugate(pt.entries[src].q, g.d[src]);
    if (g.eps[src] == -1) q = -q;
    es[dst] = {pt.entries[src].mult, q};
  }
  PointedType out = make_pointed_type(G.caseTag, es);
  if (G.caseTag == LKind::D) out = enhance(out);
  return out;
}

inline bool is_identity(const TreeWeylGroup& G, const TreeWeylElement& g) {
  for (size_t i = 0; i < G.interior.size(); ++i) {
    if (g.perm[i] != static_cast<int>(i)) return false;
    if (g.d[i] % G.interior[i].r != 0) return false;
    if (g.eps[i] != 1) return false;
  }
  return true;
}

}  // namespace fission
