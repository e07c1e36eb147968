#pragma once

// Fission trees: gluing the full branches of a pointed type's level data
// along truncation classes, hybrid branches for the EmptyD flavour, edge
// types, realizations, rebuilding, isomorphism/automorphisms and DOT output.
//
// Vertices are materialized at every height that is admissible for some
// branch (plus hybridation heights); a vertex at height h is the class of
// entries whose factors agree at all exponents >= h.  Empty chain vertices
// without siblings are contracted away; the result is canonical.

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fission/fission.hpp"

namespace fission {

enum class VKind { Root, Leaf, Empty, Inconsequential, Mandatory, Hybridation };
enum class EType { None, E, HE, S, NS };

struct TreeVertex {
  Q height{0};
  bool at_infinity = false;
  VKind kind = VKind::Empty;
  EType edge = EType::None;  // type of the edge toward the parent
  int parent = -1;
  std::vector<int> children;
  std::vector<int> cls;  // entry indices agreeing above this height
  Cyc coeff;             // natural coefficient (admissible vertices)
  long mult = 0;         // leaves
  int sign = 1;          // leaves, D case
  int label = -1;        // leaves: entry index
};

struct FissionTree {
  LKind kind = LKind::BC;
  std::vector<TreeVertex> verts;
  int root = 0;
  std::vector<int> adm;     // admissible vertex ids (stable order)
  std::vector<int> leaves;  // leaf ids by entry index
  FissionDatum datum;       // per-entry level data and fission exponents
};

namespace detail {

inline Q q_floor(const Q& x) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return Q(f);
}

// smallest admissible exponent of the whole datum family strictly above x
inline Q succ_admissible(const std::vector<LevelDatum>& data, const Q& x) {
  std::optional<Q> best;
  auto offer = [&](const Q& c) {
    if (!best || c < *best) best = c;
  };
  for (const auto& d : data) {
    if (d.kind == LKind::D && d.empty_bc()) continue;
    if (d.kind == LKind::D && d.empty_d()) {
      Q start = d.sign == 1 ? Q(1) : Q(1, 2);
      offer(x < start ? start : start + q_floor(x - start) + 1);
      continue;
    }
    std::set<Q> adm;
    if (d.kind == LKind::A) {
      Q cap = x + 1;
      if (!d.levels.empty() && d.levels.front() > cap) cap = d.levels.front();
      adm = admissible_exponents(d, cap).adm;
    } else {
      adm = admissible_exponents(d).adm;
    }
    auto it = adm.upper_bound(x);
    if (it != adm.end()) offer(*it);
  }
  if (!best) throw CutoffRequired();
  return *best;
}

struct Dsu {
  std::vector<int> up;
  explicit Dsu(int n) : up(n) {
    for (int i = 0; i < n; ++i) up[i] = i;
  }
  int find(int a) { return up[a] == a ? a : up[a] = find(up[a]); }
  void unite(int a, int b) { up[find(a)] = find(b); }
};

}  // namespace detail

inline FissionTree build_tree(const PointedType& input,
                              std::optional<Q> cutoff = std::nullopt) {
  PointedType pt = input.caseTag == LKind::D ? enhance(input) : input;
  if (!pt.compatible)
    throw std::invalid_argument("build_tree: incompatible pointed type");
  FissionDatum fd = fission_datum(pt);
  const int p = static_cast<int>(pt.entries.size());

  std::vector<LevelDatum> data;
  for (auto& [m, d] : fd.data) data.push_back(d);

  // per-branch admissible heights, level sets, hybridation heights
  std::vector<std::set<Q>> A(p), Lv(p);
  std::vector<std::optional<Q>> hyb(p);
  std::vector<bool> pure_hyb(p, false);
  for (int i = 0; i < p; ++i) {
    const LevelDatum& d = data[i];
    Lv[i] = std::set<Q>(d.levels.begin(), d.levels.end());
    if (d.kind == LKind::D && d.empty_d()) {
      if (d.sign == 1 && pt.entries[i].mult != 1 && !pt.entries[i].q.is_zero())
        throw std::logic_error("EmptyD leaf with multiplicity > 1");
      if (p == 1) {
        if (!cutoff) throw CutoffRequired();
        A[i] = admissible_exponents(d, *cutoff).adm;
        pure_hyb[i] = true;
      } else {
        Q k = detail::succ_admissible(data, fd.f[i][0 == i ? 1 : 0]);
        for (int j = 0; j < p; ++j)
          if (j != i) k = std::min(k, detail::succ_admissible(data, fd.f[i][j]));
        hyb[i] = k;
        auto all = admissible_exponents(d, k).adm;
        for (const Q& x : all)
          if (x < k) A[i].insert(x);
      }
    } else if (d.kind == LKind::D && d.empty_bc()) {
      if (pt.entries[i].mult < 2)
        throw std::logic_error("EmptyBC leaf with multiplicity 1");
    } else if (d.kind == LKind::A) {
      if (!cutoff) throw CutoffRequired();
      if (*cutoff < pt.entries[i].q.slope())
        throw std::invalid_argument("cutoff below the Katz rank of the type");
      A[i] = admissible_exponents(d, *cutoff).adm;
    } else {
      A[i] = admissible_exponents(d).adm;
    }
  }

  // the global height set
  std::set<Q> Hset;
  for (int i = 0; i < p; ++i) {
    Hset.insert(A[i].begin(), A[i].end());
    if (hyb[i]) Hset.insert(*hyb[i]);
  }
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j)
      if (!Hset.count(fd.f[i][j]))
        throw std::logic_error("fission exponent " + q_str(fd.f[i][j]) +
                               " is not a materialized height");
  std::vector<Q> H(Hset.begin(), Hset.end());  // ascending
  const int nh = static_cast<int>(H.size());

  // truncation classes per height (ascending: classes merge as h grows)
  detail::Dsu dsu(p);
  std::vector<std::vector<std::vector<int>>> classes(nh);
  std::vector<std::vector<int>> class_of(nh, std::vector<int>(p, -1));
  for (int t = 0; t < nh; ++t) {
    for (int i = 0; i < p; ++i)
      for (int j = i + 1; j < p; ++j)
        if (fd.f[i][j] < H[t]) dsu.unite(i, j);
    std::map<int, int> idx;
    for (int i = 0; i < p; ++i) {
      int r = dsu.find(i);
      if (!idx.count(r)) {
        idx[r] = static_cast<int>(classes[t].size());
        classes[t].push_back({});
      }
      classes[t][idx[r]].push_back(i);
      class_of[t][i] = idx[r];
    }
  }

  FissionTree T;
  T.kind = pt.caseTag;
  TreeVertex root;
  root.at_infinity = true;
  root.kind = VKind::Root;
  for (int i = 0; i < p; ++i) root.cls.push_back(i);
  T.verts.push_back(root);
  T.root = 0;

  std::vector<std::vector<int>> vid(nh);
  for (int t = nh - 1; t >= 0; --t) {
    for (size_t ci = 0; ci < classes[t].size(); ++ci) {
      const std::vector<int>& C = classes[t][ci];
      TreeVertex v;
      v.height = H[t];
      v.cls = C;
      v.parent = t == nh - 1 ? T.root : vid[t + 1][class_of[t + 1][C[0]]];
      // kind: any level -> mandatory; any admissible -> inconsequential;
      // any hybridation height -> hybridation; else empty
      bool mand = false, adm = false, hybk = false;
      for (int i : C) {
        if (Lv[i].count(H[t])) mand = true;
        if (A[i].count(H[t])) adm = true;
        if (hyb[i] && *hyb[i] == H[t]) hybk = true;
      }
      for (int i : C)
        if (A[i].count(H[t]) && mand != (Lv[i].count(H[t]) > 0))
          throw std::logic_error("level/admissible mismatch inside a class");
      v.kind = mand ? VKind::Mandatory
                    : adm ? VKind::Inconsequential
                          : hybk ? VKind::Hybridation : VKind::Empty;
      if (mand || adm) {
        v.coeff = pt.entries[C[0]].q.coeff(H[t]);
        for (int i : C)
          if (pt.entries[i].q.coeff(H[t]) != v.coeff)
            throw std::logic_error("class members disagree at a shared height");
      }
      int id = static_cast<int>(T.verts.size());
      T.verts.push_back(v);
      T.verts[v.parent].children.push_back(id);
      vid[t].push_back(id);
    }
  }

  // leaves
  for (int i = 0; i < p; ++i) {
    TreeVertex v;
    v.height = Q(0);
    v.kind = VKind::Leaf;
    v.cls = {i};
    v.label = i;
    v.mult = pt.entries[i].mult;
    v.sign = pt.entries[i].sign;
    v.parent = nh == 0 ? T.root : vid[0][class_of[0][i]];
    int id = static_cast<int>(T.verts.size());
    T.verts.push_back(v);
    T.verts[v.parent].children.push_back(id);
  }

  // contract empty chain vertices without siblings
  std::vector<bool> dead(T.verts.size(), false);
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t id = 0; id < T.verts.size(); ++id) {
      TreeVertex& v = T.verts[id];
      if (dead[id] || v.kind != VKind::Empty) continue;
      TreeVertex& par = T.verts[v.parent];
      if (par.children.size() != 1 || v.children.size() != 1) continue;
      int child = v.children[0];
      par.children[0] = child;
      T.verts[child].parent = v.parent;
      dead[id] = true;
      changed = true;
    }
  }
  // compact
  std::vector<int> remap(T.verts.size(), -1);
  std::vector<TreeVertex> out;
  for (size_t id = 0; id < T.verts.size(); ++id)
    if (!dead[id]) {
      remap[id] = static_cast<int>(out.size());
      out.push_back(T.verts[id]);
    }
  for (auto& v : out) {
    if (v.parent >= 0) v.parent = remap[v.parent];
    for (auto& c : v.children) c = remap[c];
  }
  T.verts = std::move(out);
  T.root = remap[T.root];

  // edge types
  auto edge_type = [&](int entry, bool root_parent, const Q& hp) -> EType {
    if (pure_hyb[entry]) return EType::HE;
    if (hyb[entry])
      return (root_parent || hp > *hyb[entry]) ? EType::E : EType::HE;
    if (A[entry].empty()) return EType::E;
    if (root_parent) return EType::E;
    auto it = A[entry].lower_bound(hp);
    if (it == A[entry].end()) return EType::E;
    std::vector<long> dens;
    for (const Q& l : Lv[entry])
      if (l >= *it) dens.push_back(q_den(l));
    if (dens.empty()) return EType::E;  // type-A integer tails
    return is_special_sequence(dens) ? EType::S : EType::NS;
  };
  for (auto& v : T.verts) {
    if (v.parent < 0) continue;
    const TreeVertex& par = T.verts[v.parent];
    EType t = EType::None;
    for (int i : v.cls) {
      EType ti = edge_type(i, par.at_infinity, par.height);
      if (t == EType::None) t = ti;
      if (ti != t)
        throw std::logic_error("glued branch edges of different types");
    }
    v.edge = t;
  }

  // index leaves and admissible vertices
  T.leaves.assign(p, -1);
  for (size_t id = 0; id < T.verts.size(); ++id) {
    const TreeVertex& v = T.verts[id];
    if (v.kind == VKind::Leaf) T.leaves[v.label] = static_cast<int>(id);
    if (v.kind == VKind::Mandatory || v.kind == VKind::Inconsequential)
      T.adm.push_back(static_cast<int>(id));
  }

  // branching axioms
  for (const auto& v : T.verts) {
    int zeros = 0;
    EType shared = EType::None;
    int nonhe_mand = 0, nonhe_inc = 0;
    for (int c : v.children) {
      const TreeVertex& u = T.verts[c];
      if (u.kind == VKind::Leaf) continue;
      if (u.kind == VKind::Empty || u.kind == VKind::Hybridation) ++zeros;
      if (u.edge == EType::HE) {
        if (u.kind == VKind::Mandatory)
          throw std::logic_error("mandatory vertex below a half-empty edge");
        continue;
      }
      if (shared == EType::None) shared = u.edge;
      if (u.edge != shared)
        throw std::logic_error("siblings with distinct non-HE edge types");
      if (u.kind == VKind::Mandatory) ++nonhe_mand;
      if (u.kind == VKind::Inconsequential) ++nonhe_inc;
    }
    if (zeros > 1) throw std::logic_error("more than one empty child");
    if (nonhe_mand > 0 && nonhe_inc > 0)
      throw std::logic_error("mixed mandatory/inconsequential siblings");
  }
  if (T.kind == LKind::D) {
    int prod = 1;
    for (int l : T.leaves) prod *= T.verts[l].sign;
    if (prod != 1) throw std::logic_error("leaf signs do not multiply to 1");
  }
  T.datum = std::move(fd);
  return T;
}

inline std::map<int, Cyc> natural_coefficients(const FissionTree& T) {
  std::map<int, Cyc> c;
  for (int id : T.adm) c[id] = T.verts[id].coeff;
  return c;
}

namespace detail {
// realized prefix strictly above the children of v: coefficients of the
// admissible vertices on the path from v to the root
inline ExpFactor realized_prefix(const FissionTree& T, int v,
                                 const std::map<int, Cyc>& c) {
  ExpFactor q;
  for (int u = v; u >= 0; u = T.verts[u].parent) {
    const TreeVertex& w = T.verts[u];
    if (w.kind == VKind::Mandatory || w.kind == VKind::Inconsequential) {
      auto it = c.find(u);
      if (it != c.end() && !it->second.is_zero())
        q = q + ExpFactor::monomial(w.height, it->second);
    }
  }
  return q;
}
}  // namespace detail

// Checks the realization conditions: mandatory coefficients nonzero and, per
// sibling family at height k with realized common prefix qc, pairwise
// distinct c^ord where ord = fission_order(qc, k, kind).  Empty and
// hybridation siblings count as the coefficient 0.
inline bool is_realization(const FissionTree& T, const std::map<int, Cyc>& c) {
  for (int id : T.adm)
    if (!c.count(id)) return false;
  for (size_t v = 0; v < T.verts.size(); ++v) {
    std::vector<Cyc> vals;
    Q k(0);
    for (int u : T.verts[v].children) {
      const TreeVertex& w = T.verts[u];
      if (w.kind == VKind::Leaf) continue;
      k = w.height;
      if (w.kind == VKind::Mandatory || w.kind == VKind::Inconsequential) {
        const Cyc& a = c.at(u);
        if (w.kind == VKind::Mandatory && a.is_zero()) return false;
        vals.push_back(a);
      } else {
        vals.push_back(Cyc(Q(0)));
      }
    }
    if (vals.size() < 2 && !(vals.size() == 1)) continue;
    if (vals.empty()) continue;
    long ord = fission_order(
        detail::realized_prefix(T, static_cast<int>(v), c), k, T.kind);
    for (size_t a = 0; a < vals.size(); ++a)
      for (size_t b = a + 1; b < vals.size(); ++b)
        if (vals[a].pow(ord) == vals[b].pow(ord)) return false;
  }
  return true;
}

// Small-integer witness: children of each vertex get 1, 2, 3, ...
inline std::map<int, Cyc> sample_realization(const FissionTree& T) {
  std::map<int, Cyc> c;
  for (const auto& v : T.verts) {
    long next = 1;
    for (int u : v.children) {
      const TreeVertex& w = T.verts[u];
      if (w.kind == VKind::Mandatory || w.kind == VKind::Inconsequential)
        c[u] = Cyc(Q(next++));
    }
  }
  return c;
}

// Pointed type determined by a realization of the tree.
inline PointedType rebuild(const FissionTree& T, const std::map<int, Cyc>& c) {
  std::vector<std::pair<long, ExpFactor>> entries(T.leaves.size());
  for (size_t i = 0; i < T.leaves.size(); ++i) {
    const TreeVertex& leaf = T.verts[T.leaves[i]];
    entries[i] = {leaf.mult, detail::realized_prefix(T, leaf.parent, c)};
  }
  PointedType pt = make_pointed_type(T.kind, entries);
  for (size_t i = 0; i < T.leaves.size(); ++i)
    pt.entries[i].sign = T.verts[T.leaves[i]].sign;
  return pt;
}

namespace detail {

struct CanonCtx {
  const FissionTree& t;
  bool labelled;
  std::vector<std::string> key;
  std::vector<bool> has_fm;
  std::vector<Q> fm;                        // height of highest mandatory
  std::vector<std::vector<long>> mults;     // sorted leaf multiplicities
  std::vector<std::vector<int>> order;      // children in canonical order
};

inline void canon_visit(CanonCtx& cx, int v) {
  const TreeVertex& w = cx.t.verts[v];
  cx.has_fm[v] = w.kind == VKind::Mandatory;
  cx.fm[v] = w.kind == VKind::Mandatory ? w.height : Q(0);
  for (int u : w.children) {
    canon_visit(cx, u);
    if (cx.has_fm[u] && (!cx.has_fm[v] || cx.fm[u] > cx.fm[v])) {
      cx.has_fm[v] = true;
      cx.fm[v] = cx.fm[u];
    }
    cx.mults[v].insert(cx.mults[v].end(), cx.mults[u].begin(),
                       cx.mults[u].end());
  }
  if (w.kind == VKind::Leaf) cx.mults[v] = {w.mult};
  std::sort(cx.mults[v].begin(), cx.mults[v].end());

  std::vector<int> ord = w.children;
  auto erank = [](EType e) {
    switch (e) {
      case EType::E: return 0;
      case EType::HE: return 1;
      case EType::S: return 2;
      default: return 3;
    }
  };
  std::sort(ord.begin(), ord.end(), [&](int a, int b) -> bool {
    // spec tie-break: first-mandatory height, edge rank, multiplicities, key
    if (cx.has_fm[a] != cx.has_fm[b]) return cx.has_fm[a];
    if (cx.has_fm[a] && cx.fm[a] != cx.fm[b]) return cx.fm[a] > cx.fm[b];
    int ra = erank(cx.t.verts[a].edge), rb = erank(cx.t.verts[b].edge);
    if (ra != rb) return ra < rb;
    if (cx.mults[a] != cx.mults[b]) return cx.mults[a] < cx.mults[b];
    return cx.key[a] < cx.key[b];
  });
  cx.order[v] = ord;

  std::ostringstream os;
  static const char* kc = "RLEIMH";
  os << '(' << kc[static_cast<int>(w.kind)] << static_cast<int>(w.edge);
  if (w.kind == VKind::Leaf) {
    os << 'm' << w.mult << 's' << w.sign;
    if (cx.labelled) os << 'l' << w.label;
  } else if (!w.at_infinity) {
    os << 'h' << q_str(w.height);
  }
  for (int u : ord) os << cx.key[u];
  os << ')';
  cx.key[v] = os.str();
}

inline CanonCtx canon(const FissionTree& t, bool labelled) {
  CanonCtx cx{t, labelled,
              std::vector<std::string>(t.verts.size()),
              std::vector<bool>(t.verts.size(), false),
              std::vector<Q>(t.verts.size(), Q(0)),
              std::vector<std::vector<long>>(t.verts.size()),
              std::vector<std::vector<int>>(t.verts.size())};
  canon_visit(cx, t.root);
  return cx;
}

inline void canonical_leaves(const CanonCtx& cx, int v, std::vector<int>& out) {
  if (cx.t.verts[v].kind == VKind::Leaf) out.push_back(cx.t.verts[v].label);
  for (int u : cx.order[v]) canonical_leaves(cx, u, out);
}

}  // namespace detail

inline bool tree_iso(const FissionTree& a, const FissionTree& b,
                     bool labelled) {
  return detail::canon(a, labelled).key[a.root] ==
         detail::canon(b, labelled).key[b.root];
}

struct AutGroup {
  long order = 1;
  std::vector<std::vector<int>> generators;  // permutations of entry labels
};

inline AutGroup automorphisms(const FissionTree& t) {
  detail::CanonCtx cx = detail::canon(t, false);
  AutGroup g;
  int p = static_cast<int>(t.leaves.size());
  for (size_t v = 0; v < t.verts.size(); ++v) {
    const std::vector<int>& ord = cx.order[v];
    size_t i = 0;
    while (i < ord.size()) {
      size_t j = i;
      while (j < ord.size() && cx.key[ord[j]] == cx.key[ord[i]]) ++j;
      for (size_t s = i; s + 1 < j; ++s) {
        g.order *= static_cast<long>(s - i + 2);
        std::vector<int> la, lb;
        detail::canonical_leaves(cx, ord[s], la);
        detail::canonical_leaves(cx, ord[s + 1], lb);
        std::vector<int> perm(p);
        for (int x = 0; x < p; ++x) perm[x] = x;
        for (size_t x = 0; x < la.size(); ++x) {
          perm[la[x]] = lb[x];
          perm[lb[x]] = la[x];
        }
        g.generators.push_back(perm);
      }
      i = j;
    }
  }
  return g;
}

inline std::string to_dot(const FissionTree& t) {
  std::ostringstream os;
  os << "digraph fission_tree {\n  rankdir=BT;\n";
  for (size_t id = 0; id < t.verts.size(); ++id) {
    const TreeVertex& v = t.verts[id];
    os << "  v" << id << " [";
    switch (v.kind) {
      case VKind::Root:
        os << "shape=square, label=\"\"";
        break;
      case VKind::Leaf:
        os << "shape=none, label=\"" << v.mult
           << (t.kind == LKind::D ? (v.sign == 1 ? ",+" : ",-") : "") << "\"";
        break;
      case VKind::Mandatory:
        os << "shape=circle, style=filled, fillcolor=black, label=\"\", "
              "width=0.15";
        break;
      case VKind::Inconsequential:
        os << "shape=circle, label=\"\", width=0.15";
        break;
      case VKind::Hybridation:
        os << "shape=triangle, label=\"\", width=0.15";
        break;
      case VKind::Empty:
        os << "shape=point, width=0.05";
        break;
    }
    if (!v.at_infinity && v.kind != VKind::Leaf)
      os << ", xlabel=\"" << q_str(v.height) << "\"";
    os << "];\n";
  }
  for (size_t id = 0; id < t.verts.size(); ++id) {
    const TreeVertex& v = t.verts[id];
    if (v.parent < 0) continue;
    const char* style = "solid";
    if (v.edge == EType::E) style = "dotted";
    if (v.edge == EType::HE) style = "dotted\", penwidth=\"0.5";
    if (v.edge == EType::S) style = "dashed";
    os << "  v" << id << " -> v" << v.parent << " [style=\"" << style
       << "\", arrowhead=none];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace fission
