#pragma once

// Brute-force signed-permutation oracle: untwisting a pointed type to an
// eigenvector family (A_j) in C^m with a generator g of the covering cyclic
// group, exact eigenspace/flat computations over cyclotomic numbers, the
// monodromy group of the deformation covering, and exhaustive validation of
// the classification of regular twisted eigenspaces at small rank.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fission/tree_weyl.hpp"

namespace fission {

// ---------------------------------------------------------------------------
// Signed permutations of {1..m}: img[i] = signed image of i+1.

struct SignedPerm {
  std::vector<long> img;

  static SignedPerm identity(int m) {
    SignedPerm p;
    p.img.resize(m);
    for (int i = 0; i < m; ++i) p.img[i] = i + 1;
    return p;
  }

  bool is_identity() const {
    for (size_t i = 0; i < img.size(); ++i)
      if (img[i] != static_cast<long>(i) + 1) return false;
    return true;
  }

  // even number of sign flips (membership in the rotation subgroup)
  bool positive() const {
    int neg = 0;
    for (long t : img)
      if (t < 0) ++neg;
    return neg % 2 == 0;
  }

  SignedPerm inverse() const {
    SignedPerm p;
    p.img.resize(img.size());
    for (size_t i = 0; i < img.size(); ++i) {
      long t = img[i];
      size_t dst = static_cast<size_t>(t > 0 ? t : -t) - 1;
      p.img[dst] = t > 0 ? static_cast<long>(i) + 1
                         : -(static_cast<long>(i) + 1);
    }
    return p;
  }

  // (g*h) acts as g after h
  friend SignedPerm operator*(const SignedPerm& g, const SignedPerm& h) {
    SignedPerm p;
    p.img.resize(g.img.size());
    for (size_t i = 0; i < h.img.size(); ++i) {
      long t = h.img[i];
      size_t mid = static_cast<size_t>(t > 0 ? t : -t) - 1;
      p.img[i] = t > 0 ? g.img[mid] : -g.img[mid];
    }
    return p;
  }

  // coordinates move with the permutation and pick up the signs
  template <class T>
  std::vector<T> act(const std::vector<T>& x) const {
    std::vector<T> out(x.size());
    for (size_t i = 0; i < img.size(); ++i) {
      long t = img[i];
      size_t dst = static_cast<size_t>(t > 0 ? t : -t) - 1;
      out[dst] = t > 0 ? x[i] : -x[i];
    }
    return out;
  }

  friend bool operator==(const SignedPerm& a, const SignedPerm& b) {
    return a.img == b.img;
  }
  friend bool operator<(const SignedPerm& a, const SignedPerm& b) {
    return a.img < b.img;
  }
};

// multiset of (cycle length, carries a net sign flip)
using CycleType = std::multiset<std::pair<int, bool>>;

inline CycleType cycle_type(const SignedPerm& g) {
  CycleType ct;
  std::vector<bool> seen(g.img.size(), false);
  for (size_t i = 0; i < g.img.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    bool neg = false;
    size_t j = i;
    do {
      seen[j] = true;
      ++len;
      long t = g.img[j];
      if (t < 0) neg = !neg;
      j = static_cast<size_t>(t > 0 ? t : -t) - 1;
    } while (j != i);
    ct.insert({len, neg});
  }
  return ct;
}

inline long weyl_order(LKind kind, int m) {
  long ord = 1;
  for (long i = 1; i <= m; ++i) ord *= (kind == LKind::A ? i : 2 * i);
  if (kind == LKind::D && m >= 1) ord /= 2;
  return ord;
}

namespace detail {

inline std::vector<SignedPerm> signed_perms(int m, int parity /* -1,0,1 */,
                                            bool signs) {
  std::vector<SignedPerm> out;
  std::vector<long> perm(m);
  std::iota(perm.begin(), perm.end(), 1);
  std::sort(perm.begin(), perm.end());
  do {
    if (!signs) {
      SignedPerm p;
      p.img = perm;
      out.push_back(std::move(p));
      continue;
    }
    for (long mask = 0; mask < (1L << m); ++mask) {
      int neg = __builtin_popcountl(static_cast<unsigned long>(mask));
      if (parity == 1 && neg % 2 != 0) continue;
      if (parity == -1 && neg % 2 != 1) continue;
      SignedPerm p;
      p.img.resize(m);
      for (int i = 0; i < m; ++i)
        p.img[i] = (mask >> i & 1) ? -perm[i] : perm[i];
      out.push_back(std::move(p));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

}  // namespace detail

inline std::vector<SignedPerm> weyl_elements(LKind kind, int m) {
  switch (kind) {
    case LKind::A: return detail::signed_perms(m, 0, false);
    case LKind::BC: return detail::signed_perms(m, 0, true);
    default: return detail::signed_perms(m, 1, true);
  }
}

// the odd-signed coset extending W_D(m) to W_BC(m)
inline std::vector<SignedPerm> twisted_coset(int m) {
  return detail::signed_perms(m, -1, true);
}

// ---------------------------------------------------------------------------
// Root functionals, one per kernel hyperplane.

inline std::vector<std::vector<long>> root_lines(LKind kind, int m) {
  std::vector<std::vector<long>> roots;
  auto add = [&](int i, int j, long si, long sj) {
    std::vector<long> v(m, 0);
    v[i] = si;
    if (j >= 0) v[j] = sj;
    roots.push_back(std::move(v));
  };
  if (kind == LKind::BC)
    for (int i = 0; i < m; ++i) add(i, -1, 1, 0);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      add(i, j, 1, -1);
      if (kind != LKind::A) add(i, j, 1, 1);
    }
  return roots;
}

inline int root_index(const std::vector<std::vector<long>>& roots,
                      const std::vector<long>& v) {
  std::vector<long> neg(v.size());
  for (size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
  for (size_t k = 0; k < roots.size(); ++k)
    if (roots[k] == v || roots[k] == neg) return static_cast<int>(k);
  throw std::invalid_argument("root_index: not a root line");
}

// ---------------------------------------------------------------------------
// Untwisting: one coordinate block per entry and Galois slot.

struct UntwistedType {
  LKind caseTag = LKind::BC;
  int m = 0;    // rank of the untwisted torus
  long r = 1;   // common ramification
  long s = 0;   // top level (max slope * r)
  std::vector<std::vector<Cyc>> A;  // A[j-1] = coefficient vector at level j/r
  SignedPerm g;                     // covering generator, g(A_j) = zeta_r^j A_j
};

inline UntwistedType untwist(const PointedType& pt) {
  UntwistedType u;
  u.caseTag = pt.caseTag;
  long r = 1;
  for (const auto& e : pt.entries)
    if (!e.q.is_zero()) r = lcm_long(r, e.q.ram());
  u.r = r;
  Q top(0);
  for (const auto& e : pt.entries) top = std::max(top, e.q.slope());
  u.s = q_num(top * Q(r));

  struct Slot {
    ExpFactor rep;
    long mult;
  };
  std::vector<Slot> slots;
  std::vector<long> blockStart, blockSlots, blockMult;
  std::vector<bool> blockSpecial;
  for (const auto& e : pt.entries) {
    bool special = u.caseTag != LKind::A && !e.q.is_zero() &&
                   classify_circle(e.q).special();
    long ri = e.q.is_zero() ? 1 : e.q.ram();
    long nslots = special ? ri / 2 : ri;
    blockStart.push_back(static_cast<long>(slots.size()));
    blockSlots.push_back(nslots);
    blockMult.push_back(e.mult);
    blockSpecial.push_back(special);
    for (long t = 0; t < nslots; ++t) slots.push_back({conjugate(e.q, -t), e.mult});
  }
  long m = 0;
  for (const auto& sl : slots) m += sl.mult;
  u.m = static_cast<int>(m);

  // coordinate layout: slots in order, each spanning its multiplicity
  std::vector<long> slotBase(slots.size());
  long pos = 0;
  for (size_t t = 0; t < slots.size(); ++t) {
    slotBase[t] = pos;
    pos += slots[t].mult;
  }

  u.g.img.assign(m, 0);
  for (size_t b = 0; b < blockStart.size(); ++b) {
    long base = blockStart[b], ns = blockSlots[b], mu = blockMult[b];
    for (long t = 0; t < ns; ++t) {
      long nt = (t + 1) % ns;
      long sgn = (blockSpecial[b] && nt == 0) ? -1 : 1;
      for (long j = 0; j < mu; ++j)
        u.g.img[slotBase[base + t] + j] = sgn * (slotBase[base + nt] + j + 1);
    }
  }

  for (long j = 1; j <= u.s; ++j) {
    std::vector<Cyc> a(m, Cyc(Q(0)));
    Q expo = Q(j) / Q(r);
    for (size_t t = 0; t < slots.size(); ++t) {
      Cyc c = slots[t].rep.coeff(expo);
      for (long k = 0; k < slots[t].mult; ++k) a[slotBase[t] + k] = c;
    }
    u.A.push_back(std::move(a));
  }

  for (long j = 1; j <= u.s; ++j) {
    std::vector<Cyc> lhs = u.g.act(u.A[j - 1]);
    Cyc z = Cyc::zeta(u.r, j % u.r);
    for (int c = 0; c < u.m; ++c)
      if (lhs[c] != z * u.A[j - 1][c])
        throw std::logic_error("untwist: generator identity violated");
  }
  return u;
}

// ---------------------------------------------------------------------------
// Exact linear algebra over cyclotomic numbers.

namespace detail {

// reduced row echelon form with normalized pivots; drops zero rows
inline std::vector<std::vector<Cyc>> rref(std::vector<std::vector<Cyc>> rows,
                                          int n) {
  size_t rr = 0;
  for (int c = 0; c < n && rr < rows.size(); ++c) {
    size_t p = rr;
    while (p < rows.size() && rows[p][c].is_zero()) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[rr], rows[p]);
    Cyc inv = rows[rr][c].inverse();
    for (int cc = 0; cc < n; ++cc) rows[rr][cc] = rows[rr][cc] * inv;
    for (size_t q = 0; q < rows.size(); ++q) {
      if (q == rr || rows[q][c].is_zero()) continue;
      Cyc f = rows[q][c];
      for (int cc = 0; cc < n; ++cc) rows[q][cc] -= f * rows[rr][cc];
    }
    ++rr;
  }
  rows.resize(rr);
  return rows;
}

inline std::vector<std::vector<Cyc>> kernel_basis(
    const std::vector<std::vector<Cyc>>& rowsIn, int n) {
  auto rows = rref(rowsIn, n);
  std::vector<int> pivotCol;
  std::vector<bool> isPivot(n, false);
  for (const auto& row : rows) {
    int c = 0;
    while (c < n && row[c].is_zero()) ++c;
    pivotCol.push_back(c);
    if (c < n) isPivot[c] = true;
  }
  std::vector<std::vector<Cyc>> basis;
  for (int c = 0; c < n; ++c) {
    if (isPivot[c]) continue;
    std::vector<Cyc> v(n, Cyc(Q(0)));
    v[c] = Cyc(Q(1));
    for (size_t rI = 0; rI < rows.size(); ++rI)
      if (pivotCol[rI] < n) v[pivotCol[rI]] = -rows[rI][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

// matrix rows of g - zeta * id acting on column vectors
inline std::vector<std::vector<Cyc>> eigen_rows(const SignedPerm& g,
                                                const Cyc& zeta) {
  int m = static_cast<int>(g.img.size());
  std::vector<std::vector<Cyc>> rows(m, std::vector<Cyc>(m, Cyc(Q(0))));
  for (int i = 0; i < m; ++i) {
    long t = g.img[i];
    int dst = static_cast<int>(t > 0 ? t : -t) - 1;
    rows[dst][i] += Cyc(Q(t > 0 ? 1 : -1));
    rows[i][i] -= zeta;
  }
  return rows;
}

inline std::vector<Cyc> root_cyc(const std::vector<long>& rt) {
  std::vector<Cyc> row(rt.size(), Cyc(Q(0)));
  for (size_t c = 0; c < rt.size(); ++c)
    if (rt[c] != 0) row[c] = Cyc(Q(rt[c]));
  return row;
}

inline Cyc apply_root(const std::vector<long>& rt, const std::vector<Cyc>& v) {
  Cyc out{Q(0)};
  for (size_t c = 0; c < rt.size(); ++c)
    if (rt[c] != 0) out += Cyc(Q(rt[c])) * v[c];
  return out;
}

// canonical form of the span of the given vectors
inline std::vector<std::vector<Cyc>> canonical_span(
    const std::vector<std::vector<Cyc>>& basis, int n) {
  return rref(basis, n);
}

// order of W(kind, m) guarded against the cap (throws before overflow)
inline long weyl_order_capped(LKind kind, int m, long cap) {
  long ord = 1;
  for (long i = 1; i <= m; ++i) {
    ord *= (kind == LKind::A ? i : 2 * i);
    if (ord > 2 * cap + 1) throw BudgetExceeded(ord, cap);
  }
  if (kind == LKind::D && m >= 1) ord /= 2;
  if (ord > cap) throw BudgetExceeded(ord, cap);
  return ord;
}

}  // namespace detail

// number of cycles whose root-of-unity condition matches zeta
inline long eigenspace_dim_fast(const SignedPerm& g, const Cyc& zeta) {
  long dim = 0;
  for (const auto& [len, neg] : cycle_type(g))
    if (zeta.pow(len) == Cyc(Q(neg ? -1 : 1))) ++dim;
  return dim;
}

inline std::vector<std::vector<Cyc>> eigenspace_basis(const SignedPerm& g,
                                                      const Cyc& zeta) {
  int m = static_cast<int>(g.img.size());
  return detail::kernel_basis(detail::eigen_rows(g, zeta), m);
}

// indices of the root lines vanishing on the coefficient vector
inline std::vector<int> levi_annihilator(LKind kind, int m,
                                         const std::vector<Cyc>& a) {
  auto roots = root_lines(kind, m);
  std::vector<int> phi;
  for (size_t k = 0; k < roots.size(); ++k)
    if (detail::apply_root(roots[k], a).is_zero())
      phi.push_back(static_cast<int>(k));
  return phi;
}

// basis of the intersection of the root flat of phi with the zeta-eigenspace
inline std::vector<std::vector<Cyc>> stratum_flat(LKind kind, int m,
                                                  const std::vector<int>& phi,
                                                  const SignedPerm& g,
                                                  const Cyc& zeta) {
  auto roots = root_lines(kind, m);
  std::vector<std::vector<Cyc>> rows;
  for (int k : phi) rows.push_back(detail::root_cyc(roots[k]));
  for (auto& row : detail::eigen_rows(g, zeta)) rows.push_back(std::move(row));
  return detail::kernel_basis(rows, m);
}

struct FlatDatum {
  std::vector<int> phi;  // root indices of the level's annihilator flat
  long flatDim = 0;      // dimension of the root flat alone
  long dim = 0;          // dimension of its eigenspace cut
};

// increasing annihilator filtration phi_j = intersection over l >= j of the
// annihilators of A_l, with the per-level eigenspace cuts
inline std::vector<FlatDatum> flat_dims(const UntwistedType& u) {
  auto roots = root_lines(u.caseTag, u.m);
  std::vector<FlatDatum> out(u.s);
  std::vector<int> phi;
  for (size_t k = 0; k < roots.size(); ++k) phi.push_back(static_cast<int>(k));
  for (long j = u.s; j >= 1; --j) {
    std::vector<int> ann = levi_annihilator(u.caseTag, u.m, u.A[j - 1]);
    std::vector<int> next;
    std::set_intersection(phi.begin(), phi.end(), ann.begin(), ann.end(),
                          std::back_inserter(next));
    phi = std::move(next);
    FlatDatum& fd = out[j - 1];
    fd.phi = phi;
    std::vector<std::vector<Cyc>> rows;
    for (int k : phi) rows.push_back(detail::root_cyc(roots[k]));
    fd.flatDim = static_cast<long>(detail::kernel_basis(rows, u.m).size());
    fd.dim = static_cast<long>(
        stratum_flat(u.caseTag, u.m, phi, u.g, Cyc::zeta(u.r, j % u.r)).size());
  }
  return out;
}

inline long deformation_dimension(const UntwistedType& u) {
  long d = 0;
  for (const auto& fd : flat_dims(u)) d += fd.dim;
  return d;
}

// true iff the eigenspace flat contains a vector avoiding every root
// hyperplane outside phi (fails iff empty, or some root vanishes identically)
inline bool regular_nonempty(LKind kind, int m, const SignedPerm& g,
                             const Cyc& zeta, const std::vector<int>& phi) {
  auto basis = stratum_flat(kind, m, phi, g, zeta);
  if (basis.empty()) return false;
  auto roots = root_lines(kind, m);
  std::set<int> inPhi(phi.begin(), phi.end());
  for (size_t k = 0; k < roots.size(); ++k) {
    if (inPhi.count(static_cast<int>(k))) continue;
    bool allZero = true;
    for (const auto& b : basis)
      if (!detail::apply_root(roots[k], b).is_zero()) {
        allZero = false;
        break;
      }
    if (allZero) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Monodromy of the deformation covering.

inline constexpr long kOracleCap = 46080;  // |W_BC(6)|

struct MonodromyGroup {
  long order = 1;
  std::vector<SignedPerm> reps;  // one per class modulo the pointwise fixers
};

inline MonodromyGroup monodromy_group(const UntwistedType& u,
                                      long cap = kOracleCap) {
  detail::weyl_order_capped(u.caseTag, u.m, cap);
  MonodromyGroup out;
  if (u.s == 0) {
    out.reps.push_back(SignedPerm::identity(u.m));
    return out;
  }
  auto roots = root_lines(u.caseTag, u.m);
  auto flats = flat_dims(u);
  // per level: flat basis and root set
  std::vector<std::vector<std::vector<Cyc>>> bases(u.s);
  for (long j = 1; j <= u.s; ++j) {
    std::vector<std::vector<Cyc>> rows;
    for (int k : flats[j - 1].phi) rows.push_back(detail::root_cyc(roots[k]));
    bases[j - 1] = detail::kernel_basis(rows, u.m);
  }
  std::map<std::vector<std::vector<Cyc>>, SignedPerm> classes;
  for (const auto& w : weyl_elements(u.caseTag, u.m)) {
    bool ok = true;
    for (long j = 1; j <= u.s && ok; ++j) {
      for (const auto& b : bases[j - 1]) {
        std::vector<Cyc> wb = w.act(b);
        for (int k : flats[j - 1].phi)
          if (!detail::apply_root(roots[k], wb).is_zero()) {
            ok = false;
            break;
          }
        if (ok && w.act(u.g.act(b)) != u.g.act(wb)) ok = false;
        if (!ok) break;
      }
    }
    if (!ok) continue;
    std::vector<std::vector<Cyc>> sig;
    for (const auto& b : bases[0]) sig.push_back(w.act(b));
    classes.emplace(std::move(sig), w);
  }
  out.order = static_cast<long>(classes.size());
  for (auto& [sig, w] : classes) out.reps.push_back(w);
  return out;
}

// all Weyl elements reproducing the eigenvector identities of the marking
inline std::vector<SignedPerm> orbit_generators(const UntwistedType& u,
                                                long cap = kOracleCap) {
  LKind enumKind = u.caseTag == LKind::A ? LKind::A : LKind::BC;
  detail::weyl_order_capped(enumKind, u.m, cap);
  std::vector<SignedPerm> out;
  for (const auto& w : weyl_elements(enumKind, u.m)) {
    bool ok = true;
    for (long j = 1; j <= u.s && ok; ++j) {
      std::vector<Cyc> wa = w.act(u.A[j - 1]);
      Cyc z = Cyc::zeta(u.r, j % u.r);
      for (int c = 0; c < u.m; ++c)
        if (wa[c] != z * u.A[j - 1][c]) {
          ok = false;
          break;
        }
    }
    if (ok) out.push_back(w);
  }
  return out;
}

// the per-level stratum flats agree for every admissible choice of generator
inline bool marking_independence(const UntwistedType& u,
                                 long cap = kOracleCap) {
  auto flats = flat_dims(u);
  std::vector<std::vector<std::vector<Cyc>>> base(u.s);
  for (long j = 1; j <= u.s; ++j)
    base[j - 1] = detail::canonical_span(
        stratum_flat(u.caseTag, u.m, flats[j - 1].phi, u.g,
                     Cyc::zeta(u.r, j % u.r)),
        u.m);
  for (const auto& w : orbit_generators(u, cap))
    for (long j = 1; j <= u.s; ++j) {
      auto span = detail::canonical_span(
          stratum_flat(u.caseTag, u.m, flats[j - 1].phi, w,
                       Cyc::zeta(u.r, j % u.r)),
          u.m);
      if (span != base[j - 1]) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Classification of regular twisted eigenspaces.

struct ClassificationReport {
  bool exists = false;
  long k = 0;           // dimension of the regular eigenspace
  std::string factor;   // "M(rho,k)" or "MSharp(rho,k)"
  long centralizer = 0;
  std::vector<std::pair<std::string, bool>> clauses;
  bool pass = false;
};

namespace detail {

struct EigenDescriptor {
  bool exists = false;
  bool sharp = false;
  long rho = 0;
  long k = 0;
};

inline EigenDescriptor classify_table(LKind kind, long m, long r,
                                      bool twisted) {
  EigenDescriptor d;
  auto set = [&](bool sharp, long rho, long k) {
    if (k <= 0) return;
    d.exists = true;
    d.sharp = sharp;
    d.rho = rho;
    d.k = k;
  };
  if (kind == LKind::A) {
    if (r == 1)
      set(false, 1, m);
    else if (m % r == 0)
      set(true, r, m / r);
    else if ((m - 1) % r == 0)
      set(true, r, (m - 1) / r);
    return d;
  }
  if (kind == LKind::BC) {
    if (r % 2 == 1 && m % r == 0)
      set(true, 2 * r, m / r);
    else if (r % 2 == 0 && m % (r / 2) == 0)
      set(true, r, 2 * m / r);
    return d;
  }
  // kind D
  if (!twisted) {
    if (r == 1)
      set(false, 2, m);
    else if (r == 2)
      m % 2 == 0 ? set(false, 2, m) : set(true, 2, m - 1);
    else if (r % 2 == 1) {
      if (m % r == 0)
        set(true, 2 * r, m / r);
      else if ((m - 1) % r == 0)
        set(true, 2 * r, (m - 1) / r);
    } else {
      if (m % r == 0)
        set(true, r, 2 * m / r);
      else if ((m - 1) % (r / 2) == 0)
        set(true, r, (2 * m - 2) / r);
    }
  } else {
    if (r == 1)
      set(true, 2, m - 1);
    else if (r == 2)
      m % 2 == 1 ? set(false, 2, m) : set(true, 2, m - 1);
    else if (r % 2 == 1) {
      if ((m - 1) % r == 0) set(true, 2 * r, (m - 1) / r);
    } else {
      if (m % (r / 2) == 0 && (2 * m / r) % 2 == 1)
        set(true, r, 2 * m / r);
      else if ((m - 1) % (r / 2) == 0)
        set(true, r, (2 * m - 2) / r);
    }
  }
  return d;
}

// distinct projective classes of nonzero restricted root functionals
inline long hyperplane_classes(LKind kind, int m,
                               const std::vector<std::vector<Cyc>>& basis) {
  auto roots = root_lines(kind, m);
  std::set<std::vector<Cyc>> classes;
  for (const auto& rt : roots) {
    std::vector<Cyc> f;
    for (const auto& b : basis) f.push_back(apply_root(rt, b));
    size_t lead = 0;
    while (lead < f.size() && f[lead].is_zero()) ++lead;
    if (lead == f.size()) continue;
    Cyc inv = f[lead].inverse();
    for (auto& x : f) x = x * inv;
    classes.insert(std::move(f));
  }
  return static_cast<long>(classes.size());
}

}  // namespace detail

inline ClassificationReport validate_classification(LKind kind, int m, long r,
                                                    bool twisted = false,
                                                    long cap = kOracleCap) {
  detail::weyl_order_capped(kind == LKind::A ? LKind::A : LKind::BC, m, cap);
  auto table = detail::classify_table(kind, m, r, twisted);
  ClassificationReport rep;
  rep.exists = table.exists;
  rep.k = table.k;
  if (table.exists) {
    std::ostringstream os;
    os << (table.sharp ? "MSharp(" : "M(") << table.rho << "," << table.k
       << ")";
    rep.factor = os.str();
  }

  Cyc zeta = Cyc::zeta(r);
  auto candidates =
      (kind == LKind::D && twisted) ? twisted_coset(m) : weyl_elements(kind, m);
  long bestDim = 0;
  const SignedPerm* best = nullptr;
  for (const auto& w : candidates) {
    if (!regular_nonempty(kind, m, w, zeta, {})) continue;
    long dim = eigenspace_dim_fast(w, zeta);
    if (dim > bestDim) {
      bestDim = dim;
      best = &w;
    }
  }

  rep.clauses.emplace_back("existence", (best != nullptr) == table.exists);
  if (table.exists && best) {
    rep.clauses.emplace_back("eigenspace dimension", bestDim == table.k);
    auto basis = eigenspace_basis(*best, zeta);
    long expect = table.rho * table.k * (table.k - 1) / 2 +
                  (table.sharp ? table.k : 0);
    rep.clauses.emplace_back(
        "hyperplane classes",
        detail::hyperplane_classes(kind, m, basis) == expect);
    long z = 0;
    for (const auto& w : weyl_elements(kind, m))
      if (w * *best == *best * w) ++z;
    rep.centralizer = z;
    if (kind != LKind::D) {
      long expectZ = 1;
      for (long i = 1; i <= table.k; ++i) expectZ *= i * table.rho;
      rep.clauses.emplace_back("centralizer order", z == expectZ);
    }
  }
  rep.pass = true;
  for (const auto& [name, ok] : rep.clauses) rep.pass = rep.pass && ok;
  return rep;
}

// ---------------------------------------------------------------------------
// Component counts of eigenspace strata over a fixed root flat.

struct StratumReport {
  long componentCount = 0;
  long index = 0;         // [W(phi) : Z_{W,phi}(g)] for the first component
  bool obstruction = false;  // the flat normalizer misses some component
};

inline StratumReport stratum_components(LKind kind, int m, long r,
                                        const std::vector<int>& phi,
                                        long cap = kOracleCap) {
  detail::weyl_order_capped(kind, m, cap);
  auto roots = root_lines(kind, m);
  std::vector<std::vector<Cyc>> rows;
  for (int k : phi) rows.push_back(detail::root_cyc(roots[k]));
  auto flatBasis = detail::kernel_basis(rows, m);
  Cyc zeta = Cyc::zeta(r);

  std::map<std::vector<std::vector<Cyc>>, SignedPerm> comps;
  auto W = weyl_elements(kind, m);
  for (const auto& w : W) {
    if (!regular_nonempty(kind, m, w, zeta, phi)) continue;
    auto span =
        detail::canonical_span(stratum_flat(kind, m, phi, w, zeta), m);
    comps.emplace(std::move(span), w);
  }
  StratumReport rep;
  rep.componentCount = static_cast<long>(comps.size());
  if (comps.empty()) return rep;

  const SignedPerm& g = comps.begin()->second;
  // normalizer of the root flat, with restriction signatures
  std::vector<const SignedPerm*> normalizer;
  std::set<std::vector<std::vector<Cyc>>> allSigs, zSigs;
  for (const auto& w : W) {
    bool keeps = true;
    std::vector<std::vector<Cyc>> sig;
    for (const auto& b : flatBasis) {
      std::vector<Cyc> wb = w.act(b);
      for (int k : phi)
        if (!detail::apply_root(roots[k], wb).is_zero()) {
          keeps = false;
          break;
        }
      if (!keeps) break;
      sig.push_back(std::move(wb));
    }
    if (!keeps) continue;
    normalizer.push_back(&w);
    bool commutes = true;
    for (const auto& b : flatBasis)
      if (w.act(g.act(b)) != g.act(w.act(b))) {
        commutes = false;
        break;
      }
    if (commutes) zSigs.insert(sig);
    allSigs.insert(std::move(sig));
  }
  rep.index = static_cast<long>(allSigs.size()) /
              static_cast<long>(std::max<size_t>(zSigs.size(), 1));

  // does the normalizer orbit of the first component reach every component?
  std::set<std::vector<std::vector<Cyc>>> orbit;
  auto firstBasis = stratum_flat(kind, m, phi, g, zeta);
  for (const SignedPerm* n : normalizer) {
    std::vector<std::vector<Cyc>> moved;
    for (const auto& b : firstBasis) moved.push_back(n->act(b));
    orbit.insert(detail::canonical_span(moved, m));
  }
  for (const auto& [span, w] : comps)
    if (!orbit.count(span)) {
      rep.obstruction = true;
      break;
    }
  return rep;
}

}  // namespace fission
