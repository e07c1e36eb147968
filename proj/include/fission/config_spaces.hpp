#pragma once

// Local configuration spaces of tree vertices (named hyperplane complements)
// and the global product factorization of the deformation space, with the
// three multiplicity functions.

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "fission/tree.hpp"

namespace fission {

enum class FVariant { Point, Affine, Torus, M, MSharp, MDoubleSharp };

struct FactorDescriptor {
  FVariant variant = FVariant::Point;
  long rho = 0;  // multiplier order (M, MSharp, MDoubleSharp)
  long k = 0;    // size: Affine/Torus n; M/MSharp k; MDoubleSharp mandatory block
  long k2 = 0;   // MDoubleSharp free block

  long dim() const {
    switch (variant) {
      case FVariant::Point: return 0;
      case FVariant::MDoubleSharp: return k + k2;
      default: return k;
    }
  }

  std::string str() const {
    std::ostringstream os;
    switch (variant) {
      case FVariant::Point: return "Point";
      case FVariant::Affine: os << "Affine(" << k << ")"; break;
      case FVariant::Torus: os << "Torus(" << k << ")"; break;
      case FVariant::M: os << "M(" << rho << "," << k << ")"; break;
      case FVariant::MSharp: os << "MSharp(" << rho << "," << k << ")"; break;
      case FVariant::MDoubleSharp:
        os << "MDoubleSharp(" << k << "," << k2 << ")";
        break;
    }
    return os.str();
  }

  friend bool operator==(const FactorDescriptor& a, const FactorDescriptor& b) {
    return a.variant == b.variant && a.rho == b.rho && a.k == b.k &&
           a.k2 == b.k2;
  }
  friend bool operator<(const FactorDescriptor& a, const FactorDescriptor& b) {
    // report order: dimension, then variant rank, then parameters
    auto ta = std::make_tuple(a.dim(), static_cast<int>(a.variant), a.rho, a.k,
                              a.k2);
    auto tb = std::make_tuple(b.dim(), static_cast<int>(b.variant), b.rho, b.k,
                              b.k2);
    return ta < tb;
  }
};

// Degenerate identifications: M(rho,1) = Affine(1), MSharp(rho,1) = Torus(1),
// MDoubleSharp with an empty mandatory block = M.
inline FactorDescriptor normalize(FactorDescriptor f) {
  if (f.variant == FVariant::MDoubleSharp && f.k == 0) {
    f.variant = FVariant::M;
    f.k = f.k2;
    f.k2 = 0;
  }
  if (f.variant == FVariant::M && f.k == 1)
    return {FVariant::Affine, 0, 1, 0};
  if (f.variant == FVariant::MSharp && f.k == 1)
    return {FVariant::Torus, 0, 1, 0};
  return f;
}

namespace detail {
// prefix above v's children built from the natural coefficients
inline ExpFactor natural_prefix(const FissionTree& T, int v) {
  ExpFactor q;
  for (int u = v; u >= 0; u = T.verts[u].parent) {
    const TreeVertex& w = T.verts[u];
    if ((w.kind == VKind::Mandatory || w.kind == VKind::Inconsequential) &&
        !w.coeff.is_zero())
      q = q + ExpFactor::monomial(w.height, w.coeff);
  }
  return q;
}
}  // namespace detail

// The space of coefficient tuples the children of v may take: with n children
// carrying coefficients and multiplier order rho the pairwise constraints
// c_i^rho != c_j^rho cut out M(rho,n); an empty or hybridation sibling (a
// forced zero) or all-mandatory children additionally force c_i != 0, giving
// MSharp; mixed mandatory/free children give the two-block MDoubleSharp.
inline FactorDescriptor local_factor(const FissionTree& T, int v) {
  long mand = 0, inc = 0, zero = 0;
  bool empt = false;     // some family branches off a vanishing prefix (E/HE)
  bool special = false;  // special family
  Q k(0);
  for (int u : T.verts[v].children) {
    const TreeVertex& w = T.verts[u];
    if (w.kind == VKind::Leaf) continue;
    k = w.height;
    if (w.kind == VKind::Mandatory || w.kind == VKind::Inconsequential) {
      if (w.kind == VKind::Mandatory)
        ++mand;
      else
        ++inc;
      if (w.edge == EType::E || w.edge == EType::HE)
        empt = true;
      else if (w.edge == EType::S)
        special = true;
    } else {
      ++zero;
    }
  }
  if (mand + inc == 0) return {};  // Point
  FactorDescriptor f;
  if (T.kind == LKind::D) {
    // partial ramification order above the children, counting every
    // admissible height on the path (generic coefficients)
    long N = 1;
    for (int u = v; u >= 0; u = T.verts[u].parent) {
      const TreeVertex& w = T.verts[u];
      if (w.kind == VKind::Mandatory || w.kind == VKind::Inconsequential)
        N = lcm_long(N, q_den(w.height));
    }
    if (empt)  // distinctness of the circles up to sign and twist
      f.rho = N % 2 ? 2 * N : N;
    else if (special)
      f.rho = (N == 1 && inc == 0) ? 2 : (N % 2 ? N : 2 * N);
    else  // nonspecial: plain twisted orbits, no sign
      f.rho = N;
  } else {
    f.rho = fission_order(detail::natural_prefix(T, v), k, T.kind);
  }
  if (zero > 0 || inc == 0) {
    f.variant = FVariant::MSharp;
    f.k = mand + inc;
  } else if (mand == 0) {
    f.variant = FVariant::M;
    f.k = inc;
  } else {
    f.variant = FVariant::MDoubleSharp;
    f.rho = 2;  // mixed blocks only occur under vanishing prefixes
    f.k = mand;
    f.k2 = inc;
  }
  return normalize(f);
}

struct Factorization {
  std::vector<FactorDescriptor> factors;  // sorted, Point factors dropped
  long dimension = 0;
  std::map<std::pair<long, long>, long> mu;             // (rho, k) -> count
  std::map<std::pair<long, long>, long> muSharp;        // (rho, k) -> count
  std::map<std::pair<long, long>, long> muDoubleSharp;  // (k, k') -> count
};

inline Factorization factorize(const FissionTree& T) {
  Factorization F;
  for (size_t v = 0; v < T.verts.size(); ++v) {
    FactorDescriptor f = local_factor(T, static_cast<int>(v));
    if (f.variant == FVariant::Point) continue;
    F.factors.push_back(f);
    F.dimension += f.dim();
    switch (f.variant) {
      case FVariant::M: ++F.mu[{f.rho, f.k}]; break;
      case FVariant::MSharp: ++F.muSharp[{f.rho, f.k}]; break;
      case FVariant::MDoubleSharp: ++F.muDoubleSharp[{f.k, f.k2}]; break;
      default: break;
    }
  }
  std::sort(F.factors.begin(), F.factors.end());
  return F;
}

// "[Affine(1), Torus(1)x5, MSharp(4,2)]" (repeats grouped, sorted order)
inline std::string factorization_str(const Factorization& F) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < F.factors.size();) {
    size_t j = i;
    while (j < F.factors.size() && F.factors[j] == F.factors[i]) ++j;
    if (i) os << ", ";
    os << F.factors[i].str();
    if (j - i > 1) os << "×" << (j - i);
    i = j;
  }
  os << "]";
  return os.str();
}

}  // namespace fission
