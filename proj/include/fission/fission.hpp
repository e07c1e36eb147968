#pragma once

// Pointed irregular types, common parts, fission exponents and the
// coefficient-distinctness tables, plus the per-entry level data with the
// leaf rule for type D.  The BC case compares signed circles <±q>, the A and
// D cases plain circles <q>; everything downstream (distinctness orders,
// compatibility, fission exponents) derives from that single switch.

#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fission/level_data.hpp"
#include "fission/puiseux.hpp"

namespace fission {

struct CommonPart {
  ExpFactor qc;  // shared prefix
  Q f;           // fission exponent (0 for equal factors)
  long N = 1;    // partial ramification order
};

// Part of q strictly above exponent f.
inline ExpFactor prefix_above(const ExpFactor& q, const Q& f) {
  ExpFactor p;
  for (const Q& e : q.exponents())
    if (e > f) p = p + ExpFactor::monomial(e, q.coeff(e));
  return p;
}

// Common part of two factors of a compatible pointed type.  with_sign picks
// the circle notion: true for BC (<±q>), false for A and D (<q>).
// Throws if the pair is incompatible (truncated circles agree somewhere the
// truncations themselves do not, including the same-circle degenerate case).
inline CommonPart common_part(const ExpFactor& q, const ExpFactor& qq,
                              bool with_sign = true) {
  Q f_exact = (q - qq).slope();
  Q f_circ = f_exact;
  long r = qq.ram();
  for (long j = 0; j < r; ++j) {
    ExpFactor c = conjugate(qq, j);
    f_circ = std::min(f_circ, (q - c).slope());
    if (with_sign) f_circ = std::min(f_circ, (q + c).slope());
  }
  if (f_exact != f_circ)
    throw std::invalid_argument(
        "incompatible factors: circles agree above height " +
        q_str(f_circ) + " but truncations differ");
  CommonPart cp;
  cp.qc = prefix_above(q, f_exact);
  cp.f = f_exact;
  cp.N = cp.f == 0
             ? 1
             : lcm_long(cp.qc.ram(), q_den(cp.f)) / cp.qc.ram();
  return cp;
}

// Order of the group of multipliers that the stabilizer of qc (inside the
// Galois group, extended by the global sign for BC) induces on a coefficient
// at exponent k.  Two factors qc + a z^{-k}, qc + b z^{-k} lie on one circle
// iff b/a lies in that group, i.e. iff a^c = b^c.
inline long fission_order(const ExpFactor& qc, const Q& k, LKind kind) {
  for (const Q& e : qc.exponents())
    if (!(e > k))
      throw std::invalid_argument("fission_order: qc has exponents <= k");
  long r = lcm_long(qc.ram(), q_den(k));
  long kr = q_num(k * r);  // k*r is an integer
  bool with_sign = kind == LKind::BC;
  // multipliers are s * zeta_r^t, encoded as exponents 2t + r[s=-1] in Z/2r
  long d = 2 * r;
  for (long j = 0; j < r; ++j) {
    ExpFactor c = conjugate(qc, j);
    long t = (j * kr) % r;
    if (c == qc) d = std::gcd(d, (2 * t) % (2 * r));
    if (with_sign && c == -qc) d = std::gcd(d, (2 * t + r) % (2 * r));
  }
  return 2 * r / d;
}

// True iff qc + a z^{-k} and qc + b z^{-k} lie on distinct circles, i.e. the
// fission exponent of the pair is exactly k.
inline bool fission_distinct(const ExpFactor& qc, const Cyc& a, const Cyc& b,
                             const Q& k, LKind kind) {
  long c = fission_order(qc, k, kind);
  return a.pow(c) != b.pow(c);
}

struct PTEntry {
  long mult = 1;       // integer convention (special circles store 2n)
  ExpFactor q;
  int sign = 1;        // enhancement, meaningful for D only

  friend bool operator==(const PTEntry& x, const PTEntry& y) {
    return x.mult == y.mult && x.q == y.q && x.sign == y.sign;
  }
};

struct PointedType {
  LKind caseTag = LKind::BC;
  std::vector<PTEntry> entries;
  bool compatible = true;
};

// Validates multiplicities and pairwise-distinct circles (signed for BC,
// plain for A/D) and caches compatibility of all pairs.
inline PointedType make_pointed_type(
    LKind kind, const std::vector<std::pair<long, ExpFactor>>& es) {
  PointedType pt;
  pt.caseTag = kind;
  bool with_sign = kind == LKind::BC;
  for (const auto& [m, q] : es) {
    if (m < 1) throw std::invalid_argument("entry multiplicity must be >= 1");
    pt.entries.push_back({m, q, 1});
  }
  for (size_t i = 0; i < pt.entries.size(); ++i)
    for (size_t j = i + 1; j < pt.entries.size(); ++j) {
      if (same_circle(pt.entries[i].q, pt.entries[j].q, with_sign))
        throw std::invalid_argument("entries " + std::to_string(i) + "," +
                                    std::to_string(j) +
                                    " lie on the same circle");
      try {
        common_part(pt.entries[i].q, pt.entries[j].q, with_sign);
      } catch (const std::invalid_argument&) {
        pt.compatible = false;
      }
    }
  return pt;
}

struct NotADType : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

namespace detail {
// Canonical sign of a non-tame entry: (-1)^m for special circles, +1 else.
inline int canonical_sign(const PTEntry& e) {
  if (classify_circle(e.q).special()) return e.mult % 2 == 0 ? 1 : -1;
  return 1;
}
}  // namespace detail

// Product of the entry signs (the tame circle, whose sign is a free choice,
// contributes whatever the entry currently carries; the rest their canonical
// value).
inline int global_sign(const PointedType& pt) {
  if (pt.caseTag != LKind::D)
    throw std::invalid_argument("global_sign: not a D type");
  int s = 1;
  for (const auto& e : pt.entries)
    s *= e.q.is_zero() ? e.sign : detail::canonical_sign(e);
  return s;
}

// Attaches the unique enhancement: canonical signs on non-tame entries, the
// tame sign chosen to make the product +1.  Throws NotADType when there is
// no tame circle to absorb a global sign of -1 (the pointed quasi-type does
// not come from a D irregular class).
inline PointedType enhance(PointedType pt) {
  if (pt.caseTag != LKind::D)
    throw std::invalid_argument("enhance: not a D type");
  int prod = 1;
  PTEntry* tame = nullptr;
  for (auto& e : pt.entries) {
    if (e.q.is_zero()) {
      tame = &e;
      continue;
    }
    e.sign = detail::canonical_sign(e);
    prod *= e.sign;
  }
  if (tame)
    tame->sign = prod;  // total product is prod^2 = +1
  else if (prod == -1)
    throw NotADType("global sign -1 and no tame circle: not a D type");
  return pt;
}

struct FissionDatum {
  LKind kind = LKind::BC;
  std::vector<std::pair<long, LevelDatum>> data;  // (mult, level datum)
  std::vector<std::vector<Q>> f;                  // fission exponents
};

// Level data of every entry (with the type-D leaf rule: an EmptyD entry with
// a nonvanishing common part with some other entry carries {slope} instead)
// and the matrix of pairwise fission exponents.
inline FissionDatum fission_datum(const PointedType& pt) {
  if (!pt.compatible)
    throw std::invalid_argument("fission_datum: incompatible pointed type");
  bool with_sign = pt.caseTag == LKind::BC;
  size_t p = pt.entries.size();
  FissionDatum fd;
  fd.kind = pt.caseTag;
  fd.f.assign(p, std::vector<Q>(p, Q(0)));
  for (size_t i = 0; i < p; ++i)
    for (size_t j = i + 1; j < p; ++j)
      fd.f[i][j] = fd.f[j][i] =
          common_part(pt.entries[i].q, pt.entries[j].q, with_sign).f;
  for (size_t i = 0; i < p; ++i) {
    const PTEntry& e = pt.entries[i];
    LevelDatum L;
    switch (pt.caseTag) {
      case LKind::A:
        L = level_datum_A(e.q);
        break;
      case LKind::BC:
        L = level_datum_BC(e.q);
        break;
      case LKind::D: {
        L = level_datum_D(e.mult, e.q, e.sign);
        if (L.empty_d()) {
          bool vanishing = true;
          for (size_t j = 0; j < p && vanishing; ++j)
            if (j != i)
              vanishing = common_part(e.q, pt.entries[j].q, false).qc.is_zero();
          if (!vanishing) {
            // leaf rule: promote to the slope alone
            L = level_datum_BC(ExpFactor::monomial(e.q.slope()));
            L.kind = LKind::D;
            L.sign = e.sign;
            L.dflavour = DFlavour::None;
          }
        }
        break;
      }
    }
    fd.data.emplace_back(e.mult, L);
  }
  return fd;
}

}  // namespace fission
