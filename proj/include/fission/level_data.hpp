#pragma once

// Level data for types A / BC / D, good breakings of specialness, and
// admissible/inconsequential exponents.
//
// The BC level set is computed twice: a fast path driven by denominator
// combinatorics, and a brute-force oracle over actual Galois conjugates;
// tests require them to agree.

#include <optional>
#include <set>
#include <vector>

#include "fission/puiseux.hpp"

namespace fission {

enum class LKind { A, BC, D };
enum class DFlavour { None, EmptyD, EmptyBC };

struct LevelDatum {
  LKind kind = LKind::BC;
  std::vector<Q> levels;  // strictly decreasing
  DFlavour dflavour = DFlavour::None;
  int sign = +1;  // enhancement, meaningful for kind D only
  // BC decomposition (populated for BC data and nonempty D data)
  std::vector<Q> s_part, a_part, plus_part;

  bool empty_d() const { return dflavour == DFlavour::EmptyD; }
  bool empty_bc() const { return dflavour == DFlavour::EmptyBC; }

  long ram() const {
    long r = 1;
    for (const Q& k : levels) r = std::lcm(r, denominator(k));
    return r;
  }

  bool special() const {
    // a nonempty BC datum is the datum of a special circle iff L+ = S = {}
    // and its own denominator sequence is special
    if (levels.empty()) return false;
    std::vector<long> d;
    for (const Q& k : levels) d.push_back(denominator(k));
    return s_part.empty() && plus_part.empty() && is_special_sequence(d);
  }

  friend bool operator==(const LevelDatum& x, const LevelDatum& y) {
    return x.kind == y.kind && x.levels == y.levels &&
           x.dflavour == y.dflavour && (x.kind != LKind::D || x.sign == y.sign);
  }
  friend bool operator!=(const LevelDatum& x, const LevelDatum& y) {
    return !(x == y);
  }
};

inline std::vector<long> denominators(const std::vector<Q>& ks) {
  std::vector<long> d;
  d.reserve(ks.size());
  for (const Q& k : ks) d.push_back(denominator(k));
  return d;
}

inline LevelDatum level_datum_A(const ExpFactor& q) {
  LevelDatum L;
  L.kind = LKind::A;
  if (q.is_zero()) return L;
  // slope(q^{(0)} - q^{(delta)}) = max{e in E(q) : den(e) does not divide delta}
  long r = q.ram();
  std::set<Q> out;
  for (long delta = 1; delta < r; ++delta) {
    for (const auto& [e, a] : q.terms()) {
      if (delta % denominator(e) != 0) {
        out.insert(e);
        break;  // terms are enumerated with exponents descending
      }
    }
  }
  L.levels.assign(out.rbegin(), out.rend());
  return L;
}

// Brute-force oracle: slopes of q^{(i)} +- q^{(j)} with exact arithmetic.
inline LevelDatum level_datum_A_oracle(const ExpFactor& q) {
  LevelDatum L;
  L.kind = LKind::A;
  auto orbit = circle_orbit(q);
  std::set<Q> out;
  for (size_t i = 0; i < orbit.size(); ++i)
    for (size_t j = 0; j < orbit.size(); ++j) {
      if (i == j) continue;
      ExpFactor d = orbit[i] - orbit[j];
      if (!d.is_zero()) out.insert(d.slope());
    }
  L.levels.assign(out.rbegin(), out.rend());
  return L;
}

inline LevelDatum level_datum_BC_oracle(const ExpFactor& q) {
  LevelDatum L;
  L.kind = LKind::BC;
  if (q.is_zero()) return L;
  auto orbit = circle_orbit(q);
  std::set<Q> out, sums, diffs;
  out.insert(q.slope());
  for (size_t i = 0; i < orbit.size(); ++i)
    for (size_t j = 0; j < orbit.size(); ++j) {
      if (i == j) continue;
      ExpFactor d = orbit[i] - orbit[j];
      if (!d.is_zero()) {
        out.insert(d.slope());
        diffs.insert(d.slope());
      }
      ExpFactor s = orbit[i] + orbit[j];
      if (!s.is_zero()) {
        out.insert(s.slope());
        sums.insert(s.slope());
      }
    }
  L.levels.assign(out.rbegin(), out.rend());
  // canonical decomposition: integer slope -> S; A-levels; rest of sums -> L+
  L.a_part.assign(diffs.rbegin(), diffs.rend());
  if (denominator(q.slope()) == 1) L.s_part = {q.slope()};
  for (auto it = sums.rbegin(); it != sums.rend(); ++it)
    if (!diffs.count(*it) && !(L.s_part.size() && L.s_part[0] == *it))
      L.plus_part.push_back(*it);
  return L;
}

// Fast path: S = {slope} iff slope integral; L_A by denominators; L+ by the
// unique special-prefix scan.
inline LevelDatum level_datum_BC(const ExpFactor& q) {
  LevelDatum L;
  L.kind = LKind::BC;
  if (q.is_zero()) return L;
  LevelDatum la = level_datum_A(q);
  L.a_part = la.levels;
  std::set<Q> out(la.levels.begin(), la.levels.end());
  Q s = q.slope();
  out.insert(s);
  if (denominator(s) == 1) L.s_part = {s};
  // L+ scan over E(q): find n with (d_1..d_{n-1}) special (empty allowed),
  // (d_1..d_n) nonspecial, d_n | lcm(d_1..d_{n-1}); only for ramified circles
  if (q.ram() > 1) {
    std::vector<Q> E = q.exponents();
    std::vector<long> d = denominators(E);
    long lcm_prefix = 1;
    bool prefix_special = true;  // empty prefix counts as special here
    for (size_t n = 0; n < d.size() && prefix_special; ++n) {
      std::vector<long> upto(d.begin(), d.begin() + n + 1);
      bool now_special = is_special_sequence(upto);
      if (!now_special && d[n] != 0 && lcm_prefix % d[n] == 0) {
        // canonical decomposition keeps S and L+ disjoint
        if (L.s_part.empty() || L.s_part[0] != E[n]) L.plus_part = {E[n]};
        out.insert(E[n]);
        break;
      }
      prefix_special = now_special;
      lcm_prefix = std::lcm(lcm_prefix, d[n]);
    }
  }
  L.levels.assign(out.rbegin(), out.rend());
  return L;
}

inline bool has_special_beginning(const std::vector<Q>& E) {
  std::vector<long> d = denominators(E);
  for (size_t n = 1; n <= d.size(); ++n)
    if (is_special_sequence(std::vector<long>(d.begin(), d.begin() + n)))
      return true;
  return false;
}

// Good breakings of specialness of a strictly-decreasing exponent list.
inline std::set<Q> good_breakings(const std::vector<Q>& E) {
  std::set<Q> out;
  std::vector<long> d = denominators(E);
  for (size_t n = 1; n <= E.size(); ++n) {
    std::vector<long> prefix(d.begin(), d.begin() + n);
    if (!is_special_sequence(prefix)) continue;
    long M = 1;
    for (long x : prefix) M = std::lcm(M, x);
    Q hi = E[n - 1];
    Q lo = (n < E.size()) ? E[n] : Q(0);
    // candidates strictly between lo and hi with denominator dividing M
    mpz_class f;
    Q loM = lo * M;
    mpz_fdiv_q(f.get_mpz_t(), loM.get_num().get_mpz_t(), loM.get_den().get_mpz_t());
    for (Q k = Q(f + 1) / M; k < hi; k += Q(1, M)) {
      if (k <= lo) continue;
      long dk = denominator(k);
      std::vector<long> ext = prefix;
      ext.push_back(dk);
      if (!is_special_sequence(ext)) out.insert(k);
    }
  }
  return out;
}

// Type-A admissible exponents of a level datum (infinite integer tail above
// max; cutoff bounds the materialized set).
inline std::set<Q> admissible_A(const std::vector<Q>& levels, const Q& cutoff) {
  std::set<Q> out;
  for (const Q& l : levels)
    if (l <= cutoff) out.insert(l);
  // integers above max(levels)
  Q top = levels.empty() ? Q(0) : levels.front();
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), top.get_num().get_mpz_t(), top.get_den().get_mpz_t());
  for (Q k = Q(fl) + 1; k <= cutoff; k += 1)
    if (k > top) out.insert(k);
  // below each level: denominator divides the lcm of the levels above
  long M = 1;
  for (size_t j = 0; j < levels.size(); ++j) {
    M = std::lcm(M, denominator(levels[j]));
    Q hi = levels[j];
    Q lo = (j + 1 < levels.size()) ? levels[j + 1] : Q(0);
    if (hi > cutoff) hi = cutoff + Q(1, M);  // cap zone scan
    mpz_class f;
    Q loM = lo * M;
    mpz_fdiv_q(f.get_mpz_t(), loM.get_num().get_mpz_t(), loM.get_den().get_mpz_t());
    for (Q k = Q(f + 1) / M; k < hi; k += Q(1, M)) {
      if (k <= lo || k > cutoff) continue;
      out.insert(k);
    }
  }
  return out;
}

struct AdmissibleSets {
  std::set<Q> adm, inc;
};

struct CutoffRequired : std::runtime_error {
  CutoffRequired() : std::runtime_error("cutoff required for an infinite admissible family") {}
};

// Adm/Inc per the three BC cases; for D data per the empty-flavour rules.
// `cutoff` is required exactly when the set is infinite (type-A data, the
// D empty flavour EmptyD); finite BC sets ignore it.
inline AdmissibleSets admissible_exponents(const LevelDatum& L,
                                           std::optional<Q> cutoff = std::nullopt) {
  AdmissibleSets out;
  if (L.kind == LKind::D) {
    if (L.dflavour == DFlavour::EmptyBC) return out;
    if (L.dflavour == DFlavour::EmptyD) {
      if (!cutoff) throw CutoffRequired();
      Q start = (L.sign == 1) ? Q(1) : Q(1, 2);
      for (Q k = start; k <= *cutoff; k += 1) out.adm.insert(k);
      out.inc = out.adm;
      return out;
    }
    // nonempty D datum: same sets as BC
  }
  if (L.kind == LKind::A) {
    if (!cutoff) throw CutoffRequired();
    out.adm = admissible_A(L.levels, *cutoff);
    for (const Q& k : out.adm)
      if (std::find(L.levels.begin(), L.levels.end(), k) == L.levels.end())
        out.inc.insert(k);
    return out;
  }
  // BC (or nonempty D): finite
  if (L.levels.empty()) return out;
  std::vector<Q> SA = L.s_part;
  SA.insert(SA.end(), L.a_part.begin(), L.a_part.end());
  std::sort(SA.begin(), SA.end(), std::greater<Q>());
  Q max_sa = SA.front();
  std::set<Q> admA = admissible_A(L.a_part, max_sa);
  if (!has_special_beginning(SA)) {
    // case 1: Adm_A(L_A) cut at max(S u L_A)
    for (const Q& k : admA)
      if (k <= max_sa) out.adm.insert(k);
  } else {
    // special beginnings force S = {}; bound is max(L_A)
    Q max_a = L.a_part.front();
    std::set<Q> beta = good_breakings(L.a_part);
    if (L.plus_part.empty()) {
      for (const Q& k : admA)
        if (k <= max_a && !beta.count(k)) out.adm.insert(k);
    } else {
      Q kb = L.plus_part.front();
      for (const Q& k : admA)
        if (k <= max_a && (k <= kb || !beta.count(k))) out.adm.insert(k);
    }
  }
  for (const Q& k : out.adm)
    if (std::find(L.levels.begin(), L.levels.end(), k) == L.levels.end())
      out.inc.insert(k);
  return out;
}

// Same admissible set, but inconsequential relative to the full exponent set
// E(q) of a circle representative rather than to the level set alone. These
// differ when an exponent of q is admissible without being a level.
inline AdmissibleSets admissible_exponents_for_circle(
    const ExpFactor& q, std::optional<Q> cutoff = std::nullopt) {
  AdmissibleSets out = admissible_exponents(level_datum_BC(q), cutoff);
  std::vector<Q> E = q.exponents();
  out.inc.clear();
  for (const Q& k : out.adm)
    if (std::find(E.begin(), E.end(), k) == E.end()) out.inc.insert(k);
  return out;
}

// Type-D level datum of an elementary enhanced entry (integer-multiplicity
// convention).
inline LevelDatum level_datum_D(long mult, const ExpFactor& q, int sign) {
  if (mult < 1) throw std::invalid_argument("multiplicity must be positive");
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +-1");
  if (!q.is_zero()) {
    auto sc = classify_circle(q);
    int expect = sc.special() ? ((mult % 2 == 0) ? 1 : -1) : 1;
    if (sign != expect)
      throw std::invalid_argument("enhancement sign inconsistent with entry");
  }
  LevelDatum L;
  L.kind = LKind::D;
  L.sign = sign;
  bool special_r2 = false;
  if (!q.is_zero()) {
    auto sc = classify_circle(q);
    special_r2 = sc.special() && sc.ram == 2;
  }
  bool untwisted = q.ram() == 1;
  if (mult == 1 && (q.is_zero() || (untwisted && !q.is_zero()) || special_r2)) {
    L.dflavour = DFlavour::EmptyD;
    return L;
  }
  if (mult >= 2 && q.is_zero()) {
    L.dflavour = DFlavour::EmptyBC;
    return L;
  }
  LevelDatum bc = level_datum_BC(q);
  L.levels = bc.levels;
  L.s_part = bc.s_part;
  L.a_part = bc.a_part;
  L.plus_part = bc.plus_part;
  return L;
}

}  // namespace fission
