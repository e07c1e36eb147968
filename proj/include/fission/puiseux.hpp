#pragma once

// Exponential factors q = sum a_k z^{-k} (k positive rational), their Galois
// conjugates, truncations, Stokes circles plain and up-to-sign, specialness.

#include <map>
#include <set>
#include <vector>

#include "fission/cyclotomic.hpp"
#include "fission/rational.hpp"

namespace fission {

class ExpFactor {
 public:
  // exponent -> nonzero coefficient, enumerated with exponents descending
  using Terms = std::map<Q, Cyc, std::greater<Q>>;

  ExpFactor() = default;
  explicit ExpFactor(Terms t) : terms_(std::move(t)) { prune_(); }

  static ExpFactor tame() { return ExpFactor(); }
  static ExpFactor monomial(const Q& k, Cyc a = Cyc(Q(1))) {
    Terms t;
    if (!(k > 0)) throw std::invalid_argument("exponent must be positive");
    t.emplace(k, std::move(a));
    return ExpFactor(std::move(t));
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Cyc coeff(const Q& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Cyc(Q(0)) : it->second;
  }

  ExpFactor with_term(const Q& k, const Cyc& a) const {
    Terms t = terms_;
    if (a.is_zero())
      t.erase(k);
    else
      t[k] = a;
    return ExpFactor(std::move(t));
  }

  long ram() const {
    long r = 1;
    for (const auto& [k, a] : terms_) r = std::lcm(r, denominator(k));
    return r;
  }

  // slope = max exponent; 0 for the tame factor. irr = slope * ram.
  Q slope() const { return terms_.empty() ? Q(0) : terms_.begin()->first; }
  long irr() const {
    Q s = slope() * ram();
    return q_num(s);
  }

  std::vector<Q> exponents() const {
    std::vector<Q> e;
    for (const auto& [k, a] : terms_) e.push_back(k);
    return e;  // strictly decreasing
  }

  ExpFactor operator-() const {
    Terms t = terms_;
    for (auto& [k, a] : t) a = -a;
    return ExpFactor(std::move(t));
  }

  friend ExpFactor operator+(const ExpFactor& x, const ExpFactor& y) {
    Terms t = x.terms_;
    for (const auto& [k, a] : y.terms_) {
      auto it = t.find(k);
      if (it == t.end())
        t.emplace(k, a);
      else
        it->second += a;
    }
    return ExpFactor(std::move(t));
  }
  friend ExpFactor operator-(const ExpFactor& x, const ExpFactor& y) {
    return x + (-y);
  }

  friend bool operator==(const ExpFactor& x, const ExpFactor& y) {
    if (x.terms_.size() != y.terms_.size()) return false;
    auto i = x.terms_.begin();
    auto j = y.terms_.begin();
    for (; i != x.terms_.end(); ++i, ++j)
      if (i->first != j->first || !(i->second == j->second)) return false;
    return true;
  }
  friend bool operator!=(const ExpFactor& x, const ExpFactor& y) {
    return !(x == y);
  }

  // Deterministic total order: exponents descending, then coefficients.
  friend bool operator<(const ExpFactor& x, const ExpFactor& y) {
    auto i = x.terms_.begin();
    auto j = y.terms_.begin();
    for (; i != x.terms_.end() && j != y.terms_.end(); ++i, ++j) {
      if (i->first != j->first) return i->first > j->first;  // larger exp first
      if (!(i->second == j->second)) return i->second < j->second;
    }
    return x.terms_.size() < y.terms_.size();
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [k, a] : terms_) {
      if (!first) s += " + ";
      first = false;
      std::string c = a.str();
      if (c != "1") {
        bool atomic = c.find(' ') == std::string::npos;
        s += atomic ? c : "(" + c + ")";
        s += "*";
      }
      s += "z^(-" + q_str(k) + ")";
    }
    return s;
  }

 private:
  Terms terms_;
  void prune_() {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->second.is_zero())
        it = terms_.erase(it);
      else
        ++it;
    }
  }
};

// j-th Galois conjugate: coefficient at z^{-i/r} picks up zeta_r^{ij}.
inline ExpFactor conjugate(const ExpFactor& q, long j) {
  long r = q.ram();
  j %= r;
  if (j < 0) j += r;
  if (j == 0) return q;
  ExpFactor::Terms t;
  for (const auto& [k, a] : q.terms()) {
    long i = q_num(k * r);
    t.emplace(k, a * Cyc::zeta(r, (i % r) * j % r));
  }
  return ExpFactor(std::move(t));
}

// Height-k truncation: keeps exponents >= ceil(k*r)/r, r = ram(q).
inline ExpFactor truncate(const ExpFactor& q, const Q& k) {
  if (k < 0) throw std::invalid_argument("negative truncation height");
  if (k == 0) return q;
  long r = q.ram();
  Q kr = k * r;
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), kr.get_num().get_mpz_t(), kr.get_den().get_mpz_t());
  Q cut = Q(c) / r;
  ExpFactor::Terms t;
  for (const auto& [e, a] : q.terms())
    if (e >= cut) t.emplace(e, a);
  return ExpFactor(std::move(t));
}

inline std::vector<ExpFactor> circle_orbit(const ExpFactor& q) {
  long r = q.ram();
  std::vector<ExpFactor> orb;
  orb.reserve(r);
  for (long j = 0; j < r; ++j) orb.push_back(conjugate(q, j));
  return orb;
}

inline std::set<ExpFactor> signed_orbit_set(const ExpFactor& q) {
  std::set<ExpFactor> s;
  for (const auto& c : circle_orbit(q)) {
    s.insert(c);
    s.insert(-c);
  }
  return s;
}

inline bool same_circle(const ExpFactor& q, const ExpFactor& qq, bool with_sign) {
  for (const auto& c : circle_orbit(q)) {
    if (c == qq) return true;
    if (with_sign && (-c) == qq) return true;
  }
  return false;
}

// Special number sequences: all d_i even and 2m/d_i odd, m = lcm(d_i/2).
inline bool is_special_sequence(const std::vector<long>& d) {
  if (d.empty()) throw std::invalid_argument("empty denominator sequence");
  long m = 1;
  for (long x : d) {
    if (x % 2 != 0) return false;
    m = std::lcm(m, x / 2);
  }
  for (long x : d)
    if ((2 * m / x) % 2 == 0) return false;
  return true;
}

enum class CircleFlavour { Tame, Special, Nonspecial };

struct SignedCircle {
  ExpFactor rep;  // canonical: least element of {±q^{(j)}}
  long ram = 1;
  CircleFlavour flavour = CircleFlavour::Tame;
  long card = 1;  // |<±q>|

  bool special() const { return flavour == CircleFlavour::Special; }

  friend bool operator==(const SignedCircle& a, const SignedCircle& b) {
    return a.rep == b.rep;
  }
  friend bool operator!=(const SignedCircle& a, const SignedCircle& b) {
    return !(a == b);
  }
  friend bool operator<(const SignedCircle& a, const SignedCircle& b) {
    return a.rep < b.rep;
  }
};

inline SignedCircle classify_circle(const ExpFactor& q) {
  SignedCircle sc;
  sc.ram = q.ram();
  if (q.is_zero()) {
    sc.rep = q;
    sc.flavour = CircleFlavour::Tame;
    sc.card = 1;
    return sc;
  }
  std::vector<long> dens;
  for (const Q& e : q.exponents()) dens.push_back(denominator(e));
  bool special = is_special_sequence(dens);
  sc.flavour = special ? CircleFlavour::Special : CircleFlavour::Nonspecial;
  auto orbit = signed_orbit_set(q);
  sc.card = static_cast<long>(orbit.size());
  sc.rep = *orbit.begin();
  // specialness <=> |±I| = ram (else 2*ram); cheap cross-check
  if (sc.card != (special ? sc.ram : 2 * sc.ram))
    throw std::logic_error("specialness/orbit cardinality mismatch");
  return sc;
}

}  // namespace fission
