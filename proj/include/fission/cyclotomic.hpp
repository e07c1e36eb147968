#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_L), power basis modulo the
// L-th cyclotomic polynomial. Elements at different levels are combined by
// lifting both to Q(zeta_lcm(L,L')).

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fission/rational.hpp"

namespace fission {

using Poly = std::vector<Q>;  // little-endian, may carry trailing zeros

inline void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, Q(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) r[i + j] += a[i] * b[j];
  }
  poly_trim(r);
  return r;
}

// Division with remainder; quotient is exact over Q since we only divide by
// nonzero-leading-coefficient divisors.
inline void poly_divmod(Poly a, const Poly& d, Poly& quo, Poly& rem) {
  poly_trim(a);
  Poly dd = d;
  poly_trim(dd);
  if (dd.empty()) throw std::invalid_argument("division by zero polynomial");
  quo.assign(a.size() >= dd.size() ? a.size() - dd.size() + 1 : 0, Q(0));
  while (a.size() >= dd.size() && !a.empty()) {
    Q f = a.back() / dd.back();
    size_t shift = a.size() - dd.size();
    quo[shift] += f;
    for (size_t i = 0; i < dd.size(); ++i) a[shift + i] -= f * dd[i];
    poly_trim(a);
  }
  rem = a;
  poly_trim(quo);
}

// Phi_L, cached. Computed as (x^L - 1) / prod_{d | L, d < L} Phi_d.
inline const Poly& cyclotomic_poly(long L) {
  static std::map<long, Poly> cache;
  auto it = cache.find(L);
  if (it != cache.end()) return it->second;
  Poly num(L + 1, Q(0));
  num[0] = -1;
  num[L] = 1;
  Poly den{Q(1)};
  for (long d = 1; d < L; ++d)
    if (L % d == 0) den = poly_mul(den, cyclotomic_poly(d));
  Poly quo, rem;
  poly_divmod(num, den, quo, rem);
  if (!rem.empty()) throw std::logic_error("cyclotomic division not exact");
  return cache.emplace(L, quo).first->second;
}

inline long cyclotomic_degree(long L) {
  return static_cast<long>(cyclotomic_poly(L).size()) - 1;
}

class Cyc {
 public:
  Cyc() : L_(1), c_(1, Q(0)) {}
  explicit Cyc(const Q& q) : L_(1), c_(1, q) {}
  Cyc(long level, Poly coeffs) : L_(level) {
    reduce_(std::move(coeffs));
  }

  static Cyc rational(const Q& q) { return Cyc(q); }
  static Cyc zeta(long L, long k = 1) {
    k %= L;
    if (k < 0) k += L;
    Poly p(k + 1, Q(0));
    p[k] = 1;
    return Cyc(L, std::move(p));
  }
  static Cyc imaginary_unit() { return zeta(4, 1); }

  long level() const { return L_; }
  const std::vector<Q>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  Q rational_part() const { return c_[0]; }

  Cyc lift(long M) const {
    if (M % L_ != 0) throw std::invalid_argument("lift target not a multiple");
    if (M == L_) return *this;
    long step = M / L_;
    Poly p;
    for (size_t j = 0; j < c_.size(); ++j) {
      if (c_[j] == 0) continue;
      size_t e = j * step;
      if (p.size() <= e) p.resize(e + 1, Q(0));
      p[e] += c_[j];
    }
    return Cyc(M, std::move(p));
  }

  friend void unify(Cyc& a, Cyc& b) {
    long M = std::lcm(a.L_, b.L_);
    a = a.lift(M);
    b = b.lift(M);
  }

  Cyc operator-() const {
    Cyc r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend Cyc operator+(Cyc a, Cyc b) {
    unify(a, b);
    for (size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return a;
  }
  friend Cyc operator-(Cyc a, const Cyc& b) { return a + (-b); }
  friend Cyc operator*(Cyc a, Cyc b) {
    unify(a, b);
    Poly p = poly_mul(Poly(a.c_.begin(), a.c_.end()),
                      Poly(b.c_.begin(), b.c_.end()));
    return Cyc(a.L_, std::move(p));
  }
  Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
  Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
  Cyc& operator*=(const Cyc& o) { return *this = *this * o; }

  friend bool operator==(Cyc a, Cyc b) {
    unify(a, b);
    return a.c_ == b.c_;
  }
  friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

  // Total order for use as map keys (level-lifted lexicographic).
  friend bool operator<(Cyc a, Cyc b) {
    unify(a, b);
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    }
    return false;
  }

  Cyc inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    // Extended Euclid in Q[x]: u*self + v*Phi_L = gcd (a nonzero constant).
    Poly r0 = cyclotomic_poly(L_);
    Poly r1(c_.begin(), c_.end());
    poly_trim(r1);
    Poly s0{}, s1{Q(1)};  // coefficients of `self`
    while (true) {
      Poly quo, rem;
      poly_divmod(r0, r1, quo, rem);
      if (rem.empty()) break;
      Poly t = s0;
      Poly qs = poly_mul(quo, s1);
      if (t.size() < qs.size()) t.resize(qs.size(), Q(0));
      for (size_t i = 0; i < qs.size(); ++i) t[i] -= qs[i];
      poly_trim(t);
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(t);
    }
    if (r1.size() != 1) throw std::logic_error("element not invertible");
    Q inv_gcd = 1 / r1[0];
    Poly res = s1;
    for (auto& x : res) x *= inv_gcd;
    return Cyc(L_, std::move(res));
  }

  Cyc pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    Cyc acc(Q(1));
    Cyc base = *this;
    while (e > 0) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  // Galois action zeta_L -> zeta_L^t; requires gcd(t, L) = 1.
  Cyc galois(long t) const {
    t %= L_;
    if (t < 0) t += L_;
    if (std::gcd(t, L_) != 1) throw std::invalid_argument("galois: t not coprime");
    Poly p;
    for (size_t j = 0; j < c_.size(); ++j) {
      if (c_[j] == 0) continue;
      size_t e = (j * t) % L_;
      if (p.size() <= e) p.resize(e + 1, Q(0));
      p[e] += c_[j];
    }
    return Cyc(L_, std::move(p));
  }

  // Multiplicative order, or 0 if not a root of unity (bounded search).
  long root_of_unity_order(long bound = 4096) const {
    Cyc one(Q(1));
    Cyc acc = *this;
    for (long n = 1; n <= bound; ++n) {
      if (acc == one) return n;
      acc *= *this;
    }
    return 0;
  }

  std::string str() const {
    if (is_rational()) return q_str(c_[0]);
    std::string s;
    bool first = true;
    for (size_t j = 0; j < c_.size(); ++j) {
      if (c_[j] == 0) continue;
      Q a = c_[j];
      if (!first) {
        s += (a < 0) ? " - " : " + ";
        if (a < 0) a = -a;
      } else if (a < 0 && j > 0) {
        s += "-";
        a = -a;
      }
      first = false;
      if (j == 0) {
        s += q_str(a);
      } else {
        if (a != 1) s += q_str(a) + "*";
        s += "zeta(" + std::to_string(L_) + ")";
        if (j > 1) s += "^" + std::to_string(j);
      }
    }
    return s.empty() ? "0" : s;
  }

 private:
  long L_;
  std::vector<Q> c_;  // size = deg Phi_L

  void reduce_(Poly p) {
    long d = cyclotomic_degree(L_);
    poly_trim(p);
    if (static_cast<long>(p.size()) > d) {
      Poly quo, rem;
      poly_divmod(p, cyclotomic_poly(L_), quo, rem);
      p = std::move(rem);
    }
    p.resize(d, Q(0));
    c_ = std::move(p);
  }
};

}  // namespace fission
