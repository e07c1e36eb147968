#pragma once

// Exact rational scalars and extended heights (rationals plus an infinity
// token, used for tree heights and truncation levels).

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

namespace fission {

using Q = mpq_class;

inline Q make_q(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Q q(num, den);
  q.canonicalize();
  return q;
}

inline long q_num(const Q& q) {
  if (!q.get_num().fits_slong_p()) throw std::overflow_error("numerator too large");
  return q.get_num().get_si();
}

inline long q_den(const Q& q) {
  if (!q.get_den().fits_slong_p()) throw std::overflow_error("denominator too large");
  return q.get_den().get_si();
}

// Denominator of a reduced positive rational; den(3) = 1, den(3/2) = 2.
inline long denominator(const Q& q) { return q_den(q); }

inline std::string q_str(const Q& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

// Parses "p", "-p", "p/q" with optional surrounding whitespace.
inline Q parse_q(const std::string& s) {
  Q q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  q.canonicalize();
  return q;
}

inline long lcm_long(long a, long b) { return std::lcm(a, b); }

// Height value in [0, +inf]; +inf marks tree roots / "glue at root".
struct Height {
  bool inf = false;
  Q v = 0;  // meaningful iff !inf

  Height() = default;
  Height(const Q& q) : inf(false), v(q) {}  // NOLINT: implicit by design
  static Height infinity() {
    Height h;
    h.inf = true;
    return h;
  }

  bool operator==(const Height& o) const {
    return inf == o.inf && (inf || v == o.v);
  }
  bool operator!=(const Height& o) const { return !(*this == o); }
  bool operator<(const Height& o) const {
    if (inf) return false;
    if (o.inf) return true;
    return v < o.v;
  }
  bool operator>(const Height& o) const { return o < *this; }
  bool operator<=(const Height& o) const { return !(o < *this); }
  bool operator>=(const Height& o) const { return !(*this < o); }

  std::string str() const { return inf ? "inf" : q_str(v); }
};

}  // namespace fission
