#pragma once

// Textual syntax for exponential factors, e.g.
//   "z^(-3/2) + 2*z^(-1)", "-z^(-2)", "zeta(8)^3 * z^(-1/2)", "i*z^(-1)", "0".
// Coefficients are products of atoms: rational | i | zeta(L)[^k].

#include <cctype>
#include <string>

#include "fission/puiseux.hpp"

namespace fission {

namespace detail {

struct Scanner {
  const std::string& s;
  size_t i = 0;
  explicit Scanner(const std::string& str) : s(str) {}
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool accept(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c))
      throw std::invalid_argument("expected '" + std::string(1, c) + "' in factor at position " + std::to_string(i));
  }
  bool accept_word(const std::string& w) {
    skip_ws();
    if (s.compare(i, w.size(), w) == 0) {
      i += w.size();
      return true;
    }
    return false;
  }
  long integer() {
    skip_ws();
    bool neg = accept('-');
    skip_ws();
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
      throw std::invalid_argument("expected integer at position " + std::to_string(i));
    long v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
      v = v * 10 + (s[i++] - '0');
    return neg ? -v : v;
  }
  Q rational() {
    long n = integer();
    if (accept('/')) {
      long d = integer();
      return make_q(n, d);
    }
    return Q(n);
  }
};

// atom := rational | 'i' | 'zeta' '(' int ')' ['^' int]
inline Cyc parse_coeff_atom(Scanner& sc) {
  if (sc.accept_word("zeta")) {
    sc.expect('(');
    long L = sc.integer();
    if (L < 1) throw std::invalid_argument("zeta level must be positive");
    sc.expect(')');
    long k = 1;
    if (sc.accept('^')) k = sc.integer();
    return Cyc::zeta(L, k);
  }
  if (sc.accept_word("i")) return Cyc::imaginary_unit();
  return Cyc(sc.rational());
}

}  // namespace detail

// Parses the full factor grammar; throws std::invalid_argument on bad input.
inline ExpFactor parse_factor(const std::string& text) {
  detail::Scanner sc(text);
  ExpFactor q;
  bool first = true;
  while (!sc.eof()) {
    bool neg = false;
    if (sc.accept('-'))
      neg = true;
    else if (!first)
      sc.expect('+');
    first = false;
    // term := [coeff-product '*'] 'z' '^' '(' '-' rational ')'  |  '0'
    Cyc coeff(Q(1));
    bool saw_coeff = false;
    for (;;) {
      sc.skip_ws();
      char c = sc.peek();
      bool is_z_var = (c == 'z' && sc.s.compare(sc.i, 4, "zeta") != 0);
      if (is_z_var) break;
      if (c == '0' && !saw_coeff) {
        // possible tame token: plain 0 term
        size_t save = sc.i;
        Q r = sc.rational();
        if (r == 0 && (sc.eof() || sc.peek() == '+' || sc.peek() == '-')) {
          coeff = Cyc(Q(0));
          saw_coeff = true;
          break;
        }
        sc.i = save;
      }
      coeff *= detail::parse_coeff_atom(sc);
      saw_coeff = true;
      if (!sc.accept('*')) break;
    }
    sc.skip_ws();
    if (saw_coeff && coeff.is_zero()) continue;  // "0" term contributes nothing
    bool is_z = sc.peek() == 'z' && sc.s.compare(sc.i, 4, "zeta") != 0;
    if (!is_z) {
      if (saw_coeff)
        throw std::invalid_argument("constant (non-z) term in factor: " + text);
      throw std::invalid_argument("expected term in factor: " + text);
    }
    sc.expect('z');
    sc.expect('^');
    bool paren = sc.accept('(');
    sc.expect('-');
    Q k = sc.rational();
    if (paren) sc.expect(')');
    if (!(k > 0)) throw std::invalid_argument("exponent must be negative of a positive rational");
    if (neg) coeff = -coeff;
    q = q + ExpFactor::monomial(k, coeff);
  }
  return q;
}

}  // namespace fission
