#include <catch2/catch_amalgamated.hpp>

#include "fission/parse.hpp"
#include "fission/puiseux.hpp"

using namespace fission;

static ExpFactor F(const std::string& s) { return parse_factor(s); }

TEST_CASE("factor parsing and printing") {
  CHECK(F("0").is_zero());
  CHECK(F("z^(-3/2) + z^(-1)") == F("z^(-1)+z^(-3/2)"));
  CHECK(F("-z^(-2)") == -F("z^(-2)"));
  CHECK(F("2*z^(-1/4)").coeff(make_q(1, 4)) == Cyc(Q(2)));
  CHECK(F("i*z^(-1)").coeff(Q(1)) == Cyc::imaginary_unit());
  CHECK(F("zeta(8)^3*z^(-1/2)").coeff(make_q(1, 2)) == Cyc::zeta(8, 3));
  CHECK(F("z^(-1) - z^(-1)").is_zero());
  CHECK(F("3/2 * zeta(3) * z^(-5/6)").coeff(make_q(5, 6)) ==
        Cyc(Q(3, 2)) * Cyc::zeta(3));
  CHECK_THROWS(F("z^(3/2)"));
  CHECK_THROWS(F("1 + z^(-1)"));
  // round trip through str()
  ExpFactor q = F("z^(-3/2) + 2*z^(-1) + zeta(8)^3*z^(-1/2)");
  CHECK(F(q.str()) == q);
}

TEST_CASE("ram, irr, slope") {
  ExpFactor q = F("z^(-3/2)+z^(-5/6)+z^(-1/3)");
  CHECK(q.ram() == 6);
  CHECK(q.slope() == make_q(3, 2));
  CHECK(q.irr() == 9);
  CHECK(ExpFactor::tame().ram() == 1);
  CHECK(ExpFactor::tame().slope() == 0);
}

TEST_CASE("galois conjugates") {
  // q = z^{-3/2} + z^{-1}: q^{(1)} = -z^{-3/2} + z^{-1}
  ExpFactor q = F("z^(-3/2)+z^(-1)");
  CHECK(conjugate(q, 1) == F("-z^(-3/2)+z^(-1)"));
  CHECK(conjugate(q, 0) == q);
  CHECK(conjugate(F("z^(-1/3)"), 1) == F("zeta(3)*z^(-1/3)"));
  // composition and periodicity
  ExpFactor p = F("z^(-5/6)+z^(-1/3)");
  CHECK(conjugate(conjugate(p, 2), 3) == conjugate(p, 5));
  CHECK(conjugate(p, p.ram()) == p);
}

TEST_CASE("truncation") {
  ExpFactor q = F("z^(-3/2)+z^(-1)");
  CHECK(truncate(q, make_q(3, 2)) == F("z^(-3/2)"));
  CHECK(truncate(q, Q(0)) == q);
  CHECK(truncate(q, Q(2)).is_zero());
  // ceil((1/2)*6) = 3: keep exponents >= 1/2
  CHECK(truncate(F("z^(-3/2)+z^(-5/6)+z^(-1/3)"), make_q(1, 2)) ==
        F("z^(-3/2)+z^(-5/6)"));
  // tau_l . tau_k = tau_max(k,l)
  ExpFactor p = F("z^(-3/2)+z^(-5/6)+z^(-2/3)+z^(-1/3)");
  CHECK(truncate(truncate(p, make_q(1, 3)), make_q(5, 6)) ==
        truncate(p, make_q(5, 6)));
}

TEST_CASE("same_circle") {
  CHECK(same_circle(F("z^(-3/2)+z^(-1)"), F("-z^(-3/2)+z^(-1)"), false));
  ExpFactor q = F("z^(-5/6)+z^(-1/2)");
  CHECK(same_circle(q, q, true));
  CHECK(same_circle(q, q, false));
  CHECK_FALSE(same_circle(F("z^(-1/3)"), F("2*z^(-1/3)"), true));
  // signed but not unsigned: -q vs q for a nonspecial circle
  ExpFactor p = F("z^(-1/3)");
  CHECK(same_circle(p, -p, true));
  CHECK_FALSE(same_circle(p, -p, false));
}

TEST_CASE("special sequences") {
  CHECK(is_special_sequence({2}));
  CHECK(is_special_sequence({2, 6}));
  CHECK_FALSE(is_special_sequence({2, 6, 3}));
  CHECK_FALSE(is_special_sequence({1}));
  CHECK_FALSE(is_special_sequence({2, 4}));  // 2m/2 = 4 even
  CHECK(is_special_sequence({6, 2}));        // permutation invariance
  CHECK_THROWS(is_special_sequence({}));
}

TEST_CASE("classify_circle") {
  auto sc = classify_circle(F("z^(-3/2)+z^(-1/2)"));
  CHECK(sc.flavour == CircleFlavour::Special);
  CHECK(sc.ram == 2);
  CHECK(sc.card == 2);

  // z^{-s/r}, r even, gcd(r,s)=1 -> special with r elements
  auto sc2 = classify_circle(F("z^(-3/4)"));
  CHECK(sc2.flavour == CircleFlavour::Special);
  CHECK(sc2.card == 4);

  auto sc3 = classify_circle(F("z^(-1/3)"));
  CHECK(sc3.flavour == CircleFlavour::Nonspecial);
  CHECK(sc3.card == 6);

  auto tame = classify_circle(ExpFactor::tame());
  CHECK(tame.flavour == CircleFlavour::Tame);
  CHECK(tame.card == 1);
  CHECK(tame.ram == 1);

  // equality of circles through any representative
  ExpFactor q = F("z^(-3/2)+z^(-1)");
  CHECK(classify_circle(q) == classify_circle(-conjugate(q, 1)));
  CHECK(classify_circle(q) != classify_circle(F("z^(-3/2)")));
}

TEST_CASE("orbit cardinality brute force matches flavour") {
  for (const char* s :
       {"z^(-1)", "z^(-1/2)", "z^(-3/2)+z^(-1)", "z^(-3/2)+z^(-1/2)",
        "z^(-5/6)+z^(-1/3)", "z^(-3/4)+z^(-1/2)", "i*z^(-1/2)",
        "zeta(3)*z^(-2/3)+z^(-1/3)"}) {
    ExpFactor q = F(s);
    auto sc = classify_circle(q);
    CAPTURE(s);
    CHECK(static_cast<long>(signed_orbit_set(q).size()) == sc.card);
  }
}
