#include <catch2/catch_amalgamated.hpp>

#include "fission/level_data.hpp"
#include "fission/parse.hpp"

using namespace fission;

static ExpFactor F(const std::string& s) { return parse_factor(s); }
static std::vector<Q> L(std::initializer_list<Q> xs) { return xs; }
static Q h(long n, long d) { return make_q(n, d); }

static std::set<Q> S(std::initializer_list<Q> xs) { return xs; }

TEST_CASE("type A level data") {
  CHECK(level_datum_A(F("z^(-3/2)+z^(-1)")).levels == L({h(3, 2)}));
  CHECK(level_datum_A(ExpFactor::tame()).levels.empty());
  CHECK(level_datum_A(F("z^(-1)")).levels.empty());  // integer slope, unramified
  CHECK(level_datum_A(F("z^(-2)+z^(-1/2)")).levels == L({Q(1) / 2}));
  // L_A(q) = L_A(-q)
  ExpFactor q = F("z^(-3/2)+z^(-5/6)+z^(-1/3)");
  CHECK(level_datum_A(q).levels == level_datum_A(-q).levels);
  CHECK(level_datum_A(q).levels == L({h(3, 2), h(5, 6)}));
}

TEST_CASE("the six BC circles") {
  // (1) unramified integer slope
  auto l1 = level_datum_BC(F("z^(-3)"));
  CHECK(l1.levels == L({Q(3)}));
  CHECK(l1.s_part == L({Q(3)}));
  CHECK(l1.a_part.empty());
  CHECK(l1.plus_part.empty());

  // (2) single ramified exponent
  auto l2 = level_datum_BC(F("z^(-4/3)"));
  CHECK(l2.levels == L({h(4, 3)}));
  CHECK(l2.a_part == L({h(4, 3)}));
  CHECK(l2.s_part.empty());
  CHECK(l2.plus_part.empty());

  // (3) z^{-3/2} + z^{-1}
  auto l3 = level_datum_BC(F("z^(-3/2)+z^(-1)"));
  CHECK(l3.levels == L({h(3, 2), Q(1)}));
  CHECK(l3.s_part.empty());
  CHECK(l3.a_part == L({h(3, 2)}));
  CHECK(l3.plus_part == L({Q(1)}));

  // (4) z^{-3/2} + z^{-1/2}   (the paper's "z^{1/2}" typo corrected)
  auto l4 = level_datum_BC(F("z^(-3/2)+z^(-1/2)"));
  CHECK(l4.levels == L({h(3, 2)}));
  CHECK(l4.a_part == L({h(3, 2)}));
  CHECK(l4.plus_part.empty());
  CHECK(l4.special());

  // (5) z^{-3/2}+z^{-5/6}+z^{-1/3}
  auto l5 = level_datum_BC(F("z^(-3/2)+z^(-5/6)+z^(-1/3)"));
  CHECK(l5.levels == L({h(3, 2), h(5, 6), h(1, 3)}));
  CHECK(l5.a_part == L({h(3, 2), h(5, 6)}));
  CHECK(l5.plus_part == L({h(1, 3)}));

  // (6) z^{-3/2}+z^{-5/6}+z^{-2/3}+z^{-1/3}: only the highest breaking is a level
  auto l6 = level_datum_BC(F("z^(-3/2)+z^(-5/6)+z^(-2/3)+z^(-1/3)"));
  CHECK(l6.levels == L({h(3, 2), h(5, 6), h(2, 3)}));
  CHECK(l6.a_part == L({h(3, 2), h(5, 6)}));
  CHECK(l6.plus_part == L({h(2, 3)}));
}

TEST_CASE("good breakings") {
  CHECK(good_breakings({h(3, 2)}) == S({Q(1)}));
  // 1 itself breaks via the prefix (2); 1/2 does not since (2,6,2) is special
  CHECK(good_breakings({h(3, 2), h(5, 6)}) == S({Q(1), h(2, 3), h(1, 3)}));
  CHECK_FALSE(good_breakings({h(3, 2), h(5, 6)}).count(h(1, 2)));  // (2,6,2) special
  CHECK(good_breakings({h(4, 3)}).empty());  // odd leading denominator
}

TEST_CASE("admissible/inconsequential: the six cases") {
  auto adm = [](const char* s) { return admissible_exponents(level_datum_BC(F(s))); };

  auto a1 = adm("z^(-3)");
  CHECK(a1.adm == S({Q(1), Q(2), Q(3)}));
  CHECK(a1.inc == S({Q(1), Q(2)}));

  auto a2 = adm("z^(-4/3)");
  CHECK(a2.adm == S({h(1, 3), h(2, 3), Q(1), h(4, 3)}));
  CHECK(a2.inc == S({h(1, 3), h(2, 3), Q(1)}));

  auto a3 = adm("z^(-3/2)+z^(-1)");
  CHECK(a3.adm == S({h(3, 2), Q(1), h(1, 2)}));
  CHECK(a3.inc == S({h(1, 2)}));

  // 1/2 is an exponent of the circle but not a level: inconsequential for the
  // datum, yet absent from the circle-relative list
  auto a4 = adm("z^(-3/2)+z^(-1/2)");
  CHECK(a4.adm == S({h(3, 2), h(1, 2)}));
  CHECK(a4.inc == S({h(1, 2)}));
  auto c4 = admissible_exponents_for_circle(F("z^(-3/2)+z^(-1/2)"));
  CHECK(c4.adm == a4.adm);
  CHECK(c4.inc.empty());

  auto a5 = adm("z^(-3/2)+z^(-5/6)+z^(-1/3)");
  CHECK(a5.adm == S({h(3, 2), h(5, 6), h(1, 2), h(1, 3), h(1, 6)}));
  CHECK(a5.inc == S({h(1, 2), h(1, 6)}));

  auto a6 = adm("z^(-3/2)+z^(-5/6)+z^(-2/3)+z^(-1/3)");
  CHECK(a6.adm == S({h(3, 2), h(5, 6), h(2, 3), h(1, 2), h(1, 3), h(1, 6)}));
  CHECK(a6.inc == S({h(1, 2), h(1, 3), h(1, 6)}));
  auto c6 = admissible_exponents_for_circle(
      F("z^(-3/2)+z^(-5/6)+z^(-2/3)+z^(-1/3)"));
  CHECK(c6.adm == a6.adm);
  CHECK(c6.inc == S({h(1, 2), h(1, 6)}));
}

TEST_CASE("admissible exponents: A data and cutoffs") {
  LevelDatum la = level_datum_A(F("z^(-3/2)"));
  CHECK_THROWS_AS(admissible_exponents(la), CutoffRequired);
  auto a = admissible_exponents(la, Q(4));
  CHECK(a.adm == S({h(1, 2), Q(1), h(3, 2), Q(2), Q(3), Q(4)}));
}

TEST_CASE("D level data") {
  CHECK(level_datum_D(1, F("z^(-2)"), 1).empty_d());
  CHECK(level_datum_D(1, -F("z^(-2)"), 1).empty_d());
  CHECK(level_datum_D(2, ExpFactor::tame(), 1).empty_bc());
  CHECK(level_datum_D(1, ExpFactor::tame(), -1).empty_d());
  // multiplicity 1, untwisted nonzero: empty of the first flavour (the {3} in
  // the worked tree example comes from the leaf rule, not from the datum)
  CHECK(level_datum_D(1, F("z^(-3)"), 1).empty_d());
  CHECK(level_datum_D(1, F("z^(-3)+z^(-3/2)"), 1).levels == L({Q(3), h(3, 2)}));
  // special circle with ram 2, odd integer multiplicity -> sign -1, EmptyD
  CHECK(level_datum_D(1, F("z^(-1/2)"), -1).empty_d());
  CHECK(level_datum_D(3, F("z^(-1/2)"), -1).levels == L({h(1, 2)}));
  // special with even multiplicity carries +1
  CHECK(level_datum_D(2, F("z^(-1/2)"), 1).levels == L({h(1, 2)}));
  // sign inconsistency rejected
  CHECK_THROWS(level_datum_D(1, F("z^(-1/2)"), 1));
  CHECK_THROWS(level_datum_D(1, F("z^(-3)"), -1));

  // empty flavours' admissible sets
  auto ed = level_datum_D(1, F("z^(-2)"), 1);
  CHECK_THROWS_AS(admissible_exponents(ed), CutoffRequired);
  auto ad = admissible_exponents(ed, Q(3));
  CHECK(ad.adm == S({Q(1), Q(2), Q(3)}));
  CHECK(ad.inc == ad.adm);
  auto em = level_datum_D(1, ExpFactor::tame(), -1);
  auto am = admissible_exponents(em, h(9, 2));
  CHECK(am.adm == S({h(1, 2), h(3, 2), h(5, 2), h(7, 2), h(9, 2)}));
  auto eb = level_datum_D(2, ExpFactor::tame(), 1);
  CHECK(admissible_exponents(eb).adm.empty());
  // nonempty D data behave like BC
  auto nd = level_datum_D(1, F("z^(-3)+z^(-3/2)"), 1);
  auto an = admissible_exponents(nd);
  CHECK(an.adm == S({h(1, 2), Q(1), h(3, 2), Q(2), Q(3)}));
}

TEST_CASE("fast path agrees with brute-force oracle") {
  std::vector<std::string> qs = {
      "z^(-3)", "z^(-4/3)", "z^(-3/2)+z^(-1)", "z^(-3/2)+z^(-1/2)",
      "z^(-3/2)+z^(-5/6)+z^(-1/3)", "z^(-3/2)+z^(-5/6)+z^(-2/3)+z^(-1/3)",
      "z^(-2)+z^(-1/2)", "z^(-5/4)+z^(-3/4)", "z^(-7/6)+z^(-1/2)",
      "z^(-5/2)+z^(-2)+z^(-3/2)", "z^(-11/12)+z^(-1/4)",
      "zeta(3)*z^(-5/6)+z^(-1/3)", "i*z^(-3/2)+2*z^(-1)",
      "z^(-3/4)+z^(-1/4)", "z^(-5/6)+z^(-1/6)", "z^(-7/2)+z^(-5/2)+z^(-1/2)"};
  for (const auto& s : qs) {
    ExpFactor q = F(s);
    auto fast = level_datum_BC(q);
    auto slow = level_datum_BC_oracle(q);
    CAPTURE(s);
    CHECK(fast.levels == slow.levels);
    CHECK(fast.s_part == slow.s_part);
    CHECK(fast.a_part == slow.a_part);
    CHECK(fast.plus_part == slow.plus_part);
    CHECK(level_datum_A(q).levels == level_datum_A_oracle(q).levels);
  }
}

TEST_CASE("structural properties") {
  for (const char* s : {"z^(-3/2)+z^(-1)", "z^(-3/2)+z^(-5/6)+z^(-1/3)",
                        "z^(-3)", "z^(-5/4)+z^(-3/4)"}) {
    ExpFactor q = F(s);
    auto l = level_datum_BC(q);
    // levels subseteq E(q) and levels subseteq Adm(levels)
    auto E = q.exponents();
    for (const Q& k : l.levels)
      CHECK(std::find(E.begin(), E.end(), k) != E.end());
    auto a = admissible_exponents(l);
    for (const Q& k : l.levels) CHECK(a.adm.count(k));
    // reconstruction: a witness with E(q') = levels has the same datum
    ExpFactor w;
    for (const Q& k : l.levels) w = w + ExpFactor::monomial(k);
    CHECK(level_datum_BC(w).levels == l.levels);
    // special circles have empty plus part
    if (classify_circle(q).special()) CHECK(l.plus_part.empty());
  }
}
