#include <catch2/catch_amalgamated.hpp>

#include "fission/fission.hpp"
#include "fission/parse.hpp"

using namespace fission;

static ExpFactor F(const std::string& s) { return parse_factor(s); }
static Q h(long n, long d) { return make_q(n, d); }

TEST_CASE("common parts and fission exponents") {
  // type-A term z^{-1} splits them at height 1
  auto c1 = common_part(F("z^(-1)+z^(-1/2)+z^(-1/3)"), F("z^(-1/2)+z^(-1/6)"));
  CHECK(c1.qc.is_zero());
  CHECK(c1.f == Q(1));
  CHECK(c1.N == 1);

  ExpFactor q = F("z^(-3/2)+z^(-5/6)");
  auto c2 = common_part(q, q);
  CHECK(c2.qc == q);
  CHECK(c2.f == 0);
  CHECK(c2.N == 1);

  auto c3 = common_part(F("z^(-1/2)+z^(-1/4)"), F("z^(-1/2)+2*z^(-1/4)"));
  CHECK(c3.qc == F("z^(-1/2)"));
  CHECK(c3.f == h(1, 4));
  CHECK(c3.N == 2);

  // asymmetric tails: f is the larger of the two different-part slopes
  auto c4 = common_part(F("z^(-1/2)+z^(-1/6)"), F("z^(-1/2)+z^(-1/4)"));
  CHECK(c4.qc == F("z^(-1/2)"));
  CHECK(c4.f == h(1, 4));
  CHECK(c4.N == 2);

  auto c5 = common_part(F("z^(-3)"), F("z^(-3)+z^(-3/2)"), false);
  CHECK(c5.qc == F("z^(-3)"));
  CHECK(c5.f == h(3, 2));
  CHECK(c5.N == 2);

  auto c6 = common_part(ExpFactor::tame(), F("z^(-2)"));
  CHECK(c6.qc.is_zero());
  CHECK(c6.f == Q(2));
}

TEST_CASE("signed vs unsigned common parts") {
  // same signed circle at every height, unequal truncations: not compatible
  CHECK_THROWS(common_part(F("z^(-2)"), F("-z^(-2)"), true));
  // without signs the circles split already at height 2
  auto c = common_part(F("z^(-2)"), F("-z^(-2)"), false);
  CHECK(c.qc.is_zero());
  CHECK(c.f == Q(2));
  CHECK(c.N == 1);

  // conjugate factors lie on one unsigned circle: rejected both ways
  CHECK_THROWS(common_part(F("z^(-3/2)+z^(-1)"), F("-z^(-3/2)+z^(-1)"), true));
  CHECK_THROWS(common_part(F("z^(-3/2)+z^(-1)"), F("-z^(-3/2)+z^(-1)"), false));
  // incompatible pair: circles agree above height 1 but truncations differ
  CHECK_THROWS(
      common_part(F("z^(-3/2)+z^(-1)"), F("-z^(-3/2)+2*z^(-1)"), true));
  CHECK_NOTHROW(
      common_part(F("z^(-3/2)+z^(-1)"), F("z^(-3/2)+2*z^(-1)"), true));
}

TEST_CASE("fission orders") {
  auto ord = [](const char* qc, long n, long d, LKind k) {
    return fission_order(F(qc), make_q(n, d), k);
  };
  // bare coefficient at a ramified exponent
  CHECK(ord("0", 1, 3, LKind::BC) == 6);
  CHECK(ord("0", 1, 3, LKind::D) == 3);
  CHECK(ord("0", 1, 3, LKind::A) == 3);
  CHECK(ord("0", 1, 2, LKind::BC) == 2);
  CHECK(ord("0", 1, 2, LKind::D) == 2);
  CHECK(ord("0", 2, 1, LKind::BC) == 2);
  CHECK(ord("0", 2, 1, LKind::D) == 1);  // plain orbits at integer exponents
  // below a special prefix, breaking vs non-breaking exponent
  CHECK(ord("z^(-3/2)", 1, 1, LKind::BC) == 2);
  CHECK(ord("z^(-3/2)", 1, 2, LKind::BC) == 1);
  CHECK(ord("z^(-1/2)", 1, 4, LKind::BC) == 4);
  // without the global sign only half the multipliers survive here
  CHECK(ord("z^(-1/2)", 1, 4, LKind::D) == 2);
  // nonspecial prefixes: the partial ramification order
  CHECK(ord("z^(-1/3)", 1, 4, LKind::BC) == 4);
  CHECK(ord("z^(-1/3)", 1, 4, LKind::D) == 4);
  CHECK(ord("z^(-1)", 1, 2, LKind::BC) == 2);
  CHECK(ord("z^(-3/2)+z^(-1)", 1, 2, LKind::BC) == 1);  // k in Inc forces 1
}

TEST_CASE("fission_distinct: documented cases") {
  Cyc one(Q(1)), two(Q(2));
  auto z6 = Cyc::zeta(6);
  auto z8 = Cyc::zeta(8);
  auto i = Cyc::imaginary_unit();

  // qc = 0, k = 1/3: distinct iff a^6 != b^6
  CHECK_FALSE(fission_distinct(F("0"), one, z6, h(1, 3), LKind::BC));
  CHECK_FALSE(fission_distinct(F("0"), one, -one, h(1, 3), LKind::BC));
  CHECK(fission_distinct(F("0"), one, two, h(1, 3), LKind::BC));
  // qc = z^{-3/2}, k = 1: distinct iff a != ±b
  CHECK_FALSE(fission_distinct(F("z^(-3/2)"), one, -one, Q(1), LKind::BC));
  CHECK(fission_distinct(F("z^(-3/2)"), one, two, Q(1), LKind::BC));
  // qc = z^{-1/2}, k = 1/4: distinct iff a^4 != b^4
  CHECK_FALSE(fission_distinct(F("z^(-1/2)"), one, i, h(1, 4), LKind::BC));
  CHECK(fission_distinct(F("z^(-1/2)"), one, z8, h(1, 4), LKind::BC));

  // D at integer exponents uses plain orbits: 1 and -1 fission apart
  CHECK(fission_distinct(F("0"), one, -one, Q(2), LKind::D));
  CHECK_FALSE(fission_distinct(F("0"), one, -one, Q(2), LKind::BC));
  CHECK_FALSE(fission_distinct(F("0"), one, -one, h(1, 2), LKind::D));

  // zero coefficients
  CHECK(fission_distinct(F("z^(-1/3)"), Cyc(Q(0)), one, h(1, 4), LKind::BC));
  CHECK_FALSE(
      fission_distinct(F("z^(-1/3)"), Cyc(Q(0)), Cyc(Q(0)), h(1, 4), LKind::BC));
}

TEST_CASE("fission_distinct matches the circle oracle on grids") {
  // coefficient grid in Q(zeta_24)
  std::vector<Cyc> grid = {Cyc(Q(0)),      Cyc(Q(1)),       Cyc(Q(2)),
                           -Cyc(Q(1)),     Cyc::zeta(24),   Cyc::zeta(24, 2),
                           Cyc::zeta(3),   Cyc::zeta(8, 3), Cyc::imaginary_unit(),
                           Cyc(Q(2)) * Cyc::zeta(3)};
  struct Case {
    const char* qc;
    Q k;
  };
  std::vector<Case> cases = {
      {"0", h(1, 3)},          {"0", h(1, 2)},     {"0", Q(2)},
      {"z^(-1/3)", h(1, 4)},   {"z^(-1/2)", h(1, 4)},
      {"z^(-3/2)", Q(1)},      {"z^(-3/2)", h(1, 2)},
      {"z^(-1)", h(1, 2)},     {"z^(-3/2)+z^(-1)", h(1, 2)}};
  for (const auto& cs : cases) {
    ExpFactor qc = F(cs.qc);
    for (LKind kind : {LKind::BC, LKind::D, LKind::A}) {
      bool with_sign = kind == LKind::BC;
      for (const Cyc& a : grid)
        for (const Cyc& b : grid) {
          ExpFactor q = qc + ExpFactor::monomial(cs.k, a);
          ExpFactor qq = qc + ExpFactor::monomial(cs.k, b);
          bool oracle = !same_circle(q, qq, with_sign);
          CAPTURE(cs.qc, cs.k, a.str(), b.str(), with_sign);
          CHECK(fission_distinct(qc, a, b, cs.k, kind) == oracle);
        }
    }
  }
}

TEST_CASE("pointed type validation") {
  auto E = [](long m, const char* s) {
    return std::make_pair(m, parse_factor(s));
  };
  // distinct signed circles required in BC
  CHECK_THROWS(make_pointed_type(LKind::BC, {E(1, "z^(-2)"), E(1, "-z^(-2)")}));
  CHECK_NOTHROW(make_pointed_type(LKind::D, {E(1, "z^(-2)"), E(1, "-z^(-2)")}));
  // conjugates lie on one circle in every case
  CHECK_THROWS(
      make_pointed_type(LKind::D, {E(1, "z^(-1/3)"), E(1, "zeta(3)*z^(-1/3)")}));
  CHECK_THROWS(
      make_pointed_type(LKind::BC, {E(1, "z^(-1/3)"), E(1, "zeta(3)*z^(-1/3)")}));
  // compatibility cache
  auto ok = make_pointed_type(
      LKind::BC, {E(1, "z^(-3/2)+z^(-1)"), E(1, "z^(-3/2)+2*z^(-1)")});
  CHECK(ok.compatible);
  auto bad = make_pointed_type(
      LKind::BC, {E(1, "z^(-3/2)+z^(-1)"), E(1, "-z^(-3/2)+2*z^(-1)")});
  CHECK_FALSE(bad.compatible);
  CHECK_THROWS(make_pointed_type(LKind::BC, {E(0, "z^(-1)")}));
}

TEST_CASE("enhancement and global signs") {
  auto E = [](long m, const char* s) {
    return std::make_pair(m, parse_factor(s));
  };
  auto dq = make_pointed_type(
      LKind::D, {E(2, "0"), E(1, "z^(-2)"), E(1, "-z^(-2)"), E(1, "z^(-3)"),
                 E(1, "z^(-3)+z^(-3/2)")});
  auto en = enhance(dq);
  for (const auto& e : en.entries) CHECK(e.sign == 1);
  CHECK(global_sign(en) == 1);
  CHECK(enhance(en).entries == en.entries);  // idempotent

  // nonspecial rule
  auto simple = enhance(make_pointed_type(LKind::D, {E(1, "z^(-1)")}));
  CHECK(simple.entries[0].sign == 1);

  // one special factor of odd multiplicity, no tame circle: no D-type
  CHECK_THROWS_AS(enhance(make_pointed_type(LKind::D, {E(1, "z^(-1/2)")})),
                  NotADType);
  // the tame sign absorbs the -1
  auto fixed =
      enhance(make_pointed_type(LKind::D, {E(2, "0"), E(1, "z^(-1/2)")}));
  CHECK(fixed.entries[0].sign == -1);
  CHECK(fixed.entries[1].sign == -1);
  CHECK(global_sign(fixed) == 1);
  // two odd special circles balance out
  auto two = enhance(make_pointed_type(
      LKind::D, {E(1, "z^(-1/2)"), E(1, "z^(-3/2)+z^(-1/2)")}));
  CHECK(two.entries[0].sign == -1);
  CHECK(two.entries[1].sign == -1);
}

TEST_CASE("fission datum of the BC worked example") {
  auto E = [](long m, const char* s) {
    return std::make_pair(m, parse_factor(s));
  };
  auto pt = make_pointed_type(
      LKind::BC,
      {E(1, "z^(-1)+z^(-1/2)+z^(-1/3)"), E(1, "z^(-1/2)+z^(-1/6)"),
       E(1, "z^(-1/2)+z^(-1/4)"), E(1, "z^(-1/2)+2*z^(-1/4)")});
  auto fd = fission_datum(pt);
  REQUIRE(fd.data.size() == 4);
  CHECK(fd.data[0].second.levels == std::vector<Q>{Q(1), h(1, 2), h(1, 3)});
  CHECK(fd.data[1].second.levels == std::vector<Q>{h(1, 2), h(1, 6)});
  CHECK(fd.data[1].second.special());
  CHECK(fd.data[2].second.levels == std::vector<Q>{h(1, 2), h(1, 4)});
  CHECK_FALSE(fd.data[2].second.special());
  CHECK(fd.data[3].second.levels == fd.data[2].second.levels);
  for (int j : {1, 2, 3}) CHECK(fd.f[0][j] == Q(1));
  CHECK(fd.f[1][2] == h(1, 4));
  CHECK(fd.f[1][3] == h(1, 4));
  CHECK(fd.f[2][3] == h(1, 4));
  for (int i = 0; i < 4; ++i) {
    CHECK(fd.f[i][i] == 0);
    for (int j = 0; j < 4; ++j) CHECK(fd.f[i][j] == fd.f[j][i]);
  }
}

TEST_CASE("fission datum of the D worked example (leaf rule)") {
  auto E = [](long m, const char* s) {
    return std::make_pair(m, parse_factor(s));
  };
  auto pt = enhance(make_pointed_type(
      LKind::D, {E(2, "0"), E(1, "z^(-2)"), E(1, "-z^(-2)"), E(1, "z^(-3)"),
                 E(1, "z^(-3)+z^(-3/2)")}));
  auto fd = fission_datum(pt);
  REQUIRE(fd.data.size() == 5);
  CHECK(fd.data[0].second.empty_bc());
  CHECK(fd.data[1].second.empty_d());
  CHECK(fd.data[2].second.empty_d());
  // entry 4 alone would be EmptyD; the nonvanishing common part with entry 5
  // promotes it to {slope}
  CHECK(fd.data[3].second.levels == std::vector<Q>{Q(3)});
  CHECK(fd.data[4].second.levels == std::vector<Q>{Q(3), h(3, 2)});
  CHECK(fd.f[1][2] == Q(2));
  CHECK(fd.f[0][1] == Q(2));
  CHECK(fd.f[0][2] == Q(2));
  CHECK(fd.f[3][4] == h(3, 2));
  for (int j : {3, 4}) {
    CHECK(fd.f[0][j] == Q(3));
    CHECK(fd.f[1][j] == Q(3));
    CHECK(fd.f[2][j] == Q(3));
  }
}
