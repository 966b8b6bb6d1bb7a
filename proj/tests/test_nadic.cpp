#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "treeaut/nadic.hpp"

using namespace treeaut;

TEST_CASE("integer digit expansions match base-n positional notation") {
  NAdic six(4, 6);
  CHECK(six.digit(0) == 2);
  CHECK(six.digit(1) == 1);
  CHECK(six.digit(2) == 0);
  CHECK(six.digit(3) == 0);
  CHECK(six.residue() == 2);
  CHECK(six.is_integer());

  NAdic big(3, 25);
  CHECK(big.digit(0) == 1);
  CHECK(big.digit(1) == 2);
  CHECK(big.digit(2) == 2);
  CHECK(big.digit(3) == 0);
}

TEST_CASE("minus one has all digits n-1") {
  for (int n : {2, 3, 4, 5, 7}) {
    NAdic minus_one(n, -1);
    for (int k = 0; k < 8; ++k) CHECK(minus_one.digit(k) == n - 1);
  }
}

TEST_CASE("one third at degree 4 is eventually periodic") {
  NAdic third = NAdic::ratio(4, 1, 3);
  CHECK(third.residue() == 3);
  CHECK(third.digit(0) == 3);
  CHECK(third.digit(1) == 2);
  CHECK(third.digit(5) == 2);
  CHECK(third.digits_string(4) == "adic[3 2 2 2]");
  CHECK(third.shift_down() == NAdic::ratio(4, -2, 3));
  // The tail -2/3 is a fixed point of the shift.
  CHECK(third.shift_down().shift_down() == third.shift_down());
}

TEST_CASE("digit and shift_down reassemble the value") {
  std::vector<NAdic> samples = {NAdic(4, 6),    NAdic(4, -9),       NAdic::ratio(4, 1, 3),
                                NAdic(5, 1234), NAdic::ratio(3, -8, 5), NAdic(2, -1)};
  for (const NAdic& x : samples) {
    NAdic reassembled = NAdic(x.degree(), x.digit(0)) + NAdic(x.degree(), x.degree()) * x.shift_down();
    CHECK(reassembled == x);
    CHECK(x.digit(0) >= 0);
    CHECK(x.digit(0) < x.degree());
  }
}

TEST_CASE("construction rejects denominators sharing a factor with n") {
  CHECK_THROWS_AS(NAdic::ratio(4, 1, 2), std::domain_error);
  CHECK_THROWS_AS(NAdic::ratio(6, 1, 3), std::domain_error);
  CHECK_THROWS_AS(NAdic(4, mpq_class(3, 6)), std::domain_error);
  // 3/6 reduces to 1/2; 2/6 reduces to 1/3 which is fine at degree 4.
  CHECK(NAdic(4, mpq_class(2, 6)) == NAdic::ratio(4, 1, 3));
}

TEST_CASE("parse accepts integers and fractions") {
  CHECK(NAdic::parse(4, "17") == NAdic(4, 17));
  CHECK(NAdic::parse(4, "-8/3") == NAdic::ratio(4, -8, 3));
  CHECK(NAdic::parse(2, "-1").digit(3) == 1);
  CHECK_THROWS_AS(NAdic::parse(4, "1/2"), std::domain_error);
  CHECK_THROWS_AS(NAdic::parse(4, "x"), std::invalid_argument);
  CHECK_THROWS_AS(NAdic::parse(4, "1/"), std::invalid_argument);
  CHECK_THROWS_AS(NAdic::parse(4, ""), std::invalid_argument);
}

TEST_CASE("units and one-units") {
  for (int n : {2, 3, 4, 5, 6}) {
    CHECK(NAdic(n, 1 + n).is_one_unit());
    CHECK(NAdic(n, 1 + 2 * n).is_one_unit());
    CHECK_FALSE(NAdic(n, n).is_unit());
    CHECK(NAdic(n, -1).is_unit());
    CHECK(NAdic(n, -1).is_one_unit() == (n == 2));
  }
  CHECK(NAdic::ratio(4, 1, 3).is_unit());
  CHECK_FALSE(NAdic::ratio(4, 1, 3).is_one_unit());
  CHECK(NAdic(4, 2).is_unit() == false);
}

TEST_CASE("invert is the exact multiplicative inverse") {
  std::vector<NAdic> units = {NAdic(4, 3), NAdic(4, -1), NAdic::ratio(4, 1, 3), NAdic(5, 7),
                              NAdic(3, -8)};
  for (const NAdic& u : units) {
    CHECK(u * u.invert() == NAdic(u.degree(), 1));
  }
  CHECK(NAdic(4, 3).invert() == NAdic::ratio(4, 1, 3));
  CHECK_THROWS_AS(NAdic(4, 2).invert(), std::domain_error);
  CHECK_THROWS_AS(NAdic(4, 0).invert(), std::domain_error);
}

TEST_CASE("power matches repeated multiplication and inversion") {
  NAdic x(4, 5);
  CHECK(x.power(0) == NAdic(4, 1));
  CHECK(x.power(2) == x * x);
  CHECK(x.power(3) == NAdic(4, 125));
  CHECK(x.power(-1) == x.invert());
  CHECK(x.power(-2) == (x * x).invert());
  CHECK(NAdic(5, 1 + 5).power(2) == NAdic(5, 36));
}

TEST_CASE("arithmetic and printing") {
  CHECK((NAdic(4, 7) + NAdic(4, -9)) == NAdic(4, -2));
  CHECK((NAdic(4, 7) - NAdic(4, 9)) == NAdic(4, -2));
  CHECK((NAdic::ratio(4, 1, 3) * NAdic(4, 3)) == NAdic(4, 1));
  CHECK((-NAdic(4, 5)) == NAdic(4, -5));
  CHECK(NAdic::ratio(4, -8, 3).to_string() == "-8/3");
  CHECK(NAdic(4, 17).to_string() == "17");
}

TEST_CASE("delta2 is the carry of the leading digits") {
  for (int n = 2; n <= 12; ++n) {
    for (long long a = -2 * n; a <= 2 * n; ++a) {
      for (long long b = -2 * n; b <= 2 * n; ++b) {
        NAdic eta(n, a);
        NAdic kappa(n, b);
        int carry = (eta.residue() + kappa.residue() >= n) ? 1 : 0;
        CHECK(delta2(eta, kappa) == carry);
        CHECK(delta2(n, a, b) == carry);
        // Defining property: the tails add up with exactly this carry.
        CHECK((eta + kappa).shift_down() ==
              eta.shift_down() + kappa.shift_down() + NAdic(n, carry));
      }
    }
  }
}

TEST_CASE("delta2 of rationals uses the adic residue") {
  NAdic third = NAdic::ratio(4, 1, 3);  // residue 3
  CHECK(delta2(third, NAdic(4, 1)) == 1);
  CHECK(delta2(third, NAdic(4, 0)) == 0);
  CHECK(delta2(third.shift_down(), third) == 1);  // residues 2 and 3
}

TEST_CASE("delta3 closed form over all residues") {
  for (int n = 2; n <= 12; ++n) {
    for (long long s = 0; s < n; ++s) {
      for (long long i = 0; i < n; ++i) {
        for (long long t = 0; t < n; ++t) {
          int expected = 0;
          if (s > 0) {
            if (t < s && s <= i) expected = 1;
            if (i < s && s <= t) expected = -1;
          }
          CHECK(delta3(n, s, i, t) == expected);
          CHECK(delta3(NAdic(n, s), NAdic(n, i), NAdic(n, t)) == expected);
        }
      }
    }
  }
}

TEST_CASE("delta3 antisymmetry, diagonal and row sums") {
  for (int n : {3, 4, 6, 9}) {
    for (long long s = 1; s < n; ++s) {
      for (long long i = 0; i < n; ++i) {
        CHECK(delta3(n, s, i, i) == 0);
        for (long long t = 0; t < n; ++t) {
          CHECK(delta3(n, s, i, t) == -delta3(n, s, t, i));
        }
      }
      for (long long t = 0; t < n; ++t) {
        long long row = 0;
        for (long long k = 0; k < n; ++k) row += delta3(n, s, k, t);
        CHECK(row == (t < s ? n - s : -s));
      }
    }
  }
}

TEST_CASE("delta3 arguments reduce modulo n") {
  CHECK(delta3(4, 2, 6, 3) == delta3(4, 2, 2, 3));
  CHECK(delta3(4, -2, 1, 3) == delta3(4, 2, 1, 3));
  CHECK(delta3(5, 7, -1, 12) == delta3(5, 2, 4, 2));
}
