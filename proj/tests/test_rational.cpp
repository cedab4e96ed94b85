#include <gtest/gtest.h>

#include "cydegen/rational.hpp"

using namespace cydegen;

TEST(Rational, MakeRationalCanonicalizes) {
    EXPECT_EQ(make_rational(6, 4), make_rational(3, 2));
    EXPECT_EQ(make_rational(6, -4).get_den(), 2);
    EXPECT_EQ(make_rational(0, 7), Rational(0));
}

TEST(Rational, FractionStringAlwaysHasDenominator) {
    EXPECT_EQ(to_fraction_string(make_rational(5, 2)), "5/2");
    EXPECT_EQ(to_fraction_string(Rational(3)), "3/1");
    EXPECT_EQ(to_fraction_string(make_rational(-116, 24)), "-29/6");
}

TEST(Rational, ParseAcceptsIntegersAndFractions) {
    EXPECT_EQ(parse_rational("7"), Rational(7));
    EXPECT_EQ(parse_rational("-3/6"), make_rational(-1, 2));
    EXPECT_EQ(parse_rational("+1/3"), make_rational(1, 3));
    EXPECT_EQ(parse_rational(" 2/4 "), make_rational(1, 2));
}

TEST(Rational, ParseRejectsGarbage) {
    for (const char* bad : {"", "1/0", "a", "1/2/3", "1.5", "/2", "3/"}) EXPECT_THROW(parse_rational(bad), InputError) << bad;
}

TEST(Rational, FactorialAndSign) {
    EXPECT_EQ(factorial(0), Rational(1));
    EXPECT_EQ(factorial(5), Rational(120));
    EXPECT_EQ(sign_power(3), Rational(-1));
    EXPECT_EQ(sign_power(4), Rational(1));
}
