#include <gtest/gtest.h>

#include <tprophet/errors.hpp>
#include <tprophet/rational.hpp>
#include <tprophet/stock_set.hpp>

using namespace tprophet;

TEST(Rational, MakeRationalCanonicalizes) {
  EXPECT_EQ(make_rational(2, 4), make_rational(1, 2));
  EXPECT_EQ(to_string(make_rational(6, -4)), "-3/2");
  EXPECT_THROW(make_rational(1, 0), InputError);
}

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(parse_rational("3/4"), make_rational(3, 4));
  EXPECT_EQ(parse_rational("-6/8"), make_rational(-3, 4));
  EXPECT_EQ(parse_rational("7"), make_rational(7));
  EXPECT_EQ(parse_rational("0.125"), make_rational(1, 8));
  EXPECT_EQ(parse_rational("-2.5"), make_rational(-5, 2));
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "1/0", "abc", "1/2/3", "1.2.3", "/3", "3/"}) {
    EXPECT_THROW(parse_rational(bad), InputError) << bad;
  }
}

TEST(Rational, FormatKeepsDenominator) {
  EXPECT_EQ(to_string(make_rational(3)), "3/1");
  EXPECT_EQ(to_string(make_rational(0)), "0/1");
}

TEST(Rational, VectorHelpers) {
  const std::vector<Rational> a{make_rational(1), make_rational(-2), make_rational(1, 2)};
  const std::vector<Rational> b{make_rational(1), make_rational(1), make_rational(1)};
  EXPECT_EQ(sum(a), make_rational(-1, 2));
  EXPECT_EQ(sum_positive_parts(a), make_rational(3, 2));
  EXPECT_EQ(difference(a, b)[1], make_rational(-3));
  EXPECT_THROW(difference(a, std::vector<Rational>(2)), InputError);
}

TEST(StockSet, BasicsAndFormatting) {
  StockSet s{0, 2};
  EXPECT_TRUE(s.contains(2));
  EXPECT_FALSE(s.contains(1));
  EXPECT_EQ(s.size(), 2U);
  EXPECT_EQ(s.to_string(), "{1,3}");
  EXPECT_EQ(StockSet{}.to_string(), "{}");
  EXPECT_EQ(StockSet::full(3).bits(), 7U);
  EXPECT_TRUE(s.is_subset_of(StockSet::full(3)));
  EXPECT_EQ(s.with(1), StockSet::full(3));
  EXPECT_THROW(StockSet{64}, InputError);
}
