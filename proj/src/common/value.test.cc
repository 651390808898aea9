#include "anonq/common/value.h"

#include <gtest/gtest.h>

#include <unordered_set>

#include "anonq/common/errors.h"

using anonq::Rational;
using anonq::Value;
using anonq::ValueList;

TEST(Rational, NormalizesSignAndLowestTerms) {
    Rational r(6, -4);
    EXPECT_EQ(r.num(), -3);
    EXPECT_EQ(r.den(), 2);
    EXPECT_EQ(Rational(0, 7), Rational(0));
    EXPECT_TRUE(Rational(8, 4).is_nonnegative_integer());
    EXPECT_FALSE(Rational(-2).is_nonnegative_integer());
    EXPECT_FALSE(Rational(1, 3).is_integer());
}

TEST(Rational, OrdersByValue) {
    EXPECT_LT(Rational(1, 3), Rational(1, 2));
    EXPECT_LT(Rational(-1, 2), Rational(0));
    EXPECT_FALSE(Rational(2, 4) < Rational(1, 2));
}

TEST(Rational, RejectsZeroDenominator) { EXPECT_THROW(Rational(1, 0), anonq::DomainError); }

TEST(Value, EqualityAndHashAgree) {
    Value a = ValueList{Value(true), Value(3), Value("x"), Value(Rational(1, 2))};
    Value b = ValueList{Value(true), Value(std::int64_t{3}), Value(std::string("x")), Value(Rational(2, 4))};
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.hash(), b.hash());
    std::unordered_set<Value, anonq::ValueHash> set{a, b, Value(false)};
    EXPECT_EQ(set.size(), 2u);
}

TEST(Value, DifferentKindsDiffer) {
    EXPECT_NE(Value(1), Value(true));
    EXPECT_NE(Value(), Value(0));
    EXPECT_TRUE(Value(false) < Value(true));
}

TEST(Value, BitSizeFollowsEncoding) {
    EXPECT_EQ(Value(true).bit_size(), 1u);
    EXPECT_EQ(Value(5).bit_size(), 32u);
    EXPECT_EQ(Value(Rational(1, 3)).bit_size(), 64u);
    EXPECT_EQ(Value("ab").bit_size(), 16u);
    EXPECT_EQ(Value(ValueList{Value(true), Value(1)}).bit_size(), 1u + 32u + 16u);
}

TEST(Value, AccessorsCheckKind) {
    EXPECT_THROW(Value(1).as_bool(), anonq::DomainError);
    EXPECT_EQ(Value(ValueList{Value(7)})[0].as_int(), 7);
}

TEST(Value, JsonIsReadable) {
    Value v = ValueList{Value(true), Value(Rational(3, 2)), Value()};
    EXPECT_EQ(v.to_json().dump(), R"([true,"3/2",null])");
}
