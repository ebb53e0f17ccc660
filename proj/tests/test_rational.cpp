#include "test_support.hpp"

#include <adsched/errors.hpp>
#include <adsched/rational.hpp>

#include <doctest.h>

using namespace adsched;
using adsched::tests::error_code_of;
using adsched::tests::rat;

TEST_CASE("parse_rational reads fractions, integers and decimals exactly") {
    CHECK(rat("3/4") == Rational(3) / 4);
    CHECK(rat("36.25") == Rational(145) / 4);
    CHECK(rat("0.84") == Rational(21) / 25);
    CHECK(rat(".4") == Rational(2) / 5);
    CHECK(rat("-5") == Rational(-5));
    CHECK(rat("-0.5") == Rational(-1) / 2);
    CHECK(rat(" 120 ") == Rational(120));
    CHECK(rat("0") == Rational(0));
    CHECK(rat("10/4") == Rational(5) / 2);
}

TEST_CASE("parse_rational survives values far beyond machine words") {
    const char* huge = "123456789012345678901234567890/7";
    Rational value = rat(huge);
    CHECK(parse_rational(to_fraction_string(value)) == value);
    CHECK(value * 7 == rat("123456789012345678901234567890"));
}

TEST_CASE("parse_rational rejects garbage") {
    CHECK(error_code_of([] { rat(""); }) == ErrorCode::BadRational);
    CHECK(error_code_of([] { rat("abc"); }) == ErrorCode::BadRational);
    CHECK(error_code_of([] { rat("1/0"); }) == ErrorCode::BadRational);
    CHECK(error_code_of([] { rat("1.2.3"); }) == ErrorCode::BadRational);
    CHECK(error_code_of([] { rat("--2"); }) == ErrorCode::BadRational);
    CHECK(error_code_of([] { rat("1e3"); }) == ErrorCode::BadRational);
}

TEST_CASE("fraction strings round-trip") {
    for (const char* text : {"0", "5", "-3/4", "145/4", "21/25", "500/21", "1/1000000007"}) {
        CAPTURE(text);
        CHECK(to_fraction_string(rat(text)) == text);
    }
}

TEST_CASE("decimal rendering rounds half away from zero and trims zeros") {
    CHECK(to_decimal_string(rat("21/25")) == "0.84");
    CHECK(to_decimal_string(rat("4/5")) == "0.8");
    CHECK(to_decimal_string(rat("145/4")) == "36.25");
    CHECK(to_decimal_string(rat("100")) == "100");
    CHECK(to_decimal_string(rat("1/3")) == "0.333333");
    CHECK(to_decimal_string(rat("2/3")) == "0.666667");
    CHECK(to_decimal_string(rat("-2/3")) == "-0.666667");
    CHECK(to_decimal_string(rat("1/8"), 2) == "0.13");
    CHECK(to_decimal_string(rat("-1/8"), 2) == "-0.13");
    CHECK(to_decimal_string(rat("1/200"), 2) == "0.01");
    CHECK(to_decimal_string(rat("1/2"), 1) == "0.5");
}

TEST_CASE("display form pairs fraction and decimal") {
    CHECK(to_display_string(rat("21/25")) == "21/25 (0.84)");
    CHECK(to_display_string(rat("5")) == "5 (5)");
}

TEST_CASE("compare gives exact three-way answers") {
    CHECK(compare(rat("1/2"), rat("3/4")) == std::strong_ordering::less);
    CHECK(compare(rat("3/4"), rat("3/4")) == std::strong_ordering::equal);
    CHECK(compare(rat("3/4"), rat("1/2")) == std::strong_ordering::greater);
}

TEST_CASE("bids order with infinity on top") {
    CHECK(Bid() == Bid(Rational(0)));
    CHECK(Bid::infinity() == Bid::infinity());
    CHECK(Bid::infinity() > Bid(rat("1000000000")));
    CHECK(Bid(rat("1")) < Bid(rat("2")));
    CHECK(Bid(rat("3/2")) == rat("3/2"));
    CHECK(Bid::infinity() > rat("999"));
    CHECK_FALSE(Bid::infinity().is_infinite() == false);
}

TEST_CASE("bid value access and scaling") {
    CHECK(Bid(rat("3/2")).value() == rat("3/2"));
    CHECK(error_code_of([] { Bid::infinity().value(); }) == ErrorCode::BadRational);
    CHECK(Bid(rat("3/2")).scaled(rat("2")) == Bid(rat("3")));
    CHECK(Bid::infinity().scaled(rat("5")).is_infinite());
}

TEST_CASE("parse_bid accepts inf spellings and rationals") {
    CHECK(parse_bid("inf").is_infinite());
    CHECK(parse_bid("INF").is_infinite());
    CHECK(parse_bid("+Inf").is_infinite());
    CHECK(parse_bid("Infinity").is_infinite());
    CHECK(parse_bid(" inf ").is_infinite());
    CHECK(parse_bid("2.5") == Bid(rat("5/2")));
    CHECK(parse_bid("3/4") == Bid(rat("3/4")));
    CHECK(error_code_of([] { parse_bid("nan"); }) == ErrorCode::BadRational);
}
