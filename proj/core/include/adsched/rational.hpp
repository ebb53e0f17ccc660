#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace adsched {

/// Arbitrary-precision rational; every quantity in the engine (budgets,
/// bids, clicks, prices, schedule times) is one of these. Values are kept
/// canonical, so operator== is exact value equality.
using Rational = mpq_class;

/// Parses "p/q" fractions and plain decimal strings ("36.25", "-5", ".4")
/// exactly. Throws Error{ErrorCode::BadRational} on anything else.
Rational parse_rational(std::string_view text);

/// Canonical fraction form: "p/q", or just "p" when the denominator is 1.
/// parse_rational(to_fraction_string(q)) == q for all q.
std::string to_fraction_string(const Rational& value);

/// Decimal approximation with `digits` fractional digits, rounded half away
/// from zero, trailing zeros trimmed ("21/25" -> "0.84", "4/5" -> "0.8").
std::string to_decimal_string(const Rational& value, int digits = 6);

/// "p/q (decimal)" display form used by the CLI and reports.
std::string to_display_string(const Rational& value, int digits = 6);

std::strong_ordering compare(const Rational& a, const Rational& b);

/// A declared maximum price per click: a nonnegative rational or +infinity.
/// Infinity compares above every rational and equal to itself.
class Bid {
public:
    Bid() : finite_(true), value_(0) {}
    explicit Bid(Rational value) : finite_(true), value_(std::move(value)) {}
    static Bid infinity() {
        Bid b;
        b.finite_ = false;
        return b;
    }

    bool is_infinite() const { return !finite_; }
    /// Pre: is_infinite() is false.
    const Rational& value() const;

    /// Scales a finite bid by gamma; infinity stays infinity.
    Bid scaled(const Rational& gamma) const;

    friend bool operator==(const Bid& a, const Bid& b);
    friend std::strong_ordering operator<=>(const Bid& a, const Bid& b);
    friend bool operator==(const Bid& a, const Rational& b);
    friend std::strong_ordering operator<=>(const Bid& a, const Rational& b);

private:
    bool finite_;
    Rational value_;
};

/// Parses a bid: "inf" (case-insensitive, also "+inf"/"infinity") or a
/// rational accepted by parse_rational.
Bid parse_bid(std::string_view text);
std::string to_fraction_string(const Bid& bid);
std::string to_display_string(const Bid& bid, int digits = 6);

} // namespace adsched
