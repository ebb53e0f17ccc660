#include <adsched/rational.hpp>

#include <adsched/errors.hpp>

#include <algorithm>
#include <cctype>

namespace adsched {
namespace {

[[noreturn]] void bad(std::string_view text) {
    throw Error(ErrorCode::BadRational,
                "cannot parse rational from \"" + std::string(text) + "\"");
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool all_digits(std::string_view s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) bad(whole);
    mpz_class v(std::string(s), 10);
    return negative ? mpz_class(-v) : v;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    auto dot = s.find('.');
    std::string_view int_part = dot == std::string_view::npos ? s : s.substr(0, dot);
    std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) bad(whole);
    if (!int_part.empty() && !all_digits(int_part)) bad(whole);
    if (!frac_part.empty() && !all_digits(frac_part)) bad(whole);

    mpz_class numerator(int_part.empty() ? "0" : std::string(int_part), 10);
    mpz_class denominator(1);
    for (char c : frac_part) {
        numerator = numerator * 10 + (c - '0');
        denominator *= 10;
    }
    Rational value(numerator, denominator);
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

} // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) bad(text);
    auto slash = s.find('/');
    if (slash != std::string_view::npos) {
        if (s.find('/', slash + 1) != std::string_view::npos) bad(text);
        mpz_class num = parse_integer(trim(s.substr(0, slash)), text);
        mpz_class den = parse_integer(trim(s.substr(slash + 1)), text);
        if (den == 0) bad(text);
        Rational value(num, den);
        value.canonicalize();
        return value;
    }
    return parse_decimal(s, text);
}

std::string to_fraction_string(const Rational& value) {
    return value.get_str();
}

std::string to_decimal_string(const Rational& value, int digits) {
    if (digits < 0) digits = 0;
    mpz_class scale(1);
    for (int i = 0; i < digits; ++i) scale *= 10;

    mpz_class num = value.get_num() * scale;
    const mpz_class& den = value.get_den();
    bool negative = num < 0;
    if (negative) num = -num;

    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (2 * r >= den) ++q;  // round half away from zero (num is nonnegative here)

    std::string body = q.get_str();
    if (digits > 0) {
        if (body.size() <= static_cast<std::size_t>(digits))
            body.insert(0, static_cast<std::size_t>(digits) + 1 - body.size(), '0');
        body.insert(body.size() - static_cast<std::size_t>(digits), ".");
        while (body.back() == '0') body.pop_back();
        if (body.back() == '.') body.pop_back();
    }
    if (negative && body != "0") body.insert(0, "-");
    return body;
}

std::string to_display_string(const Rational& value, int digits) {
    return to_fraction_string(value) + " (" + to_decimal_string(value, digits) + ")";
}

std::strong_ordering compare(const Rational& a, const Rational& b) {
    int c = cmp(a, b);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

const Rational& Bid::value() const {
    if (!finite_) throw Error(ErrorCode::BadRational, "infinite bid has no rational value");
    return value_;
}

Bid Bid::scaled(const Rational& gamma) const {
    return finite_ ? Bid(value_ * gamma) : *this;
}

bool operator==(const Bid& a, const Bid& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.value_ == b.value_;
}

std::strong_ordering operator<=>(const Bid& a, const Bid& b) {
    if (!a.finite_ && !b.finite_) return std::strong_ordering::equal;
    if (!a.finite_) return std::strong_ordering::greater;
    if (!b.finite_) return std::strong_ordering::less;
    return compare(a.value_, b.value_);
}

bool operator==(const Bid& a, const Rational& b) {
    return a.finite_ && a.value_ == b;
}

std::strong_ordering operator<=>(const Bid& a, const Rational& b) {
    if (!a.finite_) return std::strong_ordering::greater;
    return compare(a.value_, b);
}

Bid parse_bid(std::string_view text) {
    std::string lowered;
    for (char c : trim(text)) lowered.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lowered == "inf" || lowered == "+inf" || lowered == "infinity") return Bid::infinity();
    return Bid(parse_rational(text));
}

std::string to_fraction_string(const Bid& bid) {
    return bid.is_infinite() ? "inf" : to_fraction_string(bid.value());
}

std::string to_display_string(const Bid& bid, int digits) {
    return bid.is_infinite() ? "inf" : to_display_string(bid.value(), digits);
}

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NegativeBudget: return "NegativeBudget";
        case ErrorCode::NegativeBid: return "NegativeBid";
        case ErrorCode::NonDecreasingPositiveSupply: return "NonDecreasingPositiveSupply";
        case ErrorCode::ZeroSupplyBeforePositive: return "ZeroSupplyBeforePositive";
        case ErrorCode::TooFewBidders: return "TooFewBidders";
        case ErrorCode::DuplicateBidderId: return "DuplicateBidderId";
        case ErrorCode::NonPositiveCtr: return "NonPositiveCtr";
        case ErrorCode::BadRational: return "BadRational";
        case ErrorCode::UnsortedInput: return "UnsortedInput";
        case ErrorCode::AllZeroSupply: return "AllZeroSupply";
        case ErrorCode::Infeasible: return "Infeasible";
        case ErrorCode::InstanceTooLarge: return "InstanceTooLarge";
        case ErrorCode::ScheduleAuditFailed: return "ScheduleAuditFailed";
        case ErrorCode::BadInstanceFile: return "BadInstanceFile";
        case ErrorCode::IoFailure: return "IoFailure";
    }
    return "UnknownError";
}

} // namespace adsched
