#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace extremal {

using BigInt = boost::multiprecision::mpz_int;

/// Thrown when a rational division by zero is attempted.
class DivisionByZeroError : public std::domain_error {
public:
    DivisionByZeroError() : std::domain_error("rational division by zero") {}
};

/// Thrown when a rational literal cannot be parsed.
class RationalParseError : public std::runtime_error {
public:
    explicit RationalParseError(std::string_view text)
        : std::runtime_error("invalid rational literal: '" + std::string(text) + "'") {}
};

// Exact rational scalar, the sole scalar type for all polytope math.
// Canonical form is an invariant: lowest terms, denominator > 0, zero is 0/1.
// GMP keeps canonical form through arithmetic; the constructors below route
// every non-canonical input through an exact division so the invariant never
// depends on caller discipline.
class Rational {
public:
    Rational() : value_(0) {}
    Rational(int n) : value_(n) {}  // NOLINT: implicit by design, enables literals
    Rational(long long n) : value_(static_cast<long>(n)) {}
    explicit Rational(const BigInt& n) : value_(n) {}

    Rational(const BigInt& num, const BigInt& den) {
        if (den.is_zero()) throw DivisionByZeroError();
        value_ = Mpq(num) / Mpq(den);
    }
    Rational(long long num, long long den)
        : Rational(BigInt(num), BigInt(den)) {}

    /// Parses "a/b" or "a" with optional sign; rejects anything else.
    static Rational parse(std::string_view text);

    BigInt numerator() const { return BigInt(boost::multiprecision::numerator(value_)); }
    BigInt denominator() const { return BigInt(boost::multiprecision::denominator(value_)); }

    bool is_zero() const { return value_.is_zero(); }
    int sign() const { return value_.sign(); }
    Rational abs() const { return sign() < 0 ? Rational(Mpq(-value_)) : *this; }
    bool is_integer() const { return denominator() == 1; }

    double to_double() const { return value_.convert_to<double>(); }

    /// "a/b" in lowest terms, or plain "a" when the denominator is 1.
    std::string str() const { return value_.str(); }

    Rational operator-() const { return Rational(Mpq(-value_)); }

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw DivisionByZeroError();
        value_ /= o.value_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

private:
    using Mpq = boost::multiprecision::mpq_rational;
    explicit Rational(Mpq v) : value_(std::move(v)) {}
    Mpq value_;
};

inline Rational Rational::parse(std::string_view text) {
    const auto is_int_token = [](std::string_view s) {
        if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    const auto slash = text.find('/');
    std::string_view num_part = text.substr(0, slash);
    std::string_view den_part = slash == std::string_view::npos ? std::string_view("1")
                                                                : text.substr(slash + 1);
    if (!is_int_token(num_part) || !is_int_token(den_part)) throw RationalParseError(text);
    // GMP rejects an explicit '+'
    if (num_part.front() == '+') num_part.remove_prefix(1);
    if (den_part.front() == '+') den_part.remove_prefix(1);
    const BigInt num{std::string(num_part)};
    const BigInt den{std::string(den_part)};
    if (den.is_zero()) throw RationalParseError(text);
    return Rational(num, den);
}

}  // namespace extremal
