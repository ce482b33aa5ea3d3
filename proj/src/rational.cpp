#include "ncf/rational.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ncf {

double log_big(const BigInt& z)
{
    if (sgn(z) <= 0) {
        throw std::domain_error("log_big: argument must be positive");
    }
    long exponent = 0;
    const double mantissa = mpz_get_d_2exp(&exponent, z.get_mpz_t());
    return std::log(mantissa) + static_cast<double>(exponent) * std::numbers::ln2;
}

double log_abs(const mpq_class& q)
{
    if (sgn(q) == 0) {
        throw std::domain_error("log_abs: argument is zero");
    }
    BigInt n = abs(q.get_num());
    return log_big(n) - log_big(q.get_den());
}

Rational::Rational(BigInt num, BigInt den)
{
    if (sgn(den) == 0) {
        throw std::invalid_argument("Rational: zero denominator");
    }
    if (sgn(num) < 0 || sgn(den) < 0) {
        throw std::invalid_argument("Rational: numerator and denominator must be non-negative");
    }
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational::Rational(const mpq_class& q) : value_(q)
{
    value_.canonicalize();
    if (sgn(value_) < 0) {
        throw std::invalid_argument("Rational: value must be non-negative");
    }
}

namespace {

BigInt parse_digits(std::string_view s, std::string_view whole)
{
    if (s.empty()) {
        throw std::invalid_argument("malformed fraction '" + std::string(whole) + "'");
    }
    for (char c : s) {
        if (c < '0' || c > '9') {
            throw std::invalid_argument("malformed fraction '" + std::string(whole) +
                                        "': expected p/q with non-negative integers");
        }
    }
    return BigInt(std::string(s), 10);
}

}  // namespace

Rational Rational::parse(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_digits(text, text), BigInt(1));
    }
    BigInt p = parse_digits(text.substr(0, slash), text);
    BigInt q = parse_digits(text.substr(slash + 1), text);
    if (sgn(q) == 0) {
        throw std::invalid_argument("malformed fraction '" + std::string(text) + "': zero denominator");
    }
    return Rational(std::move(p), std::move(q));
}

std::string Rational::str() const
{
    return num().get_str() + "/" + den().get_str();
}

}  // namespace ncf
