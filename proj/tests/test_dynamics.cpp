#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "ncf/dynamics.hpp"
#include "oracles.hpp"

using namespace ncf;

namespace {

const unsigned long kNs[] = {1, 2, 3, 5, 10};

std::vector<BigInt> ints(std::initializer_list<long> xs)
{
    std::vector<BigInt> out;
    for (long x : xs) {
        out.emplace_back(x);
    }
    return out;
}

}  // namespace

TEST_CASE("rational parsing")
{
    CHECK(Rational::parse("2/4") == Rational(1, 2));
    CHECK(Rational::parse("7") == Rational(7, 1));
    CHECK(Rational::parse("0/1").is_zero());
    CHECK_THROWS_AS(Rational::parse("2/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("0.5"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("-1/2"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("1/"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
    CHECK(Rational(6, 9).str() == "2/3");
}

TEST_CASE("NIndex rejects zero")
{
    CHECK_THROWS_AS(NIndex(0), std::invalid_argument);
    CHECK(NIndex(7).value() == 7);
}

TEST_CASE("gauss_map examples")
{
    CHECK(gauss_map(Rational(0, 1), NIndex(5)).is_zero());
    CHECK(gauss_map(Rational(2, 3), NIndex(1)) == Rational(1, 2));
    CHECK(gauss_map(Rational(1, 2), NIndex(2)).is_zero());
    CHECK_THROWS_AS(gauss_map(Rational(1, 1), NIndex(1)), std::domain_error);
    CHECK_THROWS_AS(gauss_map(Rational(5, 3), NIndex(1)), std::domain_error);
}

TEST_CASE("digit examples")
{
    CHECK(digit(Rational(2, 3), NIndex(1)) == 1);
    CHECK(digit(Rational(1, 2), NIndex(2)) == 4);
    CHECK_THROWS(digit(Rational(0, 1), NIndex(1)));

    // 80-digit rational approximation of the golden conjugate.
    mpf_class z = fixed_point(NIndex(1), 1, 300);
    mpz_class den = 1;
    for (int i = 0; i < 80; ++i) {
        den *= 10;
    }
    mpf_class scaled = z * mpf_class(den, 300);
    mpz_class num(scaled);
    CHECK(digit(Rational(num, den), NIndex(1)) == 1);
}

TEST_CASE("expand examples")
{
    Expansion e = expand(Rational(2, 3), NIndex(1), 10);
    CHECK(e.coeffs == ints({1, 2}));
    CHECK(e.terminated);

    e = expand(Rational(1, 2), NIndex(2), 10);
    CHECK(e.coeffs == ints({4}));
    CHECK(e.terminated);

    e = expand(Rational(0, 1), NIndex(3), 10);
    CHECK(e.coeffs.empty());
    CHECK(e.terminated);

    e = expand(Rational(1, 1000), NIndex(1), 0);
    CHECK(e.coeffs.empty());
    CHECK_FALSE(e.terminated);
}

TEST_CASE("evaluate examples")
{
    CHECK(evaluate(ints({1, 2}), NIndex(1)) == Rational(2, 3));
    CHECK(evaluate(ints({4}), NIndex(2)) == Rational(1, 2));
    CHECK(evaluate(ints({3}), NIndex(3)) == Rational(1, 1));
    CHECK_THROWS_AS(evaluate(ints({2, 1}), NIndex(2)), std::invalid_argument);
    CHECK_THROWS_AS(evaluate(std::vector<BigInt>{}, NIndex(2)), std::invalid_argument);
}

TEST_CASE("fixed points")
{
    struct Case {
        unsigned long N, p;
        double expected;
    };
    const Case cases[] = {
        {1, 1, (std::sqrt(5.0) - 1.0) / 2.0},
        {2, 2, std::sqrt(3.0) - 1.0},
        {1, 2, std::sqrt(2.0) - 1.0},
    };
    for (const Case& c : cases) {
        mpf_class z = fixed_point(NIndex(c.N), c.p, 256);
        CHECK(z.get_d() == doctest::Approx(c.expected).epsilon(1e-15));
        mpf_class back = gauss_map(z, NIndex(c.N));
        mpf_class diff = abs(back - z);
        CHECK(diff < mpf_class(1e-60, 256));
    }
    CHECK_THROWS_AS(fixed_point(NIndex(3), 2), std::invalid_argument);
}

TEST_CASE("expand agrees with textbook recurrence on random rationals")
{
    std::mt19937_64 rng(11);
    for (unsigned long N : kNs) {
        for (int t = 0; t < 200; ++t) {
            mpq_class x = oracle::random_unit_rational(rng, 64 + 32 * (t % 4));
            Expansion e = expand(Rational(x), NIndex(N));
            std::vector<mpz_class> ref = oracle::naive_expand(x, N, kDefaultMaxTerms);
            REQUIRE(e.terminated);
            CHECK(e.coeffs == ref);
        }
    }
}

TEST_CASE("properties on random rationals")
{
    std::mt19937_64 rng(2024);
    for (unsigned long N : kNs) {
        const NIndex n(N);
        for (int t = 0; t < 300; ++t) {
            const Rational x(oracle::random_unit_rational(rng, 96));
            const Expansion e = expand(x, n);
            REQUIRE(e.terminated);
            REQUIRE_FALSE(e.coeffs.empty());

            for (const BigInt& a : e.coeffs) {
                CHECK(a >= N);
            }

            CHECK(evaluate(e.coeffs, n) == x);

            const Expansion shifted = expand(gauss_map(x, n), n);
            CHECK(shifted.terminated);
            CHECK(std::equal(shifted.coeffs.begin(), shifted.coeffs.end(), e.coeffs.begin() + 1, e.coeffs.end()));
            CHECK(shifted.coeffs.size() + 1 == e.coeffs.size());

            // Remainder numerators strictly decrease along the orbit.
            Rational y = x;
            while (!y.is_zero()) {
                Rational next = gauss_map(y, n);
                CHECK(next.num() < y.num());
                y = next;
            }
        }
    }
}

TEST_CASE("prefix errors decrease")
{
    std::mt19937_64 rng(77);
    for (unsigned long N : kNs) {
        const NIndex n(N);
        for (int t = 0; t < 50; ++t) {
            const Rational x(oracle::random_unit_rational(rng, 256));
            const Expansion e = expand(x, n, 40);
            mpq_class prev = -1;
            for (std::size_t k = 1; k < e.coeffs.size(); ++k) {
                std::span<const BigInt> prefix(e.coeffs.data(), k);
                mpq_class err = abs(x.value() - evaluate(prefix, n).value());
                if (k > 1) {
                    CHECK(err < prev);
                }
                prev = err;
            }
        }
    }
}
